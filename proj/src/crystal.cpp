#include "foldkit/crystal.hpp"

#include "foldkit/error.hpp"

#include <algorithm>
#include <unordered_map>

namespace foldkit {

namespace {

// boost::rational mixed with plain int literals recurses; keep operands int64.
const PathTime kZero(0);
const PathTime kOne(1);

} // namespace

bool signature_less(const LsPath& a, const LsPath& b) {
  if (a.dirs != b.dirs) return a.dirs < b.dirs;
  return std::lexicographical_compare(a.lengths.begin(), a.lengths.end(), b.lengths.begin(), b.lengths.end());
}

std::size_t LsPathHash::operator()(const LsPath& p) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (auto d : p.dirs) mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(d)));
  for (const auto& t : p.lengths) {
    mix(static_cast<std::uint64_t>(t.numerator()));
    mix(static_cast<std::uint64_t>(t.denominator()));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Path model

LsPathModel::LsPathModel(const CartanDatum& c, HighestWeight lambda) : lambda_(std::move(lambda)) {
  if (auto bad = check_axioms(c)) throw InputError("invalid Cartan datum: " + *bad);
  if (lambda_.size() != c.rank()) throw InputError("highest weight has the wrong length");
  for (auto x : lambda_)
    if (x < 0) throw InputError("highest weight is not dominant");
  cartan_ = gcm(c).a;
}

LsPath LsPathModel::highest() const {
  LsPath p;
  p.dirs.assign(rank(), 0);
  p.lengths.push_back(kOne);
  return p;
}

std::int64_t LsPathModel::slope(const LsPath& p, std::size_t s, std::size_t i) const {
  std::int64_t v = lambda_[i];
  const auto* d = &p.dirs[s * rank()];
  for (std::size_t j = 0; j < rank(); ++j) v -= cartan_[i][j] * d[j];
  return v;
}

std::vector<PathTime> LsPathModel::heights(const LsPath& p, std::size_t i) const {
  std::vector<PathTime> h(p.segments() + 1);
  h[0] = kZero;
  for (std::size_t s = 0; s < p.segments(); ++s) h[s + 1] = h[s] + p.lengths[s] * PathTime(slope(p, s, i));
  return h;
}

void LsPathModel::reflect(LsPath& p, std::size_t s, std::size_t i) const {
  // s_i(mu) = mu - <i, mu> alpha_i
  const auto sl = slope(p, s, i);
  p.dirs[s * rank() + i] += static_cast<std::int32_t>(sl);
}

void LsPathModel::canonicalize(LsPath& p, std::size_t rank) {
  LsPath out;
  for (std::size_t s = 0; s < p.segments(); ++s) {
    if (p.lengths[s] == kZero) continue;
    const auto* d = &p.dirs[s * rank];
    if (out.segments() > 0 && std::equal(d, d + rank, out.dirs.end() - static_cast<std::ptrdiff_t>(rank))) {
      out.lengths.back() += p.lengths[s];
      continue;
    }
    out.dirs.insert(out.dirs.end(), d, d + rank);
    out.lengths.push_back(p.lengths[s]);
  }
  p = std::move(out);
}

namespace {

std::int64_t integral(const PathTime& t, const char* what) {
  if (t.denominator() != 1) throw InternalError(std::string("non-integral ") + what + " on an LS path");
  return t.numerator();
}

} // namespace

std::int64_t LsPathModel::epsilon(const LsPath& p, std::size_t i) const {
  auto h = heights(p, i);
  return -integral(*std::min_element(h.begin(), h.end()), "minimum");
}

std::int64_t LsPathModel::phi(const LsPath& p, std::size_t i) const {
  auto h = heights(p, i);
  return integral(h.back() - *std::min_element(h.begin(), h.end()), "string length");
}

RootVector LsPathModel::nu(const LsPath& p) const {
  RootVector out(rank(), 0);
  for (std::size_t j = 0; j < rank(); ++j) {
    PathTime acc = kZero;
    for (std::size_t s = 0; s < p.segments(); ++s) acc += p.lengths[s] * PathTime(p.dirs[s * rank() + j]);
    out[j] = integral(acc, "endpoint");
  }
  return out;
}

std::optional<LsPath> LsPathModel::apply_f(const LsPath& p, std::size_t i) const {
  const auto h = heights(p, i);
  const auto m = *std::min_element(h.begin(), h.end());
  if (h.back() - m < kOne) return std::nullopt;
  // p_idx: last breakpoint attaining the minimum.
  std::size_t p_idx = h.size() - 1;
  while (h[p_idx] != m) --p_idx;
  // First breakpoint after p_idx with h >= m + 1; the crossing lies in the
  // segment ending there.
  std::size_t k1 = p_idx + 1;
  while (h[k1] < m + kOne) ++k1;
  const std::size_t cross_seg = k1 - 1;
  const PathTime tau = (m + kOne - h[cross_seg]) / PathTime(slope(p, cross_seg, i));

  LsPath out;
  const auto r = rank();
  for (std::size_t s = 0; s < p.segments(); ++s) {
    const auto* d = &p.dirs[s * r];
    if (s == cross_seg) {
      // reflected head [0, tau], unchanged tail
      out.dirs.insert(out.dirs.end(), d, d + r);
      out.lengths.push_back(tau);
      reflect(out, out.segments() - 1, i);
      out.dirs.insert(out.dirs.end(), d, d + r);
      out.lengths.push_back(p.lengths[s] - tau);
    } else {
      out.dirs.insert(out.dirs.end(), d, d + r);
      out.lengths.push_back(p.lengths[s]);
      if (s >= p_idx && s < cross_seg) reflect(out, out.segments() - 1, i);
    }
  }
  canonicalize(out, r);
  return out;
}

std::optional<LsPath> LsPathModel::apply_e(const LsPath& p, std::size_t i) const {
  const auto h = heights(p, i);
  const auto m = *std::min_element(h.begin(), h.end());
  if (m > -kOne) return std::nullopt;
  // q_idx: first breakpoint attaining the minimum.
  std::size_t q_idx = 0;
  while (h[q_idx] != m) ++q_idx;
  // Last breakpoint before q_idx with h >= m + 1; the crossing lies in the
  // segment starting there.
  std::size_t k0 = q_idx - 1;
  while (h[k0] < m + kOne) --k0;
  const std::size_t cross_seg = k0;
  const PathTime tau = (m + kOne - h[cross_seg]) / PathTime(slope(p, cross_seg, i));

  LsPath out;
  const auto r = rank();
  for (std::size_t s = 0; s < p.segments(); ++s) {
    const auto* d = &p.dirs[s * r];
    if (s == cross_seg) {
      // unchanged head [0, tau], reflected tail
      out.dirs.insert(out.dirs.end(), d, d + r);
      out.lengths.push_back(tau);
      out.dirs.insert(out.dirs.end(), d, d + r);
      out.lengths.push_back(p.lengths[s] - tau);
      reflect(out, out.segments() - 1, i);
    } else {
      out.dirs.insert(out.dirs.end(), d, d + r);
      out.lengths.push_back(p.lengths[s]);
      if (s > cross_seg && s < q_idx) reflect(out, out.segments() - 1, i);
    }
  }
  canonicalize(out, r);
  return out;
}

// ---------------------------------------------------------------------------
// Graph

CrystalGraph::CrystalGraph(CartanDatum datum, HighestWeight lambda, Window window, std::vector<CrystalNode> nodes,
                           std::vector<std::vector<Edge>> f_edges)
    : datum_(std::move(datum)),
      lambda_(std::move(lambda)),
      window_(std::move(window)),
      nodes_(std::move(nodes)),
      f_edges_(std::move(f_edges)) {
  index();
}

void CrystalGraph::index() {
  const auto r = datum_.rank();
  e_edges_.assign(nodes_.size(), std::vector<std::optional<std::size_t>>(r));
  census_.clear();
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    ++census_[nodes_[k].nu];
    for (std::size_t j = 0; j < r; ++j) {
      const auto e = f_edges_[k][j];
      if (e.kind == Edge::Kind::Node) {
        if (e_edges_[e.target][j]) throw InternalError("two f-edges with the same label enter one node");
        e_edges_[e.target][j] = k;
      }
    }
  }
}

bool CrystalGraph::paths_equal(const CrystalGraph& other) const {
  for (std::size_t k = 0; k < nodes_.size(); ++k)
    if (!(nodes_[k].path == other.nodes_[k].path)) return false;
  return true;
}

std::optional<std::size_t> CrystalGraph::e_edge(std::size_t k, std::size_t j) const { return e_edges_.at(k).at(j); }

std::optional<std::size_t> CrystalGraph::find(const LsPath& p) const {
  // Nodes are sorted by (height, signature): binary search within the layer.
  LsPathModel model(datum_, lambda_);
  if (p.lengths.empty()) return std::nullopt;
  const auto nu = model.nu(p);
  const auto ht = height(nu);
  auto lo = std::partition_point(nodes_.begin(), nodes_.end(), [&](const CrystalNode& n) { return height(n.nu) < ht; });
  auto hi = std::partition_point(lo, nodes_.end(), [&](const CrystalNode& n) { return height(n.nu) <= ht; });
  auto it = std::lower_bound(lo, hi, p, [](const CrystalNode& n, const LsPath& q) { return signature_less(n.path, q); });
  if (it == hi || !(it->path == p)) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::int64_t CrystalGraph::census(const RootVector& nu) const {
  if (!window_.contains(nu)) throw InputError("weight (" + format_vector(nu) + ") lies outside the generated window");
  auto it = census_.find(nu);
  return it == census_.end() ? 0 : it->second;
}

std::map<RootVector, std::int64_t, HeightLexLess> CrystalGraph::census_table() const { return census_; }

CrystalGraph generate(const CartanDatum& c, const HighestWeight& lambda, const Window& window) {
  if (window.max_height && *window.max_height < 0) throw InputError("depth must be nonnegative");
  LsPathModel model(c, lambda);
  const auto r = c.rank();

  auto make_node = [&](LsPath path, std::optional<std::size_t> parent, std::size_t label) {
    CrystalNode n;
    n.nu = model.nu(path);
    n.eps.resize(r);
    n.phi.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
      n.eps[i] = model.epsilon(path, i);
      n.phi[i] = model.phi(path, i);
    }
    n.path = std::move(path);
    n.parent = parent;
    n.label = label;
    return n;
  };

  std::vector<CrystalNode> nodes;
  std::vector<std::vector<Edge>> f_edges;
  if (!window.contains(RootVector(r, 0))) return CrystalGraph(c, lambda, window, {}, {});
  nodes.push_back(make_node(model.highest(), std::nullopt, 0));

  std::size_t layer_begin = 0, layer_end = 1;
  while (layer_begin < layer_end) {
    std::vector<CrystalNode> next;
    for (std::size_t k = layer_begin; k < layer_end; ++k) {
      const auto& b = nodes[k];
      for (std::size_t j = 0; j < r; ++j) {
        if (b.phi[j] == 0) continue;
        RootVector nu = b.nu;
        ++nu[j];
        if (!window.contains(nu)) continue;
        auto child = model.apply_f(b.path, j);
        if (!child) throw InternalError("f_j undefined although phi_j > 0");
        // Keep only the child whose least raising direction is j, so each node
        // is produced from exactly one parent.
        bool canonical = true;
        for (std::size_t i = 0; i < j && canonical; ++i) canonical = model.epsilon(*child, i) == 0;
        if (canonical) next.push_back(make_node(std::move(*child), k, j));
      }
    }
    std::sort(next.begin(), next.end(),
              [](const CrystalNode& a, const CrystalNode& b) { return signature_less(a.path, b.path); });

    std::unordered_map<LsPath, std::size_t, LsPathHash> where;
    where.reserve(next.size());
    for (std::size_t t = 0; t < next.size(); ++t)
      if (!where.emplace(next[t].path, layer_end + t).second) throw InternalError("duplicate crystal node");

    f_edges.resize(layer_end);
    for (std::size_t k = layer_begin; k < layer_end; ++k) {
      auto& row = f_edges[k];
      row.assign(r, Edge{});
      for (std::size_t j = 0; j < r; ++j) {
        if (nodes[k].phi[j] == 0) continue;
        RootVector nu = nodes[k].nu;
        ++nu[j];
        if (!window.contains(nu)) {
          row[j] = Edge{Edge::Kind::Outside, 0};
          continue;
        }
        auto child = model.apply_f(nodes[k].path, j);
        auto it = where.find(*child);
        if (it == where.end()) throw InternalError("crystal layer is not closed under f_j");
        row[j] = Edge{Edge::Kind::Node, it->second};
      }
    }
    for (auto& n : next) nodes.push_back(std::move(n));
    layer_begin = layer_end;
    layer_end = nodes.size();
  }
  f_edges.resize(nodes.size());
  return CrystalGraph(c, lambda, window, std::move(nodes), std::move(f_edges));
}

// ---------------------------------------------------------------------------
// Automorphism action

std::vector<std::size_t> aut_action(const CrystalGraph& g, const std::vector<std::size_t>& index_perm) {
  const auto& c = g.datum();
  const auto r = c.rank();
  if (index_perm.size() != r) throw InputError("automorphism size does not match the datum rank");
  for (std::size_t i = 0; i < r; ++i) {
    if (g.lambda()[i] != g.lambda()[index_perm[i]]) throw InputError("highest weight is not stable under the automorphism");
    for (std::size_t j = 0; j < r; ++j)
      if (c.form[i][j] != c.form[index_perm[i]][index_perm[j]])
        throw InputError("automorphism does not preserve the Cartan datum");
    if (!g.window().caps.empty()) {
      auto cap = [&](std::size_t k) { return k < g.window().caps.size() ? g.window().caps[k] : std::nullopt; };
      if (cap(i) != cap(index_perm[i])) throw InputError("window is not stable under the automorphism");
    }
  }

  std::vector<std::size_t> sigma(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto& n = g.node(k);
    if (!n.parent) {
      sigma[k] = k;
      continue;
    }
    const auto e = g.f_edge(sigma[*n.parent], index_perm[n.label]);
    if (e.kind != Edge::Kind::Node) throw InternalError("replayed generating word leaves the crystal");
    sigma[k] = e.target;
  }

  // sigma acts on paths by permuting coordinates: (sigma dir)_{a(j)} = dir_j.
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto& p = g.node(k).path;
    const auto& q = g.node(sigma[k]).path;
    bool ok = p.lengths == q.lengths && p.dirs.size() == q.dirs.size();
    for (std::size_t s = 0; ok && s < p.segments(); ++s)
      for (std::size_t j = 0; j < r; ++j) ok &= q.dirs[s * r + index_perm[j]] == p.dirs[s * r + j];
    if (!ok) throw InternalError("automorphism action disagrees with the coordinate permutation of paths");
  }
  // Intertwining: sigma(f_j b) = f_{a(j)} sigma(b).
  for (std::size_t k = 0; k < g.size(); ++k)
    for (std::size_t j = 0; j < r; ++j) {
      const auto lhs = g.f_edge(k, j);
      const auto rhs = g.f_edge(sigma[k], index_perm[j]);
      if (lhs.kind != rhs.kind) throw InternalError("automorphism action is not a crystal morphism");
      if (lhs.kind == Edge::Kind::Node && sigma[lhs.target] != rhs.target)
        throw InternalError("automorphism action is not a crystal morphism");
    }
  std::vector<bool> hit(g.size(), false);
  for (auto s : sigma) {
    if (hit[s]) throw InternalError("automorphism action is not a permutation");
    hit[s] = true;
  }
  return sigma;
}

std::int64_t fixed_census(const CrystalGraph& g, const std::vector<std::size_t>& sigma,
                          const std::vector<std::size_t>& index_perm, const RootVector& nu) {
  for (std::size_t i = 0; i < nu.size(); ++i)
    if (nu[i] != nu.at(index_perm.at(i))) throw InputError("weight (" + format_vector(nu) + ") is not stable under the automorphism");
  if (!g.window().contains(nu)) throw InputError("weight (" + format_vector(nu) + ") lies outside the generated window");
  std::int64_t count = 0;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (sigma[k] == k && g.node(k).nu == nu) ++count;
  return count;
}

std::map<RootVector, std::int64_t, HeightLexLess> fixed_census_table(const CrystalGraph& g,
                                                                     const std::vector<std::size_t>& sigma) {
  std::map<RootVector, std::int64_t, HeightLexLess> out;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (sigma[k] == k) ++out[g.node(k).nu];
  return out;
}

} // namespace foldkit
