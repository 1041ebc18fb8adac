#include "foldkit/rep.hpp"

#include "foldkit/error.hpp"

#include <numeric>
#include <sstream>

namespace foldkit {

std::int64_t DimVector::total() const { return std::accumulate(v.begin(), v.end(), std::int64_t{0}); }

namespace {

std::size_t dim(const std::vector<std::int64_t>& d, std::size_t k) { return static_cast<std::size_t>(d.at(k)); }

void require_same_dims(const QuiverRep& x, const QuiverRep& y) {
  if (!(x.dims == y.dims)) throw InputError("representations have different dimension vectors");
}

} // namespace

QuiverRep zero_rep(const Graph& g, DimVector dims) {
  if (dims.v.size() != g.vertex_count()) throw InputError("dimension vector has the wrong length");
  if (dims.framed() && dims.w.size() != g.vertex_count()) throw InputError("framing vector has the wrong length");
  for (auto d : dims.v)
    if (d < 0) throw InputError("negative dimension");
  for (auto d : dims.w)
    if (d < 0) throw InputError("negative framing dimension");
  QuiverRep x;
  x.dims = std::move(dims);
  for (std::size_t h = 0; h < g.half_edge_count(); ++h)
    x.b.emplace_back(dim(x.dims.v, g.in(h)), dim(x.dims.v, g.out(h)));
  if (x.framed())
    for (std::size_t k = 0; k < g.vertex_count(); ++k) {
      x.i.emplace_back(dim(x.dims.v, k), dim(x.dims.w, k));
      x.j.emplace_back(dim(x.dims.w, k), dim(x.dims.v, k));
    }
  return x;
}

void check_shapes(const Graph& g, const QuiverRep& x) {
  auto bad = [](const std::string& what) { throw InputError("shape mismatch for " + what); };
  if (x.dims.v.size() != g.vertex_count() || x.b.size() != g.half_edge_count()) bad("the representation");
  for (std::size_t h = 0; h < g.half_edge_count(); ++h)
    if (x.b[h].rows() != dim(x.dims.v, g.in(h)) || x.b[h].cols() != dim(x.dims.v, g.out(h))) bad(g.half_edge_name(h));
  if (!x.framed()) {
    if (!x.i.empty() || !x.j.empty()) bad("framing maps without a framing");
    return;
  }
  if (x.dims.w.size() != g.vertex_count() || x.i.size() != g.vertex_count() || x.j.size() != g.vertex_count())
    bad("the framing");
  for (std::size_t k = 0; k < g.vertex_count(); ++k) {
    if (x.i[k].rows() != dim(x.dims.v, k) || x.i[k].cols() != dim(x.dims.w, k)) bad("i_" + g.vertex(k));
    if (x.j[k].rows() != dim(x.dims.w, k) || x.j[k].cols() != dim(x.dims.v, k)) bad("j_" + g.vertex(k));
  }
}

Rational symplectic_form(const Quiver& q, const QuiverRep& x, const QuiverRep& y) {
  check_shapes(q.graph, x);
  check_shapes(q.graph, y);
  require_same_dims(x, y);
  Rational s = 0;
  for (std::size_t h = 0; h < q.graph.half_edge_count(); ++h)
    s += q.orientation.epsilon(h) * (x.b[Graph::bar(h)] * y.b[h]).trace();
  return s;
}

std::vector<QMatrix> moment_map(const Quiver& q, const QuiverRep& x) {
  check_shapes(q.graph, x);
  std::vector<QMatrix> mu;
  for (std::size_t k = 0; k < q.graph.vertex_count(); ++k) mu.emplace_back(dim(x.dims.v, k), dim(x.dims.v, k));
  for (std::size_t h = 0; h < q.graph.half_edge_count(); ++h) {
    auto& m = mu[q.graph.out(h)];
    m = m + Rational(q.orientation.epsilon(h)) * (x.b[Graph::bar(h)] * x.b[h]);
  }
  return mu;
}

bool is_nilpotent(const Graph& g, const QuiverRep& x) {
  check_shapes(g, x);
  const auto n = g.vertex_count();
  std::vector<QMatrix> s(n);
  std::size_t total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    s[k] = QMatrix::identity(dim(x.dims.v, k));
    total += dim(x.dims.v, k);
  }
  for (std::size_t step = 0; step <= total + 1; ++step) {
    bool all_zero = true;
    for (std::size_t k = 0; k < n; ++k)
      if (s[k].cols() > 0) all_zero = false;
    if (all_zero) return true;
    std::vector<std::vector<QMatrix>> parts(n);
    for (std::size_t h = 0; h < g.half_edge_count(); ++h)
      if (s[g.out(h)].cols() > 0) parts[g.in(h)].push_back(x.b[h] * s[g.out(h)]);
    for (std::size_t k = 0; k < n; ++k) {
      const auto rows = dim(x.dims.v, k);
      s[k] = parts[k].empty() ? QMatrix(rows, 0) : column_space(hconcat(parts[k], rows));
    }
  }
  return false;
}

bool paths_vanish(const Graph& g, const QuiverRep& x, std::int64_t length) {
  check_shapes(g, x);
  // product: V_start -> V_at after `depth` steps.
  auto dfs = [&](auto&& self, std::size_t at, const QMatrix& product, std::int64_t depth) -> bool {
    if (product.is_zero()) return true;
    if (depth == length) return false;
    for (std::size_t h = 0; h < g.half_edge_count(); ++h)
      if (g.out(h) == at && !self(self, g.in(h), x.b[h] * product, depth + 1)) return false;
    return true;
  };
  for (std::size_t k = 0; k < g.vertex_count(); ++k)
    if (!dfs(dfs, k, QMatrix::identity(dim(x.dims.v, k)), 0)) return false;
  return true;
}

bool in_lambda(const Quiver& q, const QuiverRep& x) {
  for (const auto& m : moment_map(q, x))
    if (!m.is_zero()) return false;
  return is_nilpotent(q.graph, x);
}

std::int64_t epsilon_i(const Graph& g, const QuiverRep& x, std::size_t vertex) {
  check_shapes(g, x);
  const auto rows = dim(x.dims.v, vertex);
  std::vector<QMatrix> incoming;
  for (std::size_t h = 0; h < g.half_edge_count(); ++h)
    if (g.in(h) == vertex) incoming.push_back(x.b[h]);
  const auto r = incoming.empty() ? 0 : rank(hconcat(incoming, rows));
  return static_cast<std::int64_t>(rows - r);
}

QuiverRep a_on_rep(const QuiverRep& x, const Automorphism& a) {
  if (a.vertex_perm.size() != x.dims.v.size() || a.half_edge_perm.size() != x.b.size())
    throw InputError("automorphism does not match the representation");
  QuiverRep out;
  out.dims.v.resize(x.dims.v.size());
  for (std::size_t k = 0; k < x.dims.v.size(); ++k) out.dims.v[k] = x.dims.v[a.vertex_perm[k]];
  for (std::size_t h = 0; h < x.b.size(); ++h) out.b.push_back(x.b[a.half_edge_perm[h]]);
  if (x.framed()) {
    out.dims.w.resize(x.dims.w.size());
    for (std::size_t k = 0; k < x.dims.w.size(); ++k) {
      out.dims.w[k] = x.dims.w[a.vertex_perm[k]];
      out.i.push_back(x.i[a.vertex_perm[k]]);
      out.j.push_back(x.j[a.vertex_perm[k]]);
    }
  }
  return out;
}

QuiverRep g_action(const Graph& g, const QuiverRep& x, const std::vector<QMatrix>& group) {
  check_shapes(g, x);
  if (group.size() != g.vertex_count()) throw InputError("group element has the wrong number of blocks");
  std::vector<QMatrix> inv;
  for (std::size_t k = 0; k < group.size(); ++k) {
    if (group[k].rows() != dim(x.dims.v, k) || group[k].cols() != dim(x.dims.v, k))
      throw InputError("group block has the wrong size at " + g.vertex(k));
    inv.push_back(inverse(group[k]));
  }
  QuiverRep out = x;
  for (std::size_t h = 0; h < g.half_edge_count(); ++h) out.b[h] = group[g.in(h)] * x.b[h] * inv[g.out(h)];
  if (x.framed())
    for (std::size_t k = 0; k < g.vertex_count(); ++k) {
      out.i[k] = group[k] * x.i[k];
      out.j[k] = x.j[k] * inv[k];
    }
  return out;
}

Rational framed_form(const Quiver& q, const QuiverRep& x, const QuiverRep& y) {
  check_shapes(q.graph, x);
  check_shapes(q.graph, y);
  require_same_dims(x, y);
  if (!x.framed()) throw InputError("framed form needs framed representations");
  Rational s = 0;
  for (std::size_t h = 0; h < q.graph.half_edge_count(); ++h)
    s += q.orientation.epsilon(h) * (x.b[h] * y.b[Graph::bar(h)]).trace();
  for (std::size_t k = 0; k < q.graph.vertex_count(); ++k)
    s += (x.i[k] * y.j[k]).trace() - (y.i[k] * x.j[k]).trace();
  return s;
}

bool in_lambda_vw(const Quiver& q, const QuiverRep& x) {
  check_shapes(q.graph, x);
  for (const auto& m : x.i)
    if (!m.is_zero()) return false;
  return in_lambda(q, x);
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct Tokens {
  std::vector<std::string> words;
  std::string body; // text after ':'
};

QMatrix parse_matrix(const std::string& shape, const std::string& body, std::size_t line) {
  const auto x = shape.find('x');
  std::size_t rows = 0, cols = 0;
  try {
    if (x == std::string::npos) throw std::invalid_argument("shape");
    std::size_t used = 0;
    rows = std::stoul(shape.substr(0, x), &used);
    if (used != x) throw std::invalid_argument("shape");
    cols = std::stoul(shape.substr(x + 1), &used);
    if (used != shape.size() - x - 1) throw std::invalid_argument("shape");
  } catch (const std::exception&) {
    throw ParseError(line, 1, "malformed shape '" + shape + "', expected <rows>x<cols>");
  }
  QMatrix m(rows, cols);
  std::stringstream rs(body);
  std::string row;
  std::size_t r = 0;
  while (std::getline(rs, row, ';')) {
    std::stringstream cs(row);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(cs, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      if (b == std::string::npos) throw ParseError(line, 1, "empty matrix entry");
      if (r >= rows || c >= cols) throw ParseError(line, 1, "matrix has more entries than its shape " + shape);
      try {
        m(r, c) = parse_rational(cell.substr(b, e - b + 1));
      } catch (const InputError& err) {
        throw ParseError(line, 1, err.what());
      }
      ++c;
    }
    if (c != cols) throw ParseError(line, 1, "row " + std::to_string(r + 1) + " has the wrong number of entries");
    ++r;
  }
  if (r != rows && !(rows == 0 || cols == 0)) throw ParseError(line, 1, "matrix has the wrong number of rows");
  return m;
}

} // namespace

QuiverRep parse_rep(const Quiver& q, std::string_view text) {
  const auto& g = q.graph;
  struct Pending {
    std::string kind, id, shape, body;
    std::size_t line;
  };
  DimVector dims;
  dims.v.assign(g.vertex_count(), 0);
  std::vector<std::int64_t> frame(g.vertex_count(), 0);
  bool framed = false;
  std::vector<Pending> maps;

  std::size_t lineno = 0, pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string body;
    if (auto colon = line.find(':'); colon != std::string::npos) {
      body = line.substr(colon + 1);
      line.resize(colon);
    }
    std::stringstream ss(line);
    std::vector<std::string> w;
    for (std::string t; ss >> t;) w.push_back(t);
    if (w.empty()) {
      if (!body.empty()) throw ParseError(lineno, 1, "':' without a keyword");
      if (end == text.size()) break;
      continue;
    }
    auto vertex_of = [&](const std::string& id) {
      auto v = g.find_vertex(id);
      if (!v) throw ParseError(lineno, 1, "unknown vertex '" + id + "'");
      return *v;
    };
    if (w[0] == "dim" || w[0] == "frame") {
      if (w.size() != 3) throw ParseError(lineno, 1, w[0] + " expects <vertex> <n>");
      std::int64_t n = 0;
      try {
        std::size_t used = 0;
        n = std::stoll(w[2], &used);
        if (used != w[2].size() || n < 0) throw std::invalid_argument("n");
      } catch (const std::exception&) {
        throw ParseError(lineno, 1, "malformed dimension '" + w[2] + "'");
      }
      if (w[0] == "dim") {
        dims.v[vertex_of(w[1])] = n;
      } else {
        frame[vertex_of(w[1])] = n;
        framed = true;
      }
    } else if (w[0] == "map" || w[0] == "i" || w[0] == "j") {
      if (w.size() != 3) throw ParseError(lineno, 1, w[0] + " expects <id> <rows>x<cols> : entries");
      if (w[0] != "map") framed = true;
      maps.push_back({w[0], w[1], w[2], body, lineno});
    } else {
      throw ParseError(lineno, 1, "unknown keyword '" + w[0] + "'");
    }
    if (end == text.size()) break;
  }
  if (framed) dims.w = frame;
  auto x = zero_rep(g, dims);
  for (const auto& m : maps) {
    auto mat = parse_matrix(m.shape, m.body, m.line);
    QMatrix* slot = nullptr;
    std::string what;
    if (m.kind == "map") {
      const bool reverse = !m.id.empty() && m.id[0] == '~';
      const auto eid = reverse ? m.id.substr(1) : m.id;
      auto e = g.find_edge(eid);
      if (!e) throw ParseError(m.line, 1, "unknown edge '" + eid + "'");
      auto h = q.orientation.contains(2 * *e) ? 2 * *e : 2 * *e + 1;
      if (reverse) h = Graph::bar(h);
      slot = &x.b[h];
      what = g.half_edge_name(h);
    } else {
      auto v = g.find_vertex(m.id);
      if (!v) throw ParseError(m.line, 1, "unknown vertex '" + m.id + "'");
      slot = m.kind == "i" ? &x.i[*v] : &x.j[*v];
      what = m.kind + "_" + m.id;
    }
    if (mat.rows() != slot->rows() || mat.cols() != slot->cols())
      throw ParseError(m.line, 1,
                       "shape of " + what + " must be " + std::to_string(slot->rows()) + "x" + std::to_string(slot->cols()));
    *slot = std::move(mat);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Random data

QMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int zero_rate) {
  QMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (zero_rate > 0 && static_cast<int>(rng() % 100) < zero_rate) continue;
      const auto p = static_cast<long>(rng() % 5) - 2;
      const auto d = static_cast<long>(rng() % 3) + 1;
      m(r, c) = Rational(p, d);
      m(r, c).canonicalize();
    }
  return m;
}

QMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    auto m = random_matrix(rng, n, n);
    if (rank(m) == n) return m;
  }
}

QuiverRep random_rep(const Graph& g, const DimVector& dims, std::mt19937_64& rng, int zero_rate) {
  auto x = zero_rep(g, dims);
  for (auto& m : x.b) m = random_matrix(rng, m.rows(), m.cols(), zero_rate);
  for (auto& m : x.i) m = random_matrix(rng, m.rows(), m.cols(), zero_rate);
  for (auto& m : x.j) m = random_matrix(rng, m.rows(), m.cols(), zero_rate);
  return x;
}

// ---------------------------------------------------------------------------
// Property suite

bool RepcheckReport::passed() const {
  for (const auto& p : properties)
    if (p.failures) return false;
  return true;
}

std::string RepcheckReport::tsv() const {
  std::string s = "property\ttrials\tfailures\tstatus\n";
  for (const auto& p : properties) {
    s += p.name + "\t" + std::to_string(p.trials) + "\t" + std::to_string(p.failures) + "\t" +
         (p.failures ? "FAIL " + p.first_failure : std::string("pass")) + "\n";
  }
  return s;
}

namespace {

class Suite {
public:
  Suite(const Quiver& q, std::uint64_t seed, std::int64_t max_total)
      : q_(q), g_(q.graph), a_(q.automorphism_or_identity()), rng_(seed), max_total_(max_total) {}

  DimVector dims(bool framed) {
    DimVector d;
    const auto n = g_.vertex_count();
    for (;;) {
      d.v.assign(n, 0);
      std::int64_t budget = static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(max_total_ + 1));
      while (budget-- > 0) ++d.v[rng_() % n];
      if (!framed) return d;
      d.w.assign(n, 0);
      for (auto& x : d.w) x = static_cast<std::int64_t>(rng_() % 3);
      return d;
    }
  }

  /// Representation supported on the orientation: B_h = 0 for h outside it.
  QuiverRep one_sided(const DimVector& d, int zero_rate) {
    auto x = random_rep(g_, d, rng_, zero_rate);
    for (std::size_t h = 0; h < g_.half_edge_count(); ++h)
      if (!q_.orientation.contains(h)) x.b[h] = QMatrix(x.b[h].rows(), x.b[h].cols());
    return x;
  }

  std::vector<QMatrix> group(const DimVector& d) {
    std::vector<QMatrix> out;
    for (auto n : d.v) out.push_back(random_invertible(rng_, static_cast<std::size_t>(n)));
    return out;
  }

  template <class F>
  PropertyResult run(const std::string& name, std::int64_t trials, F&& check) {
    PropertyResult r{name, trials, 0, {}};
    for (std::int64_t t = 0; t < trials; ++t) {
      std::string why = check();
      if (!why.empty()) {
        if (!r.failures) r.first_failure = "trial " + std::to_string(t) + ": " + why;
        ++r.failures;
      }
    }
    return r;
  }

  RepcheckReport all(std::int64_t trials) {
    RepcheckReport rep;
    rep.properties.push_back(run("omega antisymmetry", trials, [&]() -> std::string {
      const auto d = dims(false);
      const auto x = random_rep(g_, d, rng_), y = random_rep(g_, d, rng_);
      if (symplectic_form(q_, x, y) != -symplectic_form(q_, y, x)) return "omega(B,B') != -omega(B',B)";
      if (symplectic_form(q_, x, x) != 0) return "omega(B,B) != 0";
      return {};
    }));
    rep.properties.push_back(run("moment map trace", trials, [&]() -> std::string {
      const auto x = random_rep(g_, dims(false), rng_);
      Rational s = 0;
      for (const auto& m : moment_map(q_, x)) s += m.trace();
      return s == 0 ? std::string() : "sum of traces is " + to_string(s);
    }));
    rep.properties.push_back(run("G_V equivariance", trials, [&]() -> std::string {
      const auto d = dims(false);
      const auto x = random_rep(g_, d, rng_, 40);
      const auto gs = group(d);
      const auto gx = g_action(g_, x, gs);
      const auto mu = moment_map(q_, x), gmu = moment_map(q_, gx);
      for (std::size_t k = 0; k < mu.size(); ++k)
        if (!(gmu[k] == gs[k] * mu[k] * inverse(gs[k]))) return "mu(gB) != g mu(B) g^-1 at " + g_.vertex(k);
      for (std::size_t k = 0; k < mu.size(); ++k)
        if (epsilon_i(g_, x, k) != epsilon_i(g_, gx, k)) return "epsilon_" + g_.vertex(k) + " not invariant";
      if (is_nilpotent(g_, x) != is_nilpotent(g_, gx)) return "nilpotency not invariant";
      if (in_lambda(q_, x) != in_lambda(q_, gx)) return "Lambda_V membership not invariant";
      return {};
    }));
    rep.properties.push_back(run("a equivariance", trials, [&]() -> std::string {
      const auto d = dims(false);
      const auto x = random_rep(g_, d, rng_, 40), y = random_rep(g_, d, rng_);
      const auto ax = a_on_rep(x, a_);
      const auto mu = moment_map(q_, x), amu = moment_map(q_, ax);
      for (std::size_t k = 0; k < mu.size(); ++k) {
        const auto ak = a_.vertex_perm[k];
        if (!(amu[k] == mu[ak])) return "mu_i(aB) != mu_a(i)(B) at " + g_.vertex(k);
        if (epsilon_i(g_, ax, k) != epsilon_i(g_, x, ak)) return "epsilon_i(aB) != epsilon_a(i)(B) at " + g_.vertex(k);
      }
      if (is_nilpotent(g_, ax) != is_nilpotent(g_, x)) return "nilpotency not a-invariant";
      if (in_lambda(q_, ax) != in_lambda(q_, x)) return "Lambda_V membership not a-invariant";
      const auto ay = a_on_rep(y, a_);
      if (ax.dims == ay.dims && symplectic_form(q_, ax, ay) != symplectic_form(q_, x, y)) return "omega not a-invariant";
      auto p = x;
      for (std::size_t t = 0; t < a_.order; ++t) p = a_on_rep(p, a_);
      if (!(p == x)) return "a^n does not act trivially";
      return {};
    }));
    rep.properties.push_back(run("nilpotency bound", trials, [&]() -> std::string {
      const auto d = dims(false);
      const auto x = (rng_() % 2) ? one_sided(d, 30) : random_rep(g_, d, rng_, 70);
      const bool fast = is_nilpotent(g_, x);
      const bool brute = paths_vanish(g_, x, 2 * d.total());
      if (fast != brute) return std::string("chain test says ") + (fast ? "nilpotent" : "not nilpotent") + ", paths disagree";
      return {};
    }));
    rep.properties.push_back(run("Lambda_V membership", trials, [&]() -> std::string {
      const auto d = dims(false);
      const auto x = (rng_() % 2) ? one_sided(d, 30) : random_rep(g_, d, rng_, 60);
      bool mu_zero = true;
      for (const auto& m : moment_map(q_, x)) mu_zero = mu_zero && m.is_zero();
      if (in_lambda(q_, x) != (mu_zero && is_nilpotent(g_, x))) return "membership != (mu = 0 and nilpotent)";
      if (!in_lambda(q_, zero_rep(g_, d))) return "zero representation not a member";
      return {};
    }));
    rep.properties.push_back(run("Lambda_VW membership", trials, [&]() -> std::string {
      const auto d = dims(true);
      auto x = (rng_() % 2) ? one_sided(d, 30) : random_rep(g_, d, rng_, 60);
      const bool base = in_lambda(q_, x);
      bool i_zero = true;
      for (const auto& m : x.i) i_zero = i_zero && m.is_zero();
      if (in_lambda_vw(q_, x) != (base && i_zero)) return "membership != (B in Lambda_V and i = 0)";
      for (auto& m : x.i) m = QMatrix(m.rows(), m.cols());
      if (in_lambda_vw(q_, x) != base) return "membership depends on j";
      const auto y = random_rep(g_, d, rng_);
      if (framed_form(q_, x, y) != -framed_form(q_, y, x)) return "omega_C not antisymmetric";
      return {};
    }));
    return rep;
  }

private:
  const Quiver& q_;
  const Graph& g_;
  Automorphism a_;
  std::mt19937_64 rng_;
  std::int64_t max_total_;
};

const char* const kSuiteQuivers[] = {
    "vertex 1 2\nedge e1 1 2\n",
    "vertex 1 2 3\nedge e1 1 2\nedge e2 2 3\naut (1 3)\n",
    "vertex 1 2 3 4\nedge e1 1 2\nedge e2 2 3\nedge e3 3 4\nedge e4 4 1\naut (1 3)(2 4)\n",
    "vertex 0 1 2 3\nedge e1 0 1\nedge e2 0 2\nedge e3 0 3\naut (1 2 3)\n",
    "vertex 1 2\nedge e1 1 2\nedge e2 1 2\n",
};

} // namespace

RepcheckReport repcheck(const Quiver& q, std::uint64_t seed, std::int64_t trials, std::int64_t max_total) {
  if (trials < 0) throw InputError("trials must be nonnegative");
  if (max_total < 0) throw InputError("dimension bound must be nonnegative");
  Suite s(q, seed, max_total);
  return s.all(trials);
}

RepcheckReport repcheck(std::uint64_t seed, std::int64_t trials) {
  RepcheckReport total;
  const std::size_t n = std::size(kSuiteQuivers);
  for (std::size_t k = 0; k < n; ++k) {
    const auto q = parse_quiver(kSuiteQuivers[k]);
    const auto share = trials / static_cast<std::int64_t>(n) + (static_cast<std::int64_t>(k) < trials % static_cast<std::int64_t>(n) ? 1 : 0);
    auto part = repcheck(q, seed + k, share);
    if (total.properties.empty())
      for (const auto& r : part.properties) total.properties.push_back({r.name, 0, 0, {}});
    for (std::size_t p = 0; p < part.properties.size(); ++p) {
      auto& t = total.properties[p];
      const auto& r = part.properties[p];
      if (!t.failures && r.failures) t.first_failure = "quiver " + std::to_string(k + 1) + " " + r.first_failure;
      t.trials += r.trials;
      t.failures += r.failures;
    }
  }
  return total;
}

} // namespace foldkit
