#include "foldkit/quiver.hpp"

#include "foldkit/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace foldkit {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_alnum_id(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

std::size_t permutation_order(const std::vector<std::size_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::size_t order = 1;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (std::size_t x = start; !seen[x]; x = perm[x]) {
      seen[x] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

bool is_permutation_of_size(const std::vector<std::size_t>& perm, std::size_t n) {
  if (perm.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (auto x : perm) {
    if (x >= n || hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

std::vector<std::vector<std::size_t>> cycles(const std::vector<std::size_t>& perm) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> cyc;
    for (std::size_t x = start; !seen[x]; x = perm[x]) {
      seen[x] = true;
      cyc.push_back(x);
    }
    std::sort(cyc.begin(), cyc.end());
    out.push_back(std::move(cyc));
  }
  // Starting points are visited in increasing order, so orbits are already
  // ordered by least member.
  return out;
}

} // namespace

bool id_less(std::string_view a, std::string_view b) {
  const bool da = all_digits(a);
  const bool db = all_digits(b);
  if (da && db) {
    auto strip = [](std::string_view s) {
      auto nz = s.find_first_not_of('0');
      return nz == std::string_view::npos ? std::string_view("0") : s.substr(nz);
    };
    auto sa = strip(a), sb = strip(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
    return a < b;
  }
  if (da != db) return da;
  return a < b;
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges) {
  std::sort(vertices.begin(), vertices.end(), [](const auto& a, const auto& b) { return id_less(a, b); });
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!is_alnum_id(vertices[i])) throw InputError("vertex id '" + vertices[i] + "' is not alphanumeric");
    if (i > 0 && vertices[i] == vertices[i - 1]) throw InputError("duplicate vertex '" + vertices[i] + "'");
  }
  vertices_ = std::move(vertices);

  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return id_less(a.id, b.id); });
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& spec = edges[e];
    if (!is_alnum_id(spec.id)) throw InputError("edge id '" + spec.id + "' is not alphanumeric");
    if (e > 0 && spec.id == edges[e - 1].id) throw InputError("duplicate edge '" + spec.id + "'");
    auto u = find_vertex(spec.u);
    auto v = find_vertex(spec.v);
    if (!u || !v) throw InputError("edge '" + spec.id + "' has a dangling endpoint");
    if (*u == *v) throw InputError("edge '" + spec.id + "' is a loop at vertex '" + spec.u + "'");
    edge_ids_.push_back(spec.id);
    out_.push_back(*u);
    in_.push_back(*v);
    out_.push_back(*v);
    in_.push_back(*u);
  }
}

std::optional<std::size_t> Graph::find_vertex(std::string_view id) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                             [](const std::string& a, std::string_view b) { return id_less(a, b); });
  if (it == vertices_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<std::size_t> Graph::find_edge(std::string_view id) const {
  auto it = std::lower_bound(edge_ids_.begin(), edge_ids_.end(), id,
                             [](const std::string& a, std::string_view b) { return id_less(a, b); });
  if (it == edge_ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - edge_ids_.begin());
}

std::size_t Graph::edges_between(std::size_t i, std::size_t j) const {
  std::size_t count = 0;
  for (std::size_t e = 0; e < edge_count(); ++e) {
    const auto u = out_[2 * e], v = in_[2 * e];
    if ((u == i && v == j) || (u == j && v == i)) ++count;
  }
  return count;
}

std::string Graph::half_edge_name(std::size_t h) const {
  return edge_id(edge_of(h)) + ":" + vertex(out(h)) + "->" + vertex(in(h));
}

// ---------------------------------------------------------------------------
// Orientation

Orientation::Orientation(std::vector<bool> in_omega) : in_omega_(std::move(in_omega)) {}

bool Orientation::is_valid_for(const Graph& g) const {
  if (in_omega_.size() != g.half_edge_count()) return false;
  for (std::size_t h = 0; h < in_omega_.size(); ++h)
    if (in_omega_[h] == in_omega_[Graph::bar(h)]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Automorphisms

Automorphism Automorphism::identity(const Graph& g) {
  Automorphism a;
  a.vertex_perm.resize(g.vertex_count());
  a.half_edge_perm.resize(g.half_edge_count());
  std::iota(a.vertex_perm.begin(), a.vertex_perm.end(), std::size_t{0});
  std::iota(a.half_edge_perm.begin(), a.half_edge_perm.end(), std::size_t{0});
  a.order = 1;
  return a;
}

bool Automorphism::is_trivial() const { return order == 1; }

std::size_t Automorphism::vertex_power(std::size_t i, std::size_t k) const {
  for (std::size_t t = 0; t < k % order; ++t) i = vertex_perm[i];
  return i;
}

Automorphism make_automorphism(const Graph& g, std::vector<std::size_t> vertex_perm,
                               std::vector<std::size_t> half_edge_perm) {
  if (!is_permutation_of_size(vertex_perm, g.vertex_count()))
    throw InputError("automorphism is not a permutation of the vertices");
  if (!is_permutation_of_size(half_edge_perm, g.half_edge_count()))
    throw InputError("automorphism is not a permutation of the half-edges");
  Automorphism a;
  a.order = std::lcm(permutation_order(vertex_perm), permutation_order(half_edge_perm));
  a.vertex_perm = std::move(vertex_perm);
  a.half_edge_perm = std::move(half_edge_perm);
  return a;
}

std::vector<Violation> validate_admissible(const Graph& g, const Automorphism& a) {
  std::vector<Violation> out;
  if (!is_permutation_of_size(a.vertex_perm, g.vertex_count())) {
    out.push_back({"vertex permutation", "size or image invalid"});
    return out;
  }
  if (!is_permutation_of_size(a.half_edge_perm, g.half_edge_count())) {
    out.push_back({"half-edge permutation", "size or image invalid"});
    return out;
  }
  for (std::size_t h = 0; h < g.half_edge_count(); ++h) {
    const auto ah = a.half_edge_perm[h];
    if (g.out(ah) != a.vertex_perm[g.out(h)] || g.in(ah) != a.vertex_perm[g.in(h)])
      out.push_back({"endpoints [a(h)] = a[h]", g.half_edge_name(h)});
    if (a.half_edge_perm[Graph::bar(h)] != Graph::bar(ah))
      out.push_back({"a commutes with bar", g.half_edge_name(h)});
  }
  const auto orb = orbits(a);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto u = g.out(2 * e), v = g.in(2 * e);
    if (orb.orbit_of_vertex[u] == orb.orbit_of_vertex[v])
      out.push_back({"edge inside orbit", g.edge_id(e) + " joins " + orbit_label(g, orb.vertex_orbits[orb.orbit_of_vertex[u]])});
  }
  const auto n = std::lcm(permutation_order(a.vertex_perm), permutation_order(a.half_edge_perm));
  if (n != a.order) out.push_back({"order", "declared " + std::to_string(a.order) + ", actual " + std::to_string(n)});
  return out;
}

Orbits orbits(const Automorphism& a) {
  Orbits o;
  o.vertex_orbits = cycles(a.vertex_perm);
  o.half_edge_orbits = cycles(a.half_edge_perm);
  o.orbit_of_vertex.assign(a.vertex_perm.size(), 0);
  for (std::size_t k = 0; k < o.vertex_orbits.size(); ++k)
    for (auto v : o.vertex_orbits[k]) o.orbit_of_vertex[v] = k;
  return o;
}

std::string orbit_label(const Graph& g, const std::vector<std::size_t>& orbit) {
  std::string s = "{";
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    if (k) s += ",";
    s += g.vertex(orbit[k]);
  }
  return s + "}";
}

Orientation compatible_orientation(const Graph& g, const Automorphism& a, const std::vector<std::size_t>& seed) {
  enum class Mark { Unset, In, Out };
  std::vector<Mark> mark(g.half_edge_count(), Mark::Unset);

  auto place = [&](std::size_t start) {
    std::size_t h = start;
    do {
      if (mark[h] == Mark::Out || mark[Graph::bar(h)] == Mark::In)
        throw InputError("no a-stable orientation: half-edge " + g.half_edge_name(h) + " conflicts with its reverse");
      mark[h] = Mark::In;
      mark[Graph::bar(h)] = Mark::Out;
      h = a.half_edge_perm[h];
    } while (h != start);
  };

  for (auto h : seed) {
    if (h >= g.half_edge_count()) throw InputError("orientation seed out of range");
    if (mark[h] != Mark::In) place(h);
  }
  for (std::size_t h = 0; h < g.half_edge_count(); ++h)
    if (mark[h] == Mark::Unset) place(h);

  std::vector<bool> mask(g.half_edge_count());
  for (std::size_t h = 0; h < mask.size(); ++h) mask[h] = mark[h] == Mark::In;
  return Orientation(std::move(mask));
}

Automorphism Quiver::automorphism_or_identity() const {
  return automorphism ? *automorphism : Automorphism::identity(graph);
}

bool Quiver::orientation_is_compatible() const {
  if (!automorphism) return true;
  for (std::size_t h = 0; h < graph.half_edge_count(); ++h)
    if (orientation.contains(h) && !orientation.contains(automorphism->half_edge_perm[h])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  std::string text;
  std::size_t column; // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

struct EdgeDecl {
  Graph::EdgeSpec spec;
  std::size_t line;
};

struct OrientDecl {
  std::string edge, u, v;
  std::size_t line, column;
};

struct AutEdgeDecl {
  std::string from, to;
  std::size_t line, column;
};

// Parses "(a b c)(d e)" starting at `pos` in `line`.
std::vector<std::vector<std::pair<std::string, std::size_t>>> parse_cycles(std::string_view line, std::size_t pos,
                                                                         std::size_t lineno) {
  std::vector<std::vector<std::pair<std::string, std::size_t>>> out;
  std::size_t i = pos;
  auto skip_ws = [&] {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  };
  skip_ws();
  while (i < line.size()) {
    if (line[i] != '(') throw ParseError(lineno, i + 1, "expected '(' in aut cycle list");
    ++i;
    std::vector<std::pair<std::string, std::size_t>> cyc;
    for (;;) {
      skip_ws();
      if (i >= line.size()) throw ParseError(lineno, i + 1, "unterminated cycle");
      if (line[i] == ')') {
        ++i;
        break;
      }
      std::size_t start = i;
      while (i < line.size() && std::isalnum(static_cast<unsigned char>(line[i]))) ++i;
      if (start == i) throw ParseError(lineno, i + 1, std::string("unexpected character '") + line[i] + "' in cycle");
      cyc.emplace_back(std::string(line.substr(start, i - start)), start + 1);
    }
    out.push_back(std::move(cyc));
    skip_ws();
  }
  return out;
}

} // namespace

Quiver parse_quiver(std::string_view text) {
  std::vector<std::pair<std::string, std::size_t>> vertex_decls; // id, line
  std::vector<EdgeDecl> edge_decls;
  std::vector<OrientDecl> orient_decls;
  std::vector<AutEdgeDecl> autedge_decls;
  std::vector<std::vector<std::pair<std::string, std::size_t>>> aut_cycles;
  std::size_t aut_line = 0;
  bool have_aut = false;
  std::optional<std::pair<std::string, std::size_t>> affine_decl;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    auto hash = raw.find('#');
    std::string_view line = raw.substr(0, hash);
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const auto& kw = tokens[0].text;

    auto require_ids = [&](std::size_t from, std::size_t count) {
      if (tokens.size() != from + count)
        throw ParseError(lineno, tokens.back().column, "'" + kw + "' expects " + std::to_string(count) + " arguments");
      for (std::size_t k = from; k < tokens.size(); ++k)
        if (!is_alnum_id(tokens[k].text))
          throw ParseError(lineno, tokens[k].column, "id '" + tokens[k].text + "' is not alphanumeric");
    };

    if (kw == "vertex") {
      if (tokens.size() < 2) throw ParseError(lineno, tokens[0].column, "'vertex' needs at least one id");
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        if (!is_alnum_id(tokens[k].text))
          throw ParseError(lineno, tokens[k].column, "id '" + tokens[k].text + "' is not alphanumeric");
        vertex_decls.emplace_back(tokens[k].text, lineno);
      }
    } else if (kw == "edge") {
      require_ids(1, 3);
      if (tokens[2].text == tokens[3].text)
        throw ParseError(lineno, tokens[3].column, "loop edge '" + tokens[1].text + "' at vertex '" + tokens[2].text + "'");
      edge_decls.push_back({{tokens[1].text, tokens[2].text, tokens[3].text}, lineno});
    } else if (kw == "orient") {
      require_ids(1, 3);
      orient_decls.push_back({tokens[1].text, tokens[2].text, tokens[3].text, lineno, tokens[1].column});
    } else if (kw == "aut") {
      if (have_aut) throw ParseError(lineno, tokens[0].column, "duplicate 'aut' line");
      have_aut = true;
      aut_line = lineno;
      aut_cycles = parse_cycles(line, tokens[0].column - 1 + 3, lineno);
    } else if (kw == "autedge") {
      std::string joined;
      for (std::size_t k = 1; k < tokens.size(); ++k) joined += tokens[k].text;
      auto arrow = joined.find("->");
      if (tokens.size() < 2 || arrow == std::string::npos)
        throw ParseError(lineno, tokens[0].column, "'autedge' expects <eid>-><eid>");
      std::string from = joined.substr(0, arrow), to = joined.substr(arrow + 2);
      if (!is_alnum_id(from) || !is_alnum_id(to))
        throw ParseError(lineno, tokens[1].column, "'autedge' expects alphanumeric edge ids");
      autedge_decls.push_back({from, to, lineno, tokens[1].column});
    } else if (kw == "affine_node") {
      require_ids(1, 1);
      if (affine_decl) throw ParseError(lineno, tokens[0].column, "duplicate 'affine_node' line");
      affine_decl = std::make_pair(tokens[1].text, lineno);
    } else {
      throw ParseError(lineno, tokens[0].column, "unknown keyword '" + kw + "'");
    }
  }

  // Dangling endpoints get reported with their line before the graph is built.
  {
    std::set<std::string> ids;
    for (const auto& [id, ln] : vertex_decls)
      if (!ids.insert(id).second) throw ParseError(ln, 1, "duplicate vertex '" + id + "'");
    std::set<std::string> eids;
    for (const auto& d : edge_decls) {
      if (!eids.insert(d.spec.id).second) throw ParseError(d.line, 1, "duplicate edge '" + d.spec.id + "'");
      if (!ids.count(d.spec.u) || !ids.count(d.spec.v))
        throw ParseError(d.line, 1, "edge '" + d.spec.id + "' has a dangling endpoint");
    }
  }

  Quiver q;
  {
    std::vector<std::string> vs;
    for (auto& [id, ln] : vertex_decls) vs.push_back(id);
    std::vector<Graph::EdgeSpec> es;
    for (auto& d : edge_decls) es.push_back(d.spec);
    q.graph = Graph(std::move(vs), std::move(es));
  }
  const Graph& g = q.graph;

  if (have_aut) {
    std::vector<std::size_t> vperm(g.vertex_count());
    std::iota(vperm.begin(), vperm.end(), std::size_t{0});
    std::vector<bool> used(g.vertex_count(), false);
    for (const auto& cyc : aut_cycles) {
      std::vector<std::size_t> idx;
      for (const auto& [id, col] : cyc) {
        auto v = g.find_vertex(id);
        if (!v) throw ParseError(aut_line, col, "unknown vertex '" + id + "' in aut");
        if (used[*v]) throw ParseError(aut_line, col, "automorphism is not a permutation: '" + id + "' repeated");
        used[*v] = true;
        idx.push_back(*v);
      }
      for (std::size_t k = 0; k < idx.size(); ++k) vperm[idx[k]] = idx[(k + 1) % idx.size()];
    }

    std::map<std::size_t, std::pair<std::size_t, std::size_t>> explicit_edge; // edge -> (target, line)
    for (const auto& d : autedge_decls) {
      auto from = g.find_edge(d.from);
      auto to = g.find_edge(d.to);
      if (!from || !to) throw ParseError(d.line, d.column, "unknown edge in autedge");
      if (explicit_edge.count(*from)) throw ParseError(d.line, d.column, "duplicate autedge for '" + d.from + "'");
      explicit_edge[*from] = {*to, d.line};
    }

    std::vector<std::size_t> hperm(g.half_edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto u = g.out(2 * e), v = g.in(2 * e);
      const auto au = vperm[u], av = vperm[v];
      std::size_t target = 0;
      if (auto it = explicit_edge.find(e); it != explicit_edge.end()) {
        target = it->second.first;
        const auto tu = g.out(2 * target), tv = g.in(2 * target);
        if (!((tu == au && tv == av) || (tu == av && tv == au)))
          throw ParseError(it->second.second, 1,
                           "autedge maps '" + g.edge_id(e) + "' to an edge with the wrong endpoints");
      } else {
        std::vector<std::size_t> candidates;
        for (std::size_t f = 0; f < g.edge_count(); ++f) {
          const auto fu = g.out(2 * f), fv = g.in(2 * f);
          if ((fu == au && fv == av) || (fu == av && fv == au)) candidates.push_back(f);
        }
        if (candidates.empty())
          throw ParseError(aut_line, 1, "automorphism does not map edge '" + g.edge_id(e) + "' to any edge");
        if (candidates.size() > 1)
          throw ParseError(aut_line, 1,
                           "edge action ambiguous for '" + g.edge_id(e) + "'; add 'autedge " + g.edge_id(e) + "-><eid>'");
        target = candidates.front();
      }
      const bool forward = g.out(2 * target) == au;
      hperm[2 * e] = forward ? 2 * target : 2 * target + 1;
      hperm[2 * e + 1] = forward ? 2 * target + 1 : 2 * target;
    }
    try {
      q.automorphism = make_automorphism(g, std::move(vperm), std::move(hperm));
    } catch (const InputError& err) {
      throw ParseError(aut_line, 1, err.what());
    }
  }

  std::vector<std::size_t> seed;
  for (const auto& d : orient_decls) {
    auto e = g.find_edge(d.edge);
    if (!e) throw ParseError(d.line, d.column, "orient refers to unknown edge '" + d.edge + "'");
    const auto u = g.find_vertex(d.u), v = g.find_vertex(d.v);
    const auto h = 2 * *e;
    if (u && v && g.out(h) == *u && g.in(h) == *v)
      seed.push_back(h);
    else if (u && v && g.out(h + 1) == *u && g.in(h + 1) == *v)
      seed.push_back(h + 1);
    else
      throw ParseError(d.line, d.column, "orient endpoints do not match edge '" + d.edge + "'");
  }
  const bool admissible = q.automorphism && validate_admissible(g, *q.automorphism).empty();
  const Automorphism orient_by = admissible ? *q.automorphism : Automorphism::identity(g);
  q.orientation = compatible_orientation(g, orient_by, seed);
  for (const auto& d : orient_decls) {
    // An explicit orient line contradicted by a-closure is an input error.
    const auto e = *g.find_edge(d.edge);
    const auto want = g.out(2 * e) == *g.find_vertex(d.u) ? 2 * e : 2 * e + 1;
    if (!q.orientation.contains(want))
      throw ParseError(d.line, d.column, "orientation of '" + d.edge + "' is not compatible with the automorphism");
  }

  if (affine_decl) {
    auto v = g.find_vertex(affine_decl->first);
    if (!v) throw ParseError(affine_decl->second, 1, "affine_node refers to unknown vertex '" + affine_decl->first + "'");
    q.affine_node = *v;
  }
  return q;
}

Quiver load_quiver(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open quiver file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_quiver(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path, e.line(), e.column(), e.detail());
  }
}

} // namespace foldkit
