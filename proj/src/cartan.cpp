#include "foldkit/cartan.hpp"

#include "foldkit/error.hpp"
#include "foldkit/rational.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace foldkit {

std::optional<std::string> check_axioms(const CartanDatum& c) {
  const auto n = c.rank();
  if (c.form.size() != n) return "form has " + std::to_string(c.form.size()) + " rows for " + std::to_string(n) + " labels";
  for (std::size_t i = 0; i < n; ++i)
    if (c.form[i].size() != n) return "form row " + std::to_string(i) + " has the wrong length";
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = c.form[i][i];
    if (d <= 0 || d % 2 != 0) return "axiom (a) fails at " + c.labels[i] + ": i.i = " + std::to_string(d);
    for (std::size_t j = 0; j < n; ++j) {
      if (c.form[i][j] != c.form[j][i]) return "form is not symmetric at (" + c.labels[i] + "," + c.labels[j] + ")";
      if (i == j) continue;
      const auto x = 2 * c.form[i][j];
      if (x > 0 || x % d != 0)
        return "axiom (b) fails at (" + c.labels[i] + "," + c.labels[j] + "): 2(i.j)/(i.i) = " + std::to_string(x) + "/" +
               std::to_string(d);
    }
  }
  return std::nullopt;
}

CartanDatum make_datum(std::vector<std::string> labels, IntMatrix form) {
  CartanDatum c{std::move(labels), std::move(form)};
  if (auto bad = check_axioms(c)) throw InputError("invalid Cartan datum: " + *bad);
  return c;
}

CartanDatum parse_form(const std::string& text) {
  IntMatrix rows;
  std::stringstream all(text);
  std::string row;
  while (std::getline(all, row, ';')) {
    std::vector<std::int64_t> r;
    std::stringstream rs(row);
    std::string cell;
    while (std::getline(rs, cell, ',')) {
      auto b = cell.find_first_not_of(" \t"), e = cell.find_last_not_of(" \t");
      if (b == std::string::npos) throw InputError("empty entry in form '" + text + "'");
      cell = cell.substr(b, e - b + 1);
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size()) throw InputError("non-integer entry '" + cell + "' in form");
      r.push_back(v);
    }
    rows.push_back(std::move(r));
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rows.size(); ++i) labels.push_back(std::to_string(i + 1));
  return make_datum(std::move(labels), std::move(rows));
}

std::uint64_t datum_hash(const CartanDatum& c) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](unsigned char b) {
    h ^= b;
    h *= 1099511628211ULL;
  };
  auto mix64 = [&](std::uint64_t v) {
    for (int k = 0; k < 8; ++k) mix(static_cast<unsigned char>(v >> (8 * k)));
  };
  mix64(c.rank());
  for (const auto& l : c.labels) {
    for (char ch : l) mix(static_cast<unsigned char>(ch));
    mix(0);
  }
  for (const auto& row : c.form)
    for (auto x : row) mix64(static_cast<std::uint64_t>(x));
  return h;
}

CartanDatum cartan_from_graph(const Graph& g) {
  const auto n = g.vertex_count();
  IntMatrix form(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) form[i][i] = 2;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto u = g.out(2 * e), v = g.in(2 * e);
    form[u][v] -= 1;
    form[v][u] -= 1;
  }
  return make_datum(g.vertices(), std::move(form));
}

CartanDatum fold(const Graph& g, const Automorphism& a) {
  if (auto bad = validate_admissible(g, a); !bad.empty())
    throw InputError("automorphism is not admissible: " + bad.front().axiom + " (" + bad.front().witness + ")");
  const auto orb = orbits(a);
  const auto n = orb.vertex_orbits.size();
  IntMatrix form(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t k = 0; k < n; ++k) form[k][k] = 2 * static_cast<std::int64_t>(orb.vertex_orbits[k].size());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto ou = orb.orbit_of_vertex[g.out(2 * e)], ov = orb.orbit_of_vertex[g.in(2 * e)];
    form[ou][ov] -= 1;
    form[ov][ou] -= 1;
  }
  std::vector<std::string> labels;
  for (const auto& o : orb.vertex_orbits) labels.push_back(orbit_label(g, o));
  auto c = CartanDatum{std::move(labels), std::move(form)};
  if (auto bad = check_axioms(c)) throw InternalError("folded datum violates the Cartan axioms: " + *bad);
  return c;
}

Gcm gcm(const CartanDatum& c) {
  if (auto bad = check_axioms(c)) throw InputError("invalid Cartan datum: " + *bad);
  const auto n = c.rank();
  Gcm out;
  out.a.assign(n, std::vector<std::int64_t>(n, 0));
  out.symmetrizer.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.symmetrizer[i] = c.form[i][i] / 2;
    for (std::size_t j = 0; j < n; ++j) out.a[i][j] = 2 * c.form[i][j] / c.form[i][i];
  }
  return out;
}

std::string to_string(Kind k) {
  switch (k) {
  case Kind::Finite: return "Finite";
  case Kind::Affine: return "Affine";
  case Kind::Indefinite: return "Indefinite";
  }
  return "?";
}

std::string TypeClass::describe() const {
  auto vec = [](const std::vector<std::int64_t>& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + ")";
  };
  std::string s;
  for (std::size_t k = 0; k < components.size(); ++k) {
    if (k) s += " x ";
    s += to_string(components[k].kind);
    if (components[k].kind == Kind::Affine) s += " delta=" + vec(components[k].delta);
  }
  return s;
}

std::vector<std::vector<std::size_t>> components(const CartanDatum& c) {
  const auto n = c.rank();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (c.form[i][j] != 0) parent[find(i)] = find(j);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = find(i);
    if (slot[r] == n) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(i);
  }
  return out;
}

namespace {

// Primitive integer vector with positive entries spanning a one-dimensional
// rational kernel; nullopt when the kernel is not spanned by such a vector.
std::optional<std::vector<std::int64_t>> primitive_positive(const std::vector<Rational>& v) {
  mpz_class l = 1;
  for (const auto& x : v) l = lcm(l, mpz_class(x.get_den()));
  std::vector<mpz_class> ints;
  for (const auto& x : v) ints.push_back(mpz_class(x * l));
  mpz_class g = 0;
  for (const auto& x : ints) g = gcd(g, x);
  if (g == 0) return std::nullopt;
  if (ints.front() < 0) g = -g;
  std::vector<std::int64_t> out;
  for (auto& x : ints) {
    mpz_class y = x / g;
    if (y <= 0 || !y.fits_slong_p()) return std::nullopt;
    out.push_back(y.get_si());
  }
  return out;
}

ComponentClass classify_component(const CartanDatum& c, const std::vector<std::size_t>& idx) {
  ComponentClass cc;
  cc.indices = idx;
  const auto n = idx.size();
  QMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) m(r, k) = Rational(static_cast<long>(c.form[idx[r]][idx[k]]));

  // Leading principal minors via the pivots of an elimination without swaps.
  std::vector<Rational> pivots;
  QMatrix w = m;
  bool clean = true;
  for (std::size_t col = 0; col < n; ++col) {
    const Rational p = w(col, col);
    pivots.push_back(p);
    if (p == 0) {
      clean = col + 1 == n;
      break;
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      if (w(r, col) == 0) continue;
      Rational f = w(r, col) / p;
      for (std::size_t k = col; k < n; ++k) w(r, k) -= f * w(col, k);
    }
  }
  const bool leading_positive =
      std::all_of(pivots.begin(), pivots.begin() + static_cast<std::ptrdiff_t>(std::min(pivots.size(), n - 1)),
                  [](const Rational& p) { return p > 0; });
  if (pivots.size() == n && clean && leading_positive && pivots.back() > 0) {
    cc.kind = Kind::Finite;
    return cc;
  }
  // Every proper principal submatrix of an affine form is positive definite,
  // so leading minors of order < n are positive and the determinant vanishes.
  if (pivots.size() == n && clean && leading_positive && pivots.back() == 0) {
    auto ker = kernel(m);
    if (ker.size() == 1) {
      if (auto d = primitive_positive(ker.front())) {
        cc.kind = Kind::Affine;
        cc.delta = *d;
        return cc;
      }
    }
  }
  cc.kind = Kind::Indefinite;
  return cc;
}

} // namespace

TypeClass classify(const CartanDatum& c) {
  if (auto bad = check_axioms(c)) throw InputError("invalid Cartan datum: " + *bad);
  TypeClass t;
  for (const auto& comp : components(c)) t.components.push_back(classify_component(c, comp));
  t.irreducible = t.components.size() == 1;
  bool any_indef = false, any_affine = false;
  for (const auto& cc : t.components) {
    any_indef |= cc.kind == Kind::Indefinite;
    any_affine |= cc.kind == Kind::Affine;
  }
  t.kind = any_indef ? Kind::Indefinite : (any_affine ? Kind::Affine : Kind::Finite);
  if (t.irreducible && t.kind == Kind::Affine) t.delta = t.components.front().delta;
  return t;
}

CartanDatum restrict(const CartanDatum& c, const std::vector<std::size_t>& indices) {
  CartanDatum r;
  for (auto i : indices) r.labels.push_back(c.labels.at(i));
  r.form.assign(indices.size(), std::vector<std::int64_t>(indices.size()));
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = 0; b < indices.size(); ++b) r.form[a][b] = c.form[indices[a]][indices[b]];
  return r;
}

std::optional<std::vector<std::int64_t>> stable_subset(const std::vector<std::int64_t>& nu, const Automorphism& a) {
  if (nu.size() != a.vertex_perm.size()) throw InputError("vector length does not match the vertex count");
  for (std::size_t i = 0; i < nu.size(); ++i)
    if (nu[i] != nu[a.vertex_perm[i]]) return std::nullopt;
  const auto orb = orbits(a);
  std::vector<std::int64_t> out;
  for (const auto& o : orb.vertex_orbits) out.push_back(nu[o.front()]);
  return out;
}

std::vector<std::int64_t> unfold_vector(const std::vector<std::int64_t>& nu_orbits, const Automorphism& a) {
  const auto orb = orbits(a);
  if (nu_orbits.size() != orb.vertex_orbits.size()) throw InputError("vector length does not match the orbit count");
  std::vector<std::int64_t> out(a.vertex_perm.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = nu_orbits[orb.orbit_of_vertex[i]];
  return out;
}

} // namespace foldkit
