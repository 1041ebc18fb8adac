#include "foldkit/char_series.hpp"

#include "foldkit/error.hpp"

#include <algorithm>
#include <numeric>

namespace foldkit {

namespace {

std::vector<std::int64_t> primitive_positive(const std::vector<Rational>& v) {
  mpz_class den = 1;
  for (const auto& x : v) den = lcm(den, x.get_den());
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& x : v) {
    mpz_class n = x.get_num() * (den / x.get_den());
    g = gcd(g, n);
    ints.push_back(n);
  }
  if (g == 0) throw InternalError("zero kernel vector");
  std::vector<std::int64_t> out;
  for (auto& n : ints) {
    mpz_class q = n / g;
    if (!q.fits_slong_p()) throw InternalError("kernel vector entry too large");
    out.push_back(q.get_si());
  }
  if (out[0] < 0)
    for (auto& x : out) x = -x;
  return out;
}

std::vector<std::size_t> all_but(std::size_t rank, std::size_t skip) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < rank; ++j)
    if (j != skip) out.push_back(j);
  return out;
}

bool deletion_is_finite(const CartanDatum& c, std::size_t node) {
  return classify(restrict(c, all_but(c.rank(), node))).kind == Kind::Finite;
}

void require_dominant(const AffineData& ad, const HighestWeight& w) {
  if (w.size() != ad.datum.rank())
    throw InputError("weight has " + std::to_string(w.size()) + " entries, expected " + std::to_string(ad.datum.rank()));
  for (auto x : w)
    if (x < 0) throw InputError("weight is not dominant");
}

Rational shift_for(const AffineData& ad, const HighestWeight& w) { return ad.twisted ? Rational(0) : m_w(ad, w); }

MultProvider or_default(const MultProvider& p) {
  if (p) return p;
  return [](const CartanDatum& c, const HighestWeight& l, const Window& w) { return freudenthal(c, l, w); };
}

CrystalProvider or_default(const CrystalProvider& p) {
  if (p) return p;
  return [](const CartanDatum& c, const HighestWeight& l, const Window& w) { return generate(c, l, w); };
}

} // namespace

AffineData affine_data(const CartanDatum& c, std::optional<std::size_t> node) {
  const auto tc = classify(c);
  if (tc.kind != Kind::Affine || !tc.irreducible)
    throw InputError("datum is not irreducible affine (" + tc.describe() + ")");
  AffineData ad;
  ad.datum = c;
  ad.delta = tc.delta;
  const auto a = gcm(c).a;
  const auto n = c.rank();
  QMatrix at(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) at(i, j) = Rational(static_cast<long>(a[j][i]));
  const auto ker = kernel(at);
  if (ker.size() != 1) throw InternalError("transposed affine GCM has a kernel of dimension " + std::to_string(ker.size()));
  ad.dual_labels = primitive_positive(ker[0]);
  ad.dual_coxeter = std::accumulate(ad.dual_labels.begin(), ad.dual_labels.end(), std::int64_t{0});

  if (node) {
    if (*node >= n) throw InputError("affine node out of range");
    if (!deletion_is_finite(c, *node)) throw InputError("deleting the affine node does not leave a finite-type datum");
    ad.node = *node;
  } else {
    bool found = false;
    for (std::size_t j = 0; j < n && !found; ++j)
      if (ad.delta[j] == 1 && deletion_is_finite(c, j)) {
        ad.node = j;
        found = true;
      }
    if (!found) throw InputError("no node with null-root coefficient 1 leaves a finite-type datum");
  }
  const auto k = ad.node;
  bool longest = true;
  for (std::size_t j = 0; j < n; ++j) {
    // a_j^vee / a_j > a_k^vee / a_k means alpha_j is longer than alpha_k.
    if (ad.dual_labels[j] * ad.delta[k] > ad.dual_labels[k] * ad.delta[j]) longest = false;
  }
  ad.twisted = !(ad.delta[k] == 1 && ad.dual_labels[k] == 1 && longest);
  return ad;
}

std::int64_t level(const AffineData& ad, const HighestWeight& w) {
  require_dominant(ad, w);
  std::int64_t k = 0;
  for (std::size_t j = 0; j < w.size(); ++j) k += ad.dual_labels[j] * w[j];
  return k;
}

Rational m_w(const AffineData& ad, const HighestWeight& w) {
  if (ad.twisted) throw InputError("the conformal shift is only defined here for untwisted affine data");
  const auto k = level(ad, w);
  const auto a = gcm(ad.datum).a;
  const auto fin = all_but(ad.datum.rank(), ad.node);
  const auto m = fin.size();
  std::vector<Rational> d(m);
  for (std::size_t r = 0; r < m; ++r) {
    d[r] = Rational(static_cast<long>(ad.dual_labels[fin[r]]), static_cast<long>(ad.delta[fin[r]]));
    d[r].canonicalize();
  }
  // W' = sum_r c_r alpha_r with (W', alpha_s) = w_s d_s.
  QMatrix b(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s) b(r, s) = d[r] * Rational(static_cast<long>(a[fin[r]][fin[s]]));
  QMatrix rhs(m, 1);
  for (std::size_t s = 0; s < m; ++s) rhs(s, 0) = Rational(static_cast<long>(w[fin[s]])) * d[s];
  const auto coeff = inverse(b) * rhs;
  Rational casimir = 0;
  for (std::size_t r = 0; r < m; ++r) casimir += coeff(r, 0) * Rational(static_cast<long>(w[fin[r]] + 2)) * d[r];

  const auto roots = finite_positive_roots(restrict(ad.datum, fin));
  const Rational dim_g(static_cast<long>(m + 2 * roots.size()));
  const Rational kh(static_cast<long>(k + ad.dual_coxeter));
  Rational out = casimir / (2 * kh) - Rational(static_cast<long>(k)) * dim_g / (24 * kh);
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------------------
// Series

std::int64_t QSeries::coefficient(const Rational& e) const {
  auto it = terms.find(e);
  return it == terms.end() ? 0 : it->second;
}

std::string QSeries::tsv() const {
  std::string s;
  for (const auto& [e, c] : terms) s += to_string(e) + "\t" + std::to_string(c) + "\n";
  return s;
}

std::string QSeries::latex() const {
  std::string s;
  for (const auto& [e, c] : terms) {
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    const auto mag = c < 0 ? -c : c;
    if (e == 0) {
      s += std::to_string(mag);
      continue;
    }
    if (mag != 1) s += std::to_string(mag) + " ";
    s += e == 1 ? std::string("q") : "q^{" + to_string(e) + "}";
  }
  if (s.empty()) s = "0";
  return s + " + \\cdots\n";
}

Window layer_window(std::size_t rank, const std::vector<std::size_t>& indices, std::int64_t depth) {
  if (depth < 0) throw InputError("depth must be nonnegative");
  Window w;
  w.caps.assign(rank, std::nullopt);
  for (auto j : indices) w.caps.at(j) = depth;
  return w;
}

QSeries normalized_character(const AffineData& ad, const HighestWeight& w, std::int64_t depth, const MultProvider& mult) {
  require_dominant(ad, w);
  const auto shift = shift_for(ad, w);
  const auto table = or_default(mult)(ad.datum, w, layer_window(ad.datum.rank(), {ad.node}, depth));
  QSeries s;
  s.bound = shift + Rational(static_cast<long>(depth));
  for (const auto& [nu, m] : table.entries) s.terms[shift + Rational(static_cast<long>(nu[ad.node]))] += m;
  return s;
}

AffineData folded_affine(const Quiver& q) {
  const auto a = q.automorphism_or_identity();
  const auto datum = fold(q.graph, a);
  std::optional<std::size_t> node;
  if (q.affine_node) node = orbits(a).orbit_of_vertex[*q.affine_node];
  return affine_data(datum, node);
}

ChAResult ch_a(const Quiver& q, const HighestWeight& w, std::int64_t depth, bool crystal_check, const MultProvider& mult,
               const CrystalProvider& crystal) {
  if (depth < 0) throw InputError("depth must be nonnegative");
  const auto& g = q.graph;
  if (w.size() != g.vertex_count())
    throw InputError("W has " + std::to_string(w.size()) + " entries, expected " + std::to_string(g.vertex_count()));
  for (auto x : w)
    if (x < 0) throw InputError("W is not dominant");
  const auto a = q.automorphism_or_identity();
  const auto ad = folded_affine(q);
  ChAResult out;
  out.twisted = ad.twisted;
  const auto folded_w = stable_subset(w, a);
  if (!folded_w) {
    out.series.bound = Rational(static_cast<long>(depth));
    return out;
  }
  const auto shift = shift_for(ad, *folded_w);
  out.series.bound = shift + Rational(static_cast<long>(depth));
  const auto table = or_default(mult)(ad.datum, *folded_w, layer_window(ad.datum.rank(), {ad.node}, depth));

  if (!crystal_check) {
    for (const auto& [nu, m] : table.entries) out.series.terms[shift + Rational(static_cast<long>(nu[ad.node]))] += m;
    return out;
  }

  const auto orb = orbits(a);
  const auto c = cartan_from_graph(g);
  const auto bw = or_default(crystal)(c, w, layer_window(g.vertex_count(), orb.vertex_orbits[ad.node], depth));
  const auto sigma = aut_action(bw, a.vertex_perm);
  const auto fixed = fixed_census_table(bw, sigma);
  out.crystal_nodes = bw.size();
  for (const auto& [v, m] : fixed) {
    const auto folded_v = stable_subset(v, a);
    if (!folded_v) throw InternalError("fixed crystal node at a weight that is not a-stable");
    out.series.terms[shift + Rational(static_cast<long>((*folded_v)[ad.node]))] += m;
    if (!out.crystal_mismatch && table.at(*folded_v) != m)
      out.crystal_mismatch = "V=(" + format_vector(v) + "): " + std::to_string(m) + " fixed crystal nodes, folded Freudenthal " +
                             std::to_string(table.at(*folded_v));
  }
  for (const auto& [nu, m] : table.entries) {
    const auto v = unfold_vector(nu, a);
    auto it = fixed.find(v);
    if (!out.crystal_mismatch && (it == fixed.end() || it->second != m))
      out.crystal_mismatch = "V=(" + format_vector(v) + "): " + std::to_string(it == fixed.end() ? 0 : it->second) +
                             " fixed crystal nodes, folded Freudenthal " + std::to_string(m);
  }
  return out;
}

SeriesComparison compare_series(const QSeries& a, const QSeries& b) {
  SeriesComparison r;
  const auto bound = std::min(a.bound, b.bound);
  std::map<Rational, std::pair<std::int64_t, std::int64_t>> both;
  for (const auto& [e, c] : a.terms)
    if (e <= bound) both[e].first = c;
  for (const auto& [e, c] : b.terms)
    if (e <= bound) both[e].second = c;
  for (const auto& [e, cc] : both)
    if (cc.first != cc.second) {
      r.equal = false;
      r.first_mismatch = e;
      r.left = cc.first;
      r.right = cc.second;
      break;
    }
  return r;
}

std::string VerifyReport::text() const {
  std::string s;
  if (lhs.crystal_mismatch) {
    s += "mismatch in dim L^a: " + *lhs.crystal_mismatch + "\n";
  } else if (!comparison.equal) {
    s += "mismatch at exponent " + to_string(*comparison.first_mismatch) + ": Ch^a " + std::to_string(comparison.left) +
         ", normalized character " + std::to_string(comparison.right) + "\n";
  } else {
    s += "verified\n";
  }
  if (lhs.twisted) s += "# twisted affine datum: exponents are unshifted and the normalization is unverified\n";
  if (lhs.crystal_nodes) s += "# crystal nodes\t" + std::to_string(*lhs.crystal_nodes) + "\n";
  s += "exponent\tch_a\tcharacter\n";
  std::map<Rational, std::pair<std::int64_t, std::int64_t>> both;
  for (const auto& [e, c] : lhs.series.terms) both[e].first = c;
  for (const auto& [e, c] : rhs.terms) both[e].second = c;
  for (const auto& [e, cc] : both)
    s += to_string(e) + "\t" + std::to_string(cc.first) + "\t" + std::to_string(cc.second) + "\n";
  return s;
}

VerifyReport verify_character(const Quiver& q, const HighestWeight& w, std::int64_t depth, bool crystal_check,
                           std::optional<Fault> fault, const MultProvider& mult, const CrystalProvider& crystal) {
  const auto a = q.automorphism_or_identity();
  if (w.size() != q.graph.vertex_count()) throw InputError("W has the wrong number of entries");
  const auto folded_w = stable_subset(w, a);
  if (!folded_w) throw InputError("W is not stable under the automorphism");
  VerifyReport r;
  r.lhs = ch_a(q, w, depth, crystal_check, mult, crystal);
  const auto ad = folded_affine(q);
  r.rhs = normalized_character(ad, *folded_w, depth, mult);
  if (fault) {
    const Rational e = shift_for(ad, *folded_w) + Rational(static_cast<long>(fault->layer));
    auto& c = r.lhs.series.terms[e];
    c += fault->delta;
    if (c == 0) r.lhs.series.terms.erase(e);
  }
  r.comparison = compare_series(r.lhs.series, r.rhs);
  return r;
}

} // namespace foldkit
