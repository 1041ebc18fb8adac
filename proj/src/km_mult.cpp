#include "foldkit/km_mult.hpp"

#include "foldkit/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>

namespace foldkit {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 x, const char* what) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw InternalError(std::string("64-bit overflow in ") + what);
  return static_cast<std::int64_t>(x);
}

// Calls f on every beta with 0 <= beta <= nu componentwise, beta != 0.
void for_each_subvector(const RootVector& nu, const std::function<void(const RootVector&)>& f) {
  RootVector beta(nu.size(), 0);
  for (;;) {
    std::size_t j = 0;
    while (j < nu.size() && beta[j] == nu[j]) {
      beta[j] = 0;
      ++j;
    }
    if (j == nu.size()) return;
    ++beta[j];
    f(beta);
  }
}

bool support_connected(const CartanDatum& c, const RootVector& beta) {
  std::vector<std::size_t> supp;
  for (std::size_t j = 0; j < beta.size(); ++j)
    if (beta[j] != 0) supp.push_back(j);
  if (supp.empty()) return false;
  std::vector<bool> seen(beta.size(), false);
  std::vector<std::size_t> stack{supp.front()};
  seen[supp.front()] = true;
  std::size_t reached = 0;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    ++reached;
    for (auto j : supp)
      if (!seen[j] && c.form[i][j] != 0) {
        seen[j] = true;
        stack.push_back(j);
      }
  }
  return reached == supp.size();
}

std::int64_t coroot_pair(const CartanDatum& c, std::size_t i, const RootVector& beta) {
  // <i, beta> = sum_j 2 (i.j)/(i.i) beta_j
  i128 s = 0;
  for (std::size_t j = 0; j < beta.size(); ++j) s += static_cast<i128>(2 * c.form[i][j] / c.form[i][i]) * beta[j];
  return narrow(s, "coroot pairing");
}

} // namespace

std::int64_t MultTable::at(const RootVector& nu) const {
  if (!window.contains(nu)) throw InputError("weight (" + format_vector(nu) + ") lies outside the computed window");
  auto it = entries.find(nu);
  return it == entries.end() ? 0 : it->second;
}

std::int64_t MultTable::total() const {
  i128 t = 0;
  for (const auto& [nu, m] : entries) t += m;
  return narrow(t, "table total");
}

// ---------------------------------------------------------------------------
// Pairings

std::int64_t rho_pair(const CartanDatum& c, const RootVector& nu) {
  i128 s = 0;
  for (std::size_t j = 0; j < nu.size(); ++j) s += static_cast<i128>(c.form[j][j] / 2) * nu[j];
  return narrow(s, "rho pairing");
}

std::int64_t weight_pair(const CartanDatum& c, const HighestWeight& lambda, const RootVector& nu) {
  i128 s = 0;
  for (std::size_t j = 0; j < nu.size(); ++j) s += static_cast<i128>(c.form[j][j] / 2) * lambda[j] * nu[j];
  return narrow(s, "weight pairing");
}

std::vector<std::int64_t> pairings_of(const CartanDatum& c, const HighestWeight& lambda, const RootVector& nu) {
  std::vector<std::int64_t> p(c.rank());
  for (std::size_t i = 0; i < c.rank(); ++i) p[i] = lambda[i] - coroot_pair(c, i, nu);
  return p;
}

// ---------------------------------------------------------------------------
// Peterson recurrence

RootSystem::RootSystem(CartanDatum c) : datum_(std::move(c)) {
  if (auto bad = check_axioms(datum_)) throw InputError("invalid Cartan datum: " + *bad);
}

std::int64_t RootSystem::pair(const RootVector& x, const RootVector& y) const {
  i128 s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) s += static_cast<i128>(x[i]) * datum_.form[i][j] * y[j];
  }
  return narrow(s, "form pairing");
}

const Rational& RootSystem::peterson_c(const RootVector& beta) {
  if (auto it = c_.find(beta); it != c_.end()) return it->second;
  // c_beta = sum_{k >= 1, beta/k integral} mult(beta/k) / k
  Rational value = 0;
  std::int64_t g = 0;
  for (auto x : beta) g = std::gcd(g, x);
  for (std::int64_t k = 1; k <= g; ++k) {
    if (g % k) continue;
    RootVector part = beta;
    for (auto& x : part) x /= k;
    value += Rational(static_cast<long>(mult(part)), static_cast<long>(k));
  }
  return c_.emplace(beta, value).first->second;
}

std::int64_t RootSystem::mult(const RootVector& beta) {
  if (auto it = mult_.find(beta); it != mult_.end()) return it->second;
  if (beta.size() != datum_.rank()) throw InputError("root vector has the wrong length");
  for (auto x : beta)
    if (x < 0) throw InputError("root vector has a negative coordinate");
  const auto ht = height(beta);
  std::int64_t result = 0;
  if (ht == 0) {
    result = 0;
  } else if (ht == 1) {
    result = 1;
  } else if (!support_connected(datum_, beta)) {
    result = 0;
  } else {
    // (beta, beta - 2 rho) c_beta = sum_{beta' + beta'' = beta} (beta', beta'') c_beta' c_beta''
    Rational rhs = 0;
    for_each_subvector(beta, [&](const RootVector& b1) {
      if (b1 == beta) return;
      RootVector b2 = beta;
      for (std::size_t j = 0; j < b2.size(); ++j) b2[j] -= b1[j];
      const auto p = pair(b1, b2);
      if (p == 0) return;
      const Rational& c1 = peterson_c(b1);
      if (c1 == 0) return;
      const Rational& c2 = peterson_c(b2);
      if (c2 == 0) return;
      rhs += Rational(static_cast<long>(p)) * c1 * c2;
    });
    const auto coeff = pair(beta, beta) - 2 * rho_pair(datum_, beta);
    // Contribution of proper divisors beta/k, k >= 2.
    Rational divisors = 0;
    std::int64_t g = 0;
    for (auto x : beta) g = std::gcd(g, x);
    for (std::int64_t k = 2; k <= g; ++k) {
      if (g % k) continue;
      RootVector part = beta;
      for (auto& x : part) x /= k;
      divisors += Rational(static_cast<long>(mult(part)), static_cast<long>(k));
    }
    Rational m;
    if (coeff == 0) {
      if (rhs != 0) throw InternalError("Peterson recurrence: zero coefficient with nonzero sum at (" + format_vector(beta) + ")");
      m = 0;
    } else {
      m = rhs / Rational(static_cast<long>(coeff)) - divisors;
    }
    m.canonicalize();
    if (m.get_den() != 1 || m < 0 || !m.get_num().fits_slong_p())
      throw InternalError("Peterson recurrence produced " + to_string(m) + " at (" + format_vector(beta) + ")");
    result = m.get_num().get_si();
  }
  mult_.emplace(beta, result);
  return result;
}

std::shared_ptr<RootSystem> root_system(const CartanDatum& c) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, IntMatrix>, std::shared_ptr<RootSystem>> systems;
  std::lock_guard lock(mu);
  auto key = std::make_pair(datum_hash(c), c.form);
  auto it = systems.find(key);
  if (it == systems.end()) it = systems.emplace(key, std::make_shared<RootSystem>(c)).first;
  return it->second;
}

MultTable positive_roots(const CartanDatum& c, std::int64_t depth) {
  if (depth < 1) throw InputError("positive_roots needs depth >= 1");
  auto rs = root_system(c);
  MultTable t;
  t.window = Window::by_height(depth);
  // Roots have connected support, so growing by simple roots from the simple
  // roots reaches every root inside the height window.
  std::set<RootVector> layer;
  for (std::size_t j = 0; j < c.rank(); ++j) {
    RootVector e(c.rank(), 0);
    e[j] = 1;
    layer.insert(e);
  }
  std::set<RootVector> seen = layer;
  for (std::int64_t h = 1; h <= depth && !layer.empty(); ++h) {
    std::set<RootVector> next;
    for (const auto& beta : layer) {
      const auto m = rs->mult(beta);
      if (m == 0) continue;
      t.entries.emplace(beta, m);
      if (h == depth) continue;
      for (std::size_t j = 0; j < c.rank(); ++j) {
        RootVector b = beta;
        ++b[j];
        if (seen.insert(b).second) next.insert(b);
      }
    }
    layer = std::move(next);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Freudenthal

namespace {

MultTable freudenthal_uncached(const CartanDatum& c, const HighestWeight& lambda, const Window& window) {
  auto rs = root_system(c);
  const auto n = c.rank();
  MultTable t;
  t.window = window;
  RootVector zero(n, 0);
  if (!window.contains(zero)) return t;
  t.entries.emplace(zero, 1);

  constexpr std::size_t kMaxEntries = 20000000;
  std::set<RootVector> layer{zero};
  while (!layer.empty()) {
    std::set<RootVector> candidates;
    for (const auto& nu : layer)
      for (std::size_t j = 0; j < n; ++j) {
        RootVector next = nu;
        ++next[j];
        if (window.contains(next)) candidates.insert(next);
      }
    std::set<RootVector> support;
    for (const auto& nu : candidates) {
      // 2 sum_{beta>0} mult(beta) sum_{k>=1} m(nu - k beta) (lambda - nu + k beta, beta)
      i128 numer = 0;
      for_each_subvector(nu, [&](const RootVector& beta) {
        const auto mb = rs->mult(beta);
        if (mb == 0) return;
        const auto bb = rs->pair(beta, beta);
        const auto lam_beta = weight_pair(c, lambda, beta);
        const auto nu_beta = rs->pair(nu, beta);
        RootVector rest = nu;
        for (std::int64_t k = 1;; ++k) {
          bool ok = true;
          for (std::size_t j = 0; j < n; ++j) {
            rest[j] -= beta[j];
            ok &= rest[j] >= 0;
          }
          if (!ok) break;
          auto it = t.entries.find(rest);
          if (it == t.entries.end()) continue;
          const i128 scalar = static_cast<i128>(lam_beta) - nu_beta + static_cast<i128>(k) * bb;
          numer += static_cast<i128>(mb) * it->second * scalar;
        }
      });
      numer *= 2;
      const i128 denom = 2 * (static_cast<i128>(weight_pair(c, lambda, nu)) + rho_pair(c, nu)) - rs->pair(nu, nu);
      std::int64_t m = 0;
      if (denom == 0) {
        if (numer != 0) throw InternalError("Freudenthal: zero denominator with nonzero numerator at (" + format_vector(nu) + ")");
      } else {
        if (numer % denom != 0)
          throw InternalError("Freudenthal: non-integral multiplicity at (" + format_vector(nu) + ")");
        m = narrow(numer / denom, "Freudenthal multiplicity");
        if (m < 0) throw InternalError("Freudenthal: negative multiplicity at (" + format_vector(nu) + ")");
      }
      if (m > 0) {
        t.entries.emplace(nu, m);
        support.insert(nu);
      }
    }
    if (t.entries.size() > kMaxEntries) throw InputError("Freudenthal window too large; lower the depth");
    layer = std::move(support);
  }
  return t;
}

} // namespace

MultTable freudenthal(const CartanDatum& c, const HighestWeight& lambda, const Window& window) {
  if (auto bad = check_axioms(c)) throw InputError("invalid Cartan datum: " + *bad);
  if (lambda.size() != c.rank()) throw InputError("highest weight has " + std::to_string(lambda.size()) + " entries, expected " + std::to_string(c.rank()));
  for (auto x : lambda)
    if (x < 0) throw InputError("highest weight is not dominant");
  if (window.max_height && *window.max_height < 0) throw InputError("depth must be nonnegative");

  static std::mutex mu;
  static std::map<std::tuple<std::uint64_t, IntMatrix, HighestWeight, std::string>, MultTable> memo;
  auto key = std::make_tuple(datum_hash(c), c.form, lambda, window.key());
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  auto table = freudenthal_uncached(c, lambda, window);
  std::lock_guard lock(mu);
  return memo.emplace(key, std::move(table)).first->second;
}

// ---------------------------------------------------------------------------
// Graded dimensions of U^-

std::int64_t graded_dim_uminus(const CartanDatum& c, const RootVector& nu) {
  if (nu.size() != c.rank()) throw InputError("root vector has the wrong length");
  for (auto x : nu)
    if (x < 0) throw InputError("root vector has a negative coordinate");
  auto rs = root_system(c);
  const auto n = nu.size();
  // Dense box [0, nu] in mixed radix.
  std::vector<std::size_t> stride(n, 1);
  std::size_t size = 1;
  for (std::size_t j = 0; j < n; ++j) {
    stride[j] = size;
    size *= static_cast<std::size_t>(nu[j] + 1);
  }
  std::vector<i128> poly(size, 0);
  poly[0] = 1;
  auto index_of = [&](const RootVector& v) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < n; ++j) idx += stride[j] * static_cast<std::size_t>(v[j]);
    return idx;
  };
  std::vector<RootVector> points;
  points.reserve(size);
  {
    RootVector v(n, 0);
    points.push_back(v);
    for_each_subvector(nu, [&](const RootVector& b) { points.push_back(b); });
  }
  // points are generated in mixed-radix order, matching index order.
  for_each_subvector(nu, [&](const RootVector& beta) {
    const auto m = rs->mult(beta);
    if (m == 0) return;
    const auto shift = index_of(beta);
    for (std::int64_t rep = 0; rep < m; ++rep) {
      // multiply by 1/(1 - e^{-beta}): p[x] += p[x - beta] in increasing order
      for (std::size_t idx = 0; idx < size; ++idx) {
        const auto& x = points[idx];
        bool ok = true;
        for (std::size_t j = 0; j < n; ++j) ok &= x[j] >= beta[j];
        if (ok) poly[idx] += poly[idx - shift];
      }
    }
  });
  return narrow(poly[size - 1], "graded dimension");
}

MultTable graded_dims_uminus(const CartanDatum& c, std::int64_t depth) {
  if (depth < 0) throw InputError("depth must be nonnegative");
  MultTable t;
  t.window = Window::by_height(depth);
  const auto n = c.rank();
  std::set<RootVector> layer{RootVector(n, 0)};
  t.entries.emplace(RootVector(n, 0), 1);
  for (std::int64_t h = 1; h <= depth; ++h) {
    std::set<RootVector> next;
    for (const auto& nu : layer)
      for (std::size_t j = 0; j < n; ++j) {
        RootVector b = nu;
        ++b[j];
        next.insert(b);
      }
    for (const auto& nu : next)
      if (auto d = graded_dim_uminus(c, nu); d > 0) t.entries.emplace(nu, d);
    layer = std::move(next);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Finite type: roots and Weyl dimension

std::vector<RootVector> finite_positive_roots(const CartanDatum& c, std::size_t cap) {
  if (classify(c).kind != Kind::Finite) throw InputError("datum is not of finite type");
  const auto n = c.rank();
  std::set<RootVector> seen;
  std::deque<RootVector> queue;
  for (std::size_t j = 0; j < n; ++j) {
    RootVector e(n, 0);
    e[j] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    auto beta = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < n; ++j) {
      const auto p = coroot_pair(c, j, beta);
      if (p == 0) continue;
      RootVector r = beta;
      r[j] -= p;
      bool positive = true, nonzero = false;
      for (auto x : r) {
        positive &= x >= 0;
        nonzero |= x != 0;
      }
      if (!positive || !nonzero) continue;
      if (seen.insert(r).second) {
        if (seen.size() > cap) throw InputError("root enumeration exceeded its cap");
        queue.push_back(r);
      }
    }
  }
  std::vector<RootVector> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), HeightLexLess{});
  return out;
}

mpz_class weyl_dim(const CartanDatum& c, const HighestWeight& lambda) {
  if (lambda.size() != c.rank()) throw InputError("highest weight has the wrong length");
  for (auto x : lambda)
    if (x < 0) throw InputError("highest weight is not dominant");
  Rational prod = 1;
  for (const auto& beta : finite_positive_roots(c)) {
    const auto rb = rho_pair(c, beta);
    prod *= Rational(static_cast<long>(weight_pair(c, lambda, beta) + rb), static_cast<long>(rb));
  }
  prod.canonicalize();
  if (prod.get_den() != 1) throw InternalError("Weyl dimension is not an integer");
  return prod.get_num();
}

std::map<RootVector, std::int64_t, HeightLexLess> weyl_denominator_partial(const CartanDatum& c,
                                                                          std::int64_t max_length, std::size_t cap) {
  const auto n = c.rank();
  std::map<RootVector, std::int64_t, HeightLexLess> out;
  // Elements are tracked by rho - w rho, which determines w because rho is regular.
  std::set<RootVector> layer{RootVector(n, 0)};
  out.emplace(RootVector(n, 0), 1);
  std::int64_t sign = 1;
  for (std::int64_t len = 1; len <= max_length; ++len) {
    sign = -sign;
    std::set<RootVector> next;
    for (const auto& nu : layer) {
      // <j, w rho> = 1 - <j, nu>
      for (std::size_t j = 0; j < n; ++j) {
        const auto p = 1 - coroot_pair(c, j, nu);
        if (p <= 0) continue;
        RootVector r = nu;
        r[j] += p;
        next.insert(r);
      }
    }
    for (const auto& nu : next) out.emplace(nu, sign);
    if (out.size() > cap) throw InputError("Weyl group enumeration exceeded its cap");
    layer = std::move(next);
  }
  return out;
}

} // namespace foldkit
