#pragma once

#include "foldkit/cartan.hpp"
#include "foldkit/rational.hpp"
#include "foldkit/weights.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace foldkit {

/// Nonzero multiplicities over a window. Points of the window that are not
/// listed have multiplicity zero.
struct MultTable {
  Window window;
  std::map<RootVector, std::int64_t, HeightLexLess> entries;

  /// Multiplicity at nu; throws InputError when nu lies outside the window.
  std::int64_t at(const RootVector& nu) const;
  std::int64_t total() const;

  friend bool operator==(const MultTable&, const MultTable&) = default;
};

/// Root multiplicities of the Kac-Moody algebra of a datum, computed lazily by
/// the Peterson recurrence and memoized. Uses only the form and
/// (rho, alpha_j) = (j.j)/2.
class RootSystem {
public:
  explicit RootSystem(CartanDatum c);

  const CartanDatum& datum() const noexcept { return datum_; }
  std::int64_t mult(const RootVector& beta);

  /// (x, y) under the datum's form.
  std::int64_t pair(const RootVector& x, const RootVector& y) const;

private:
  const Rational& peterson_c(const RootVector& beta);

  CartanDatum datum_;
  std::map<RootVector, Rational> c_;
  std::map<RootVector, std::int64_t> mult_;
};

/// Shared, process-wide root system for a datum (keyed by its hash).
std::shared_ptr<RootSystem> root_system(const CartanDatum& c);

/// Multiplicities of all positive roots with height <= depth.
MultTable positive_roots(const CartanDatum& c, std::int64_t depth);

/// dim L(nu, lambda) for every nu in the window, by Freudenthal's recursion.
/// The window must be downward closed and meet the weight support in a
/// finite set. Results are memoized per (datum, lambda, window).
MultTable freudenthal(const CartanDatum& c, const HighestWeight& lambda, const Window& window);

inline MultTable freudenthal(const CartanDatum& c, const HighestWeight& lambda, std::int64_t depth) {
  return freudenthal(c, lambda, Window::by_height(depth));
}

/// Coefficient of e^{-nu} in prod_{beta>0} (1 - e^{-beta})^{-mult beta}.
std::int64_t graded_dim_uminus(const CartanDatum& c, const RootVector& nu);

/// graded_dim_uminus for every nu with 0 < height <= depth.
MultTable graded_dims_uminus(const CartanDatum& c, std::int64_t depth);

/// Positive roots of a finite-type datum by closure of the simple roots under
/// simple reflections. Throws InputError when the datum is not finite or the
/// closure exceeds `cap` roots.
std::vector<RootVector> finite_positive_roots(const CartanDatum& c, std::size_t cap = 1000000);

/// Weyl dimension formula for a finite-type datum.
mpz_class weyl_dim(const CartanDatum& c, const HighestWeight& lambda);

/// sum over Weyl group elements w with length <= max_length of
/// (-1)^{l(w)} e^{w rho - rho}, keyed by rho - w rho. Capped at `cap` elements.
std::map<RootVector, std::int64_t, HeightLexLess> weyl_denominator_partial(const CartanDatum& c,
                                                                          std::int64_t max_length,
                                                                          std::size_t cap = 1000000);

/// (rho, nu) and (lambda, nu) helpers over the form.
std::int64_t rho_pair(const CartanDatum& c, const RootVector& nu);
std::int64_t weight_pair(const CartanDatum& c, const HighestWeight& lambda, const RootVector& nu);

/// Pairings <i, lambda - nu>.
std::vector<std::int64_t> pairings_of(const CartanDatum& c, const HighestWeight& lambda, const RootVector& nu);

} // namespace foldkit
