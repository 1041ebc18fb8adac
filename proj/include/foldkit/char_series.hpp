#pragma once

#include "foldkit/cartan.hpp"
#include "foldkit/crystal.hpp"
#include "foldkit/km_mult.hpp"
#include "foldkit/quiver.hpp"
#include "foldkit/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace foldkit {

/// Affine datum with a designated node 0 and its labels.
struct AffineData {
  CartanDatum datum;
  std::size_t node = 0;
  std::vector<std::int64_t> delta;       ///< primitive kernel of the GCM
  std::vector<std::int64_t> dual_labels; ///< primitive kernel of the transposed GCM
  std::int64_t dual_coxeter = 0;         ///< sum of dual labels
  /// Set unless delta and the dual labels are 1 at the node and its root has
  /// maximal length. For twisted data the series is left unshifted.
  bool twisted = false;
};

/// `node` defaults to the least index with delta 1 whose deletion leaves a
/// finite-type datum. Throws InputError unless the datum is irreducible affine.
AffineData affine_data(const CartanDatum& c, std::optional<std::size_t> node = std::nullopt);

/// sum_j a_j^vee <j, W>.
std::int64_t level(const AffineData& ad, const HighestWeight& w);

/// Conformal shift (W', W' + 2 rho')/(2(k + h)) - k dim g' / (24 (k + h)) over
/// the finite datum g' left after deleting the node, in the invariant form with
/// (alpha_i, alpha_i) = 2 a_i^vee / a_i.
Rational m_w(const AffineData& ad, const HighestWeight& w);

/// Truncated q-series: exponent -> coefficient, zero coefficients omitted.
/// Complete for exponents up to `bound`.
struct QSeries {
  std::map<Rational, std::int64_t> terms;
  Rational bound;

  std::int64_t coefficient(const Rational& e) const;
  /// "exponent<TAB>coefficient" lines, ascending.
  std::string tsv() const;
  /// "q^{-1/24} + 2 q^{23/24} + ..." text.
  std::string latex() const;

  friend bool operator==(const QSeries&, const QSeries&) = default;
};

/// Multiplicity source, so callers can put a cache in front of km_mult.
using MultProvider = std::function<MultTable(const CartanDatum&, const HighestWeight&, const Window&)>;
/// Crystal source, likewise.
using CrystalProvider = std::function<CrystalGraph(const CartanDatum&, const HighestWeight&, const Window&)>;

/// Window bounding the node coordinate (or all coordinates in `indices`) by depth.
Window layer_window(std::size_t rank, const std::vector<std::size_t>& indices, std::int64_t depth);

/// q^{m_W} sum_nu mult(W - nu) q^{nu_node} over nu_node <= depth.
QSeries normalized_character(const AffineData& ad, const HighestWeight& w, std::int64_t depth,
                             const MultProvider& mult = {});

struct ChAResult {
  QSeries series;
  bool twisted = false;
  /// Filled when the crystal route ran.
  std::optional<std::size_t> crystal_nodes;
  /// First disagreement between the crystal fixed points and folded Freudenthal.
  std::optional<std::string> crystal_mismatch;
};

/// Twisted trace sum_V q^{m_W + V_0} dim L^a(V, W) over a-stable V with
/// V_0 <= depth. `w` is indexed by the vertices of the quiver. dim L^a comes
/// from folded Freudenthal; with `crystal_check` the unfolded crystal's
/// fixed-point census is computed as well and compared weight by weight.
ChAResult ch_a(const Quiver& q, const HighestWeight& w, std::int64_t depth, bool crystal_check = false,
               const MultProvider& mult = {}, const CrystalProvider& crystal = {});

/// Folded datum of a quiver with its designated (or default) affine node.
AffineData folded_affine(const Quiver& q);

struct SeriesComparison {
  bool equal = true;
  std::optional<Rational> first_mismatch;
  std::int64_t left = 0;
  std::int64_t right = 0;
};

/// Compares coefficients at every exponent up to the smaller bound.
SeriesComparison compare_series(const QSeries& a, const QSeries& b);

struct Fault {
  std::int64_t layer = 0;
  std::int64_t delta = 1;
};

struct VerifyReport {
  ChAResult lhs;
  QSeries rhs;
  SeriesComparison comparison;

  bool verified() const { return comparison.equal && !lhs.crystal_mismatch; }
  std::string text() const;
};

/// Ch^a(W) against the normalized character of the folded datum at the folded
/// weight, through V_0 <= depth. `fault` perturbs one layer of Ch^a, for
/// exercising the mismatch path.
VerifyReport verify_character(const Quiver& q, const HighestWeight& w, std::int64_t depth, bool crystal_check = false,
                           std::optional<Fault> fault = std::nullopt, const MultProvider& mult = {},
                           const CrystalProvider& crystal = {});

} // namespace foldkit
