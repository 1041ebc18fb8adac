#pragma once

#include "foldkit/quiver.hpp"
#include "foldkit/rational.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace foldkit {

/// Dimension vector V, with an optional framing W (empty when unframed).
struct DimVector {
  std::vector<std::int64_t> v;
  std::vector<std::int64_t> w;

  bool framed() const noexcept { return !w.empty(); }
  std::int64_t total() const;
  friend bool operator==(const DimVector&, const DimVector&) = default;
};

/// B_h for every half-edge (shape dim V_in(h) x dim V_out(h)); for framed
/// representations also i_k (V_k x W_k) and j_k (W_k x V_k).
struct QuiverRep {
  DimVector dims;
  std::vector<QMatrix> b;
  std::vector<QMatrix> i;
  std::vector<QMatrix> j;

  bool framed() const noexcept { return dims.framed(); }
  friend bool operator==(const QuiverRep&, const QuiverRep&) = default;
};

QuiverRep zero_rep(const Graph& g, DimVector dims);

/// Throws InputError when a matrix shape disagrees with the dimension vector.
void check_shapes(const Graph& g, const QuiverRep& x);

/// sum_h eps(h) tr(B_bar(h) B'_h).
Rational symplectic_form(const Quiver& q, const QuiverRep& x, const QuiverRep& y);

/// mu_i = sum_{out(h)=i} eps(h) B_bar(h) B_h, one square matrix per vertex.
std::vector<QMatrix> moment_map(const Quiver& q, const QuiverRep& x);

/// Decided through the chain S_0(i) = V_i, S_k(i) = sum_{in(h)=i} B_h S_{k-1}(out h),
/// which reaches 0 within 1 + sum dim V_i steps exactly when B is nilpotent.
bool is_nilpotent(const Graph& g, const QuiverRep& x);

/// Depth-first search over all paths of length `length`, pruning at vanishing
/// prefixes. True iff every product of that length vanishes.
bool paths_vanish(const Graph& g, const QuiverRep& x, std::int64_t length);

bool in_lambda(const Quiver& q, const QuiverRep& x);

/// dim V_i minus the rank of the joint incoming map at i.
std::int64_t epsilon_i(const Graph& g, const QuiverRep& x, std::size_t vertex);

/// (aB)_h = B_{a(h)} on a(V)_i = V_{a(i)}; framing data relabeled the same way.
QuiverRep a_on_rep(const QuiverRep& x, const Automorphism& a);

/// g.B: B_h -> g_in(h) B_h g_out(h)^{-1}, i_k -> g_k i_k, j_k -> j_k g_k^{-1}.
QuiverRep g_action(const Graph& g, const QuiverRep& x, const std::vector<QMatrix>& group);

/// sum_h eps(h) tr(B_h B'_bar(h)) + sum_k tr(i_k j'_k - i'_k j_k).
Rational framed_form(const Quiver& q, const QuiverRep& x, const QuiverRep& y);

/// B in Lambda_V and every i_k zero.
bool in_lambda_vw(const Quiver& q, const QuiverRep& x);

/// Representation text:
///   dim <vertex> <n>
///   frame <vertex> <n>
///   map <eid> <rows>x<cols> : r11,r12;r21,r22     (the half-edge in the orientation)
///   map ~<eid> ...                                (the opposite half-edge)
///   i <vertex> <rows>x<cols> : ...
///   j <vertex> <rows>x<cols> : ...
/// Unlisted matrices are zero.
QuiverRep parse_rep(const Quiver& q, std::string_view text);

/// Entries p/q with p in [-2, 2] and q in [1, 3]; each entry is zero with
/// probability `zero_rate` percent.
QMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int zero_rate = 0);
QMatrix random_invertible(std::mt19937_64& rng, std::size_t n);
QuiverRep random_rep(const Graph& g, const DimVector& dims, std::mt19937_64& rng, int zero_rate = 0);

struct PropertyResult {
  std::string name;
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  std::string first_failure;
};

struct RepcheckReport {
  std::vector<PropertyResult> properties;
  bool passed() const;
  /// "property<TAB>trials<TAB>failures<TAB>status" lines.
  std::string tsv() const;
};

/// Seeded property suite over a fixed set of small quivers. `trials` counts
/// random samples per property.
RepcheckReport repcheck(std::uint64_t seed, std::int64_t trials);

/// Same suite on one quiver, for dimension vectors with sum at most `max_total`.
RepcheckReport repcheck(const Quiver& q, std::uint64_t seed, std::int64_t trials, std::int64_t max_total = 6);

} // namespace foldkit
