#pragma once

// Independent reference computations used only by tests.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<std::int64_t>;
using Mat = std::vector<Vec>;

/// Number of integer partitions of n.
std::int64_t partitions(std::int64_t n);

/// Orbit form from raw edge pairs and a vertex permutation: orbits are the
/// cycles of `perm` ordered by least member.
Mat fold_form(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
              const std::vector<std::size_t>& perm);

/// Positive roots of a finite-type GCM as the orbit of the simple roots under
/// all simple reflections.
std::vector<Vec> positive_roots(const Mat& gcm);

/// Weyl dimension, with symmetrizer d_i so that (alpha_i, alpha_j) = d_i a_ij.
std::int64_t weyl_dimension(const Mat& gcm, const Vec& d, const Vec& lambda);

/// Ways of writing nu as an unordered sum of positive roots (finite type).
std::int64_t kostant(const std::vector<Vec>& roots, const Vec& nu);

/// Layer sums of the basic representation of the affine sl2 datum:
/// sum over m in Z of p(n - m^2).
std::int64_t basic_layer(std::int64_t n);

/// Fixture file path.
std::string fixture(const std::string& name);

} // namespace oracle
