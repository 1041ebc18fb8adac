#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace foldkit {

/// Coordinates in the simple roots; nu in N[J].
using RootVector = std::vector<std::int64_t>;

/// Pairings (<j, lambda>)_j of a dominant weight.
using HighestWeight = std::vector<std::int64_t>;

std::int64_t height(const RootVector& nu);

/// Orders by height, then lexicographically.
struct HeightLexLess {
  bool operator()(const RootVector& a, const RootVector& b) const;
};

/// "1,0,2"
std::string format_vector(const std::vector<std::int64_t>& v);

/// Parses "1,0,2"; throws InputError.
std::vector<std::int64_t> parse_vector(const std::string& text);

/// Downward-closed set of root vectors: an optional height cap plus optional
/// per-coordinate caps.
struct Window {
  std::optional<std::int64_t> max_height;
  std::vector<std::optional<std::int64_t>> caps;

  static Window by_height(std::int64_t depth) { return Window{depth, {}}; }

  bool contains(const RootVector& nu) const;
  /// Stable text form used in cache keys.
  std::string key() const;

  friend bool operator==(const Window&, const Window&) = default;
};

} // namespace foldkit
