#pragma once

#include "foldkit/char_series.hpp"
#include "foldkit/crystal.hpp"
#include "foldkit/km_mult.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace foldkit {

inline constexpr std::uint32_t kCacheVersion = 1;

/// Directory of binary result files keyed by (datum, highest weight, window).
/// Files with another version, another key, or a damaged body are ignored.
class Cache {
public:
  Cache() = default;
  explicit Cache(std::filesystem::path dir);

  /// FOLDKIT_CACHE when set and nonempty, else `flag`.
  static std::optional<std::filesystem::path> resolve(const std::optional<std::string>& flag);

  bool enabled() const noexcept { return dir_.has_value(); }

  std::optional<MultTable> load_mult(const CartanDatum& c, const HighestWeight& lambda, const Window& w) const;
  void store_mult(const CartanDatum& c, const HighestWeight& lambda, const MultTable& t) const;

  std::optional<CrystalGraph> load_crystal(const CartanDatum& c, const HighestWeight& lambda, const Window& w) const;
  void store_crystal(const CrystalGraph& g) const;

  /// Providers that read through the cache and fill it on a miss.
  MultProvider mult_provider() const;
  CrystalProvider crystal_provider() const;

  std::filesystem::path file_for(const std::string& kind, const CartanDatum& c, const HighestWeight& lambda,
                                 const Window& w) const;

private:
  std::optional<std::filesystem::path> dir_;
};

} // namespace foldkit
