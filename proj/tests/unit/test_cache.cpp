#include "foldkit/cache.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <iterator>

using namespace foldkit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("foldkit-test-" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void put(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

} // namespace

TEST_SUITE("cache") {

TEST_CASE("multiplicity tables round-trip") {
  TempDir d("mult");
  Cache cache(d.path);
  auto c = parse_form("2,-2;-2,2");
  const auto w = Window::by_height(8);
  CHECK_FALSE(cache.load_mult(c, {1, 0}, w));
  auto t = freudenthal(c, {1, 0}, w);
  cache.store_mult(c, {1, 0}, t);
  auto back = cache.load_mult(c, {1, 0}, w);
  REQUIRE(back);
  CHECK(*back == t);
  CHECK_FALSE(cache.load_mult(c, {0, 1}, w));
  CHECK_FALSE(cache.load_mult(parse_form("4,-4;-4,4"), {1, 0}, w));
}

TEST_CASE("crystals round-trip") {
  TempDir d("crystal");
  Cache cache(d.path);
  auto c = parse_form("4,-2;-2,2");
  auto g = generate(c, {1, 1}, 5);
  cache.store_crystal(g);
  auto back = cache.load_crystal(c, {1, 1}, Window::by_height(5));
  REQUIRE(back);
  CHECK(*back == g);
  CHECK(back->census_table() == g.census_table());
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(back->e_edge(k, 0) == g.e_edge(k, 0));
}

TEST_CASE("stale, foreign and damaged files are ignored") {
  TempDir d("stale");
  Cache cache(d.path);
  auto c = parse_form("2,-1;-1,2");
  const auto w = Window::by_height(4);
  cache.store_mult(c, {1, 1}, freudenthal(c, {1, 1}, w));
  const auto file = cache.file_for("mult", c, {1, 1}, w);
  REQUIRE(fs::exists(file));
  const auto good = bytes(file);

  auto stale = good;
  stale[4] = static_cast<char>(kCacheVersion + 1);
  put(file, stale);
  CHECK_FALSE(cache.load_mult(c, {1, 1}, w));

  put(file, good.substr(0, good.size() / 2));
  CHECK_FALSE(cache.load_mult(c, {1, 1}, w));

  put(file, "not a cache file");
  CHECK_FALSE(cache.load_mult(c, {1, 1}, w));

  put(file, good);
  CHECK(cache.load_mult(c, {1, 1}, w));
}

TEST_CASE("providers fill the cache and return identical results") {
  TempDir d("provider");
  Cache cache(d.path);
  auto c = parse_form("2,-2;-2,2");
  const auto w = Window::by_height(6);
  auto miss = cache.mult_provider()(c, {1, 1}, w);
  CHECK(fs::exists(cache.file_for("mult", c, {1, 1}, w)));
  auto hit = cache.mult_provider()(c, {1, 1}, w);
  CHECK(miss == hit);
  auto g1 = cache.crystal_provider()(c, {1, 0}, w);
  auto g2 = cache.crystal_provider()(c, {1, 0}, w);
  CHECK(g1 == g2);
}

TEST_CASE("environment overrides the flag") {
  ::unsetenv("FOLDKIT_CACHE");
  CHECK(Cache::resolve(std::string("/tmp/a")) == fs::path("/tmp/a"));
  CHECK_FALSE(Cache::resolve(std::nullopt));
  ::setenv("FOLDKIT_CACHE", "/tmp/b", 1);
  CHECK(Cache::resolve(std::string("/tmp/a")) == fs::path("/tmp/b"));
  CHECK(Cache::resolve(std::nullopt) == fs::path("/tmp/b"));
  ::setenv("FOLDKIT_CACHE", "", 1);
  CHECK(Cache::resolve(std::string("/tmp/a")) == fs::path("/tmp/a"));
  ::unsetenv("FOLDKIT_CACHE");
}

} // TEST_SUITE
