#include "foldkit/cartan.hpp"
#include "foldkit/crystal.hpp"
#include "foldkit/error.hpp"
#include "foldkit/km_mult.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace foldkit;

namespace {

oracle::Mat to_mat(const IntMatrix& m) { return m; }

oracle::Vec symmetrizer(const CartanDatum& c) { return gcm(c).symmetrizer; }

} // namespace

TEST_SUITE("km_mult") {

TEST_CASE("simple roots have multiplicity one") {
  for (const char* f : {"2", "2,-1;-1,2", "4,-2;-2,2", "2,-2;-2,2", "2,-3;-3,2"}) {
    auto c = parse_form(f);
    auto rs = root_system(c);
    for (std::size_t j = 0; j < c.rank(); ++j) {
      RootVector e(c.rank(), 0);
      e[j] = 1;
      CHECK(rs->mult(e) == 1);
    }
  }
}

TEST_CASE("finite type roots agree with the Weyl orbit oracle") {
  for (const char* f : {"2,-1;-1,2", "4,-2;-2,2", "6,-3;-3,2", "2,-1,0;-1,2,-1;0,-1,2", "4,-2,0;-2,4,-2;0,-2,2"}) {
    CAPTURE(f);
    auto c = parse_form(f);
    auto roots = oracle::positive_roots(to_mat(gcm(c).a));
    std::int64_t top = 0;
    for (const auto& r : roots) top = std::max(top, height(r));
    auto table = positive_roots(c, top + 2);
    std::map<RootVector, std::int64_t, HeightLexLess> expect;
    for (const auto& r : roots) expect[r] = 1;
    CHECK(table.entries == expect);
  }
  auto a2 = root_system(parse_form("2,-1;-1,2"));
  CHECK(a2->mult({1, 1}) == 1);
  CHECK(a2->mult({2, 1}) == 0);
}

TEST_CASE("affine sl2 imaginary roots") {
  auto rs = root_system(parse_form("4,-4;-4,4"));
  CHECK(rs->mult({1, 1}) == 1);
  CHECK(rs->mult({2, 2}) == 1);
  CHECK(rs->mult({2, 1}) == 1);
  CHECK(rs->mult({3, 1}) == 0);
  // affine D4 has imaginary multiplicity equal to its rank 4
  auto d4 = root_system(parse_form("2,-1,-1,-1,-1;-1,2,0,0,0;-1,0,2,0,0;-1,0,0,2,0;-1,0,0,0,2"));
  CHECK(d4->mult({2, 1, 1, 1, 1}) == 4);
}

TEST_CASE("rank-1 string") {
  auto t = freudenthal(parse_form("2"), {2}, 3);
  CHECK(t.at({0}) == 1);
  CHECK(t.at({1}) == 1);
  CHECK(t.at({2}) == 1);
  CHECK(t.at({3}) == 0);
  CHECK_THROWS_AS(t.at({4}), InputError);
}

TEST_CASE("Freudenthal totals agree with the Weyl dimension oracle") {
  struct Case {
    const char* form;
    HighestWeight lambda;
  };
  for (const auto& [f, l] : {Case{"2,-1;-1,2", {1, 1}}, Case{"2,-1,0;-1,2,-1;0,-1,2", {0, 1, 0}},
                             Case{"4,-2;-2,2", {0, 1}}, Case{"4,-2;-2,2", {1, 1}}, Case{"6,-3;-3,2", {1, 0}},
                             Case{"6,-3;-3,2", {0, 1}}, Case{"2,-1,0;-1,2,-1;0,-1,2", {1, 0, 1}}}) {
    CAPTURE(f);
    auto c = parse_form(f);
    const auto expect = oracle::weyl_dimension(to_mat(gcm(c).a), symmetrizer(c), l);
    CHECK(weyl_dim(c, l) == expect);
    CHECK(freudenthal(c, l, 60).total() == expect);
  }
  auto a2 = freudenthal(parse_form("2,-1;-1,2"), {1, 1}, 10);
  CHECK(a2.at({1, 1}) == 2);
  CHECK(a2.total() == 8);
  CHECK(weyl_dim(parse_form("2,-1;-1,2"), {0, 0}) == 1);
  CHECK_THROWS_AS(weyl_dim(parse_form("2,-2;-2,2"), {1, 0}), InputError);
}

TEST_CASE("basic representation of affine sl2 matches the partition oracle") {
  auto t = freudenthal(parse_form("2,-2;-2,2"), {1, 0}, 20);
  const std::int64_t expect[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (std::int64_t n = 0; n <= 10; ++n) {
    CHECK(t.at({n, n}) == expect[n]);
    CHECK(t.at({n, n}) == oracle::partitions(n));
  }
}

TEST_CASE("graded dimensions of U^-") {
  auto a2 = parse_form("2,-1;-1,2");
  CHECK(graded_dim_uminus(a2, {1, 0}) == 1);
  CHECK(graded_dim_uminus(a2, {1, 1}) == 2);
  CHECK(graded_dim_uminus(parse_form("4,-4;-4,4"), {1, 1}) == 2);
  for (const char* f : {"2,-1;-1,2", "4,-2;-2,2", "6,-3;-3,2", "2,-1,0;-1,2,-1;0,-1,2"}) {
    auto c = parse_form(f);
    auto roots = oracle::positive_roots(to_mat(gcm(c).a));
    auto table = graded_dims_uminus(c, 5);
    for (const auto& [nu, d] : table.entries) CHECK(d == oracle::kostant(roots, nu));
  }
}

TEST_CASE("denominator identity at truncation") {
  for (const char* f : {"2,-2;-2,2", "4,-4;-4,4", "2,-1,-1;-1,2,-1;-1,-1,2", "4,-2;-2,2", "2,-3;-3,2"}) {
    CAPTURE(f);
    auto c = parse_form(f);
    const std::int64_t depth = 7;
    auto u = graded_dims_uminus(c, depth);
    u.entries[RootVector(c.rank(), 0)] = 1;
    auto w = weyl_denominator_partial(c, depth);
    std::map<RootVector, std::int64_t, HeightLexLess> prod;
    for (const auto& [a, x] : u.entries)
      for (const auto& [b, y] : w) {
        RootVector s = a;
        for (std::size_t j = 0; j < s.size(); ++j) s[j] += b[j];
        if (height(s) <= depth) prod[s] += x * y;
      }
    for (const auto& [nu, v] : prod) {
      CAPTURE(format_vector(nu));
      CHECK(v == (height(nu) == 0 ? 1 : 0));
    }
  }
}

TEST_CASE("weight multiplicities are Weyl invariant inside the window") {
  struct Case {
    const char* form;
    HighestWeight lambda;
  };
  for (const auto& [f, l] : {Case{"2,-1;-1,2", {2, 1}}, Case{"4,-2;-2,2", {1, 2}}, Case{"2,-2;-2,2", {1, 1}},
                             Case{"2,-1,-1;-1,2,-1;-1,-1,2", {1, 0, 0}}}) {
    auto c = parse_form(f);
    const std::int64_t depth = 8;
    auto t = freudenthal(c, l, depth);
    for (const auto& [nu, m] : t.entries) {
      const auto p = pairings_of(c, l, nu);
      for (std::size_t j = 0; j < c.rank(); ++j) {
        RootVector other = nu;
        other[j] += p[j];
        if (other[j] < 0 || !t.window.contains(other)) continue;
        CHECK(t.at(other) == m);
      }
    }
  }
}

TEST_CASE("U^- dimensions stabilize to the crystal census for large weights") {
  for (const char* f : {"2,-1;-1,2", "4,-2;-2,2", "2,-2;-2,2"}) {
    auto c = parse_form(f);
    const std::int64_t depth = 4;
    auto g = generate(c, {depth, depth}, depth);
    for (const auto& [nu, d] : graded_dims_uminus(c, depth).entries) CHECK(g.census(nu) == d);
  }
}

TEST_CASE("Freudenthal rejects non-dominant weights and bad sizes") {
  auto c = parse_form("2,-1;-1,2");
  CHECK_THROWS_AS(freudenthal(c, {-1, 0}, 3), InputError);
  CHECK_THROWS_AS(freudenthal(c, {1}, 3), InputError);
  CHECK_THROWS_AS(freudenthal(c, {1, 0}, -1), InputError);
}

} // TEST_SUITE
