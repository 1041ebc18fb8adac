#include "foldkit/error.hpp"
#include "foldkit/rep.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace foldkit;

namespace {

std::size_t omega_half(const Quiver& q, std::size_t e) { return q.orientation.contains(2 * e) ? 2 * e : 2 * e + 1; }

QMatrix scalar(const Rational& x) {
  QMatrix m(1, 1);
  m(0, 0) = x;
  return m;
}

// Single edge with 1x1 maps x along the orientation and y against it.
QuiverRep edge_rep(const Quiver& q, const Rational& x, const Rational& y) {
  auto r = zero_rep(q.graph, DimVector{{1, 1}, {}});
  const auto h = omega_half(q, 0);
  r.b[h] = scalar(x);
  r.b[Graph::bar(h)] = scalar(y);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

TEST_SUITE("rep") {

TEST_CASE("single edge symplectic form and moment map") {
  auto q = load_quiver(oracle::fixture("a2.quiver"));
  const Rational x(2), y(-1, 3), x2(1, 2), y2(5);
  auto b = edge_rep(q, x, y), b2 = edge_rep(q, x2, y2);
  CHECK(symplectic_form(q, b, b2) == y * x2 - x * y2);
  CHECK(symplectic_form(q, b, b) == 0);
  CHECK(symplectic_form(q, b2, b) == -symplectic_form(q, b, b2));
  const auto h = omega_half(q, 0);
  const auto mu = moment_map(q, b);
  CHECK(mu[q.graph.out(h)] == scalar(x * y));
  CHECK(mu[q.graph.in(h)] == scalar(-y * x));
}

TEST_CASE("lambda membership on a single edge") {
  auto q = load_quiver(oracle::fixture("a2.quiver"));
  CHECK(in_lambda(q, zero_rep(q.graph, DimVector{{1, 1}, {}})));
  CHECK(in_lambda(q, edge_rep(q, 1, 0)));
  CHECK_FALSE(in_lambda(q, edge_rep(q, 1, 1)));
  CHECK(is_nilpotent(q.graph, edge_rep(q, 1, 0)));
  CHECK_FALSE(is_nilpotent(q.graph, edge_rep(q, 1, 1)));
}

TEST_CASE("invertible 4-cycle is not nilpotent") {
  auto q = load_quiver(oracle::fixture("cycle4_plain.quiver"));
  auto r = zero_rep(q.graph, DimVector{{1, 1, 1, 1}, {}});
  for (std::size_t e = 0; e < 4; ++e) r.b[omega_half(q, e)] = scalar(1);
  CHECK_FALSE(is_nilpotent(q.graph, r));
  CHECK_FALSE(paths_vanish(q.graph, r, 12));
  r.b[omega_half(q, 2)] = scalar(0);
  CHECK(is_nilpotent(q.graph, r));
  CHECK(paths_vanish(q.graph, r, 4));
}

TEST_CASE("epsilon is the corank of the incoming maps") {
  auto q = load_quiver(oracle::fixture("a2.quiver"));
  auto r = parse_rep(q, slurp(oracle::fixture("a2_rep.txt")));
  CHECK(r.dims.v == std::vector<std::int64_t>{1, 2});
  CHECK(epsilon_i(q.graph, r, 1) == 1);
  CHECK(epsilon_i(q.graph, r, 0) == 1);
  auto z = zero_rep(q.graph, r.dims);
  CHECK(epsilon_i(q.graph, z, 1) == 2);
  CHECK(epsilon_i(q.graph, edge_rep(q, 1, 1), 0) == 0);
}

TEST_CASE("rep text errors") {
  auto q = load_quiver(oracle::fixture("a2.quiver"));
  CHECK_THROWS_AS(parse_rep(q, "dim 1 1\ndim 2 1\nmap e1 2x1 : 1;0\n"), InputError);
  CHECK_THROWS_AS(parse_rep(q, "dim 3 1\n"), InputError);
  CHECK_THROWS_AS(parse_rep(q, "dim 1 1\nmap nope 1x1 : 1\n"), InputError);
  CHECK_THROWS_AS(parse_rep(q, "dim 1 1\ndim 2 1\nmap e1 1x1 : x\n"), InputError);
  auto r = parse_rep(q, "dim 1 1\ndim 2 1\nmap ~e1 1x1 : 3/2\n");
  CHECK(r.b[Graph::bar(omega_half(q, 0))] == scalar(Rational(3, 2)));
}

TEST_CASE("framed rep text") {
  auto q = load_quiver(oracle::fixture("a2.quiver"));
  auto r = parse_rep(q, "dim 1 1\ndim 2 2\nmap e1 2x1 : 1;0\nmap ~e1 1x2 : 1/2,0\nframe 1 1\ni 1 1x1 : 0\nj 1 1x1 : 3\n");
  CHECK(r.dims.w == std::vector<std::int64_t>{1, 0});
  CHECK(r.j[0] == scalar(3));
  CHECK(r.i[0].is_zero());
  CHECK(r.b[Graph::bar(omega_half(q, 0))](0, 0) == Rational(1, 2));
}

TEST_CASE("automorphism action relabels and has the right order") {
  auto q = load_quiver(oracle::fixture("cycle4.quiver"));
  const auto& a = *q.automorphism;
  std::mt19937_64 rng(7);
  DimVector d{{1, 2, 0, 1}, {}};
  auto r = random_rep(q.graph, d, rng);
  auto ar = a_on_rep(r, a);
  CHECK(a_on_rep(ar, a) == r);
  CHECK(ar.dims.v == std::vector<std::int64_t>{0, 1, 1, 2});
  const auto mu = moment_map(q, r), amu = moment_map(q, ar);
  for (std::size_t i = 0; i < 4; ++i) CHECK(amu[i] == mu[a.vertex_perm[i]]);
  CHECK(a_on_rep(r, Automorphism::identity(q.graph)) == r);
}

TEST_CASE("framed membership follows the product structure") {
  auto q = load_quiver(oracle::fixture("a2.quiver"));
  auto r = zero_rep(q.graph, DimVector{{1, 1}, {1, 0}});
  CHECK(in_lambda_vw(q, r));
  r.j[0] = scalar(5);
  CHECK(in_lambda_vw(q, r));
  r.i[0] = scalar(1);
  CHECK_FALSE(in_lambda_vw(q, r));
  auto s = zero_rep(q.graph, DimVector{{1, 1}, {1, 0}});
  s.i[0] = scalar(2);
  s.j[0] = scalar(3);
  // tr(i j' - i' j) with i = 1, j = 5 against i' = 2, j' = 3
  CHECK(framed_form(q, r, s) == 1 * 3 - 2 * 5);
  CHECK(framed_form(q, s, r) == -framed_form(q, r, s));
}

TEST_CASE("property suite passes and is seed-deterministic") {
  auto a = repcheck(1, 40);
  CHECK(a.passed());
  CHECK(a.properties.size() == 7);
  CHECK(a.tsv() == repcheck(1, 40).tsv());
  for (const auto& p : a.properties) CHECK(p.failures == 0);
  CHECK(repcheck(load_quiver(oracle::fixture("d4.quiver")), 3, 20).passed());
}

TEST_CASE("shape mismatches are input errors") {
  auto q = load_quiver(oracle::fixture("a2.quiver"));
  auto r = zero_rep(q.graph, DimVector{{1, 1}, {}});
  r.b[0] = QMatrix(2, 2);
  CHECK_THROWS_AS(check_shapes(q.graph, r), InputError);
  CHECK_THROWS_AS(moment_map(q, r), InputError);
}

} // TEST_SUITE
