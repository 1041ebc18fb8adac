// Acceptance run: one PASS/FAIL line per criterion. Each criterion builds a
// text report; the last criterion rebuilds every report and compares bytes.

#include "foldkit/cartan.hpp"
#include "foldkit/char_series.hpp"
#include "foldkit/crystal.hpp"
#include "foldkit/km_mult.hpp"
#include "foldkit/rep.hpp"

#include "../unit/oracles.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

using namespace foldkit;

namespace {

struct Outcome {
  bool ok = true;
  std::string report;
  std::string note;
};

class Report {
public:
  void check(bool cond, const std::string& what) {
    out_ << (cond ? "ok\t" : "FAILED\t") << what << "\n";
    if (!cond && note_.empty()) note_ = what;
    ok_ = ok_ && cond;
  }
  void line(const std::string& s) { out_ << s << "\n"; }
  Outcome done() const { return {ok_, out_.str(), note_}; }

private:
  std::ostringstream out_;
  bool ok_ = true;
  std::string note_;
};

std::string str(const std::vector<std::int64_t>& v) { return "(" + format_vector(v) + ")"; }

std::string str(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? ";" : "") + format_vector(m[i]);
  return s + "]";
}

Outcome folding() {
  Report r;
  auto fold_fixture = [](const char* name) {
    auto q = load_quiver(oracle::fixture(name));
    return fold(q.graph, *q.automorphism);
  };
  const auto a3 = gcm(fold_fixture("a3.quiver")).a;
  r.check(a3 == IntMatrix{{2, -1}, {-2, 2}}, "A3/(1 3) gcm " + str(a3));
  const auto d4c = fold_fixture("d4.quiver");
  const auto d4 = gcm(d4c).a;
  r.check(d4 == IntMatrix{{2, -3}, {-1, 2}} && d4c.labels.front() == "{0}", "D4/(1 2 3) gcm " + str(d4));
  const auto cyc = fold_fixture("cycle4.quiver");
  const auto tc = classify(cyc);
  r.check(gcm(cyc).a == IntMatrix{{2, -2}, {-2, 2}} && tc.kind == Kind::Affine &&
              tc.delta == std::vector<std::int64_t>{1, 1},
          "4-cycle/rotation gcm " + str(gcm(cyc).a) + " " + tc.describe());
  const auto a5 = gcm(fold_fixture("a5.quiver")).a;
  bool symmetric = true;
  for (std::size_t i = 0; i < a5.size(); ++i)
    for (std::size_t j = 0; j < a5.size(); ++j) symmetric = symmetric && a5[i][j] == a5[j][i];
  r.check(a5.size() == 3 && !symmetric && classify(fold_fixture("a5.quiver")).kind == Kind::Finite,
          "A5/flip gcm " + str(a5) + " " + classify(fold_fixture("a5.quiver")).describe());
  return r.done();
}

Outcome finite_dims() {
  Report r;
  struct Case {
    std::string name;
    CartanDatum c;
    HighestWeight l;
    std::int64_t expect;
  };
  auto c2 = [] {
    auto q = load_quiver(oracle::fixture("a3.quiver"));
    return fold(q.graph, *q.automorphism);
  }();
  auto g2 = [] {
    auto q = load_quiver(oracle::fixture("d4.quiver"));
    return fold(q.graph, *q.automorphism);
  }();
  const std::vector<Case> cases{{"A2 (1,1)", parse_form("2,-1;-1,2"), {1, 1}, 8},
                                {"A3 omega2", parse_form("2,-1,0;-1,2,-1;0,-1,2"), {0, 1, 0}, 6},
                                {"C2-type (0,1)", c2, {0, 1}, -1},
                                {"C2-type (1,0)", c2, {1, 0}, -1},
                                {"G2-type (1,0)", g2, {1, 0}, -1},
                                {"G2-type (0,1)", g2, {0, 1}, -1}};
  for (const auto& k : cases) {
    const auto ora = oracle::weyl_dimension(gcm(k.c).a, gcm(k.c).symmetrizer, k.l);
    const auto total = freudenthal(k.c, k.l, 200).total();
    const auto wd = weyl_dim(k.c, k.l);
    const bool ok = total == ora && wd == ora && (k.expect < 0 || total == k.expect);
    r.check(ok, k.name + " freudenthal " + std::to_string(total) + " weyl_dim " + wd.get_str() + " oracle " +
                    std::to_string(ora));
  }
  return r.done();
}

Outcome crystal_census() {
  Report r;
  struct Case {
    std::string name;
    CartanDatum c;
    HighestWeight l;
    std::int64_t depth;
  };
  auto c2 = [] {
    auto q = load_quiver(oracle::fixture("a3.quiver"));
    return fold(q.graph, *q.automorphism);
  }();
  const std::vector<Case> cases{{"A2 (1,1)", parse_form("2,-1;-1,2"), {1, 1}, 6},
                                {"A3 omega2", parse_form("2,-1,0;-1,2,-1;0,-1,2"), {0, 1, 0}, 6},
                                {"C2-type (0,1)", c2, {0, 1}, 6},
                                {"C2-type (1,1)", c2, {1, 1}, 6},
                                {"rank-1 (6)", parse_form("2"), {6}, 8},
                                {"rank-1 (9)", parse_form("2"), {9}, 8}};
  for (const auto& k : cases) {
    auto g = generate(k.c, k.l, k.depth);
    auto t = freudenthal(k.c, k.l, k.depth);
    r.check(g.census_table() == t.entries, k.name + " depth " + std::to_string(k.depth) + ": " +
                                               std::to_string(g.size()) + " nodes, " +
                                               std::to_string(t.entries.size()) + " weights");
  }
  return r.done();
}

// Fixed crystal nodes against folded Freudenthal at every a-stable weight of
// unfolded height <= depth, in both directions.
bool fixed_vs_folded(const Quiver& q, const HighestWeight& l, std::int64_t depth, std::string& summary) {
  const auto& a = *q.automorphism;
  auto g = generate(cartan_from_graph(q.graph), l, depth);
  auto sigma = aut_action(g, a.vertex_perm);
  auto fixed = fixed_census_table(g, sigma);
  const auto folded = fold(q.graph, a);
  const auto lt = stable_subset(l, a);
  if (!lt) return false;
  auto t = freudenthal(folded, *lt, depth);
  bool ok = true;
  std::size_t compared = 0;
  for (const auto& [nu, m] : t.entries) {
    const auto v = unfold_vector(nu, a);
    if (height(v) > depth) continue;
    ++compared;
    ok = ok && fixed_census(g, sigma, a.vertex_perm, v) == m;
  }
  for (const auto& [v, m] : fixed) {
    const auto nu = stable_subset(v, a);
    ok = ok && nu && t.at(*nu) == m;
  }
  summary = std::to_string(g.size()) + " nodes, " + std::to_string(compared) + " stable weights";
  return ok;
}

Outcome counting_route() {
  Report r;
  auto a3 = load_quiver(oracle::fixture("a3.quiver"));
  auto d4 = load_quiver(oracle::fixture("d4.quiver"));
  struct Case {
    std::string name;
    const Quiver* q;
    HighestWeight l;
    std::int64_t depth;
  };
  for (const auto& k : {Case{"A3/(1 3) omega2", &a3, {0, 1, 0}, 6}, Case{"A3/(1 3) omega1+omega3", &a3, {1, 0, 1}, 6},
                        Case{"D4/(1 2 3) omega_center", &d4, {1, 0, 0, 0}, 5}}) {
    std::string summary;
    const bool ok = fixed_vs_folded(*k.q, k.l, k.depth, summary);
    r.check(ok, k.name + " depth " + std::to_string(k.depth) + ": " + summary);
  }
  return r.done();
}

Outcome affine_mults() {
  Report r;
  const std::int64_t expect[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  auto t = freudenthal(parse_form("2,-2;-2,2"), {1, 0}, 20);
  std::string got;
  bool ok = true;
  for (std::int64_t n = 0; n <= 10; ++n) {
    const auto m = t.at({n, n});
    got += (n ? "," : "") + std::to_string(m);
    ok = ok && m == expect[n] && m == oracle::partitions(n);
  }
  r.check(ok, "mult(Lambda0 - n delta), n=0..10: " + got);
  return r.done();
}

Outcome desk_verification() {
  Report r;
  auto q = load_quiver(oracle::fixture("cycle4.quiver"));
  const HighestWeight w{1, 0, 1, 0};
  auto with_crystal = verify_character(q, w, 8, true);
  auto plain = verify_character(q, w, 8, false);
  r.check(with_crystal.verified(), "with crystal check: " + with_crystal.text().substr(0, with_crystal.text().find('\n')));
  r.check(plain.verified(), "folded Freudenthal: " + plain.text().substr(0, plain.text().find('\n')));
  r.check(with_crystal.lhs.series == plain.lhs.series, "both dim L^a routes give the same Ch^a");
  r.check(with_crystal.rhs.terms.size() == 9, "9 layers through V_0 <= 8");
  r.line(with_crystal.text());
  return r.done();
}

Outcome property_suite() {
  Report r;
  auto rep = repcheck(20240101, 200);
  std::int64_t total = 0;
  for (const auto& p : rep.properties) total += p.trials;
  r.check(rep.passed(), "all properties hold");
  r.check(total >= 1000, std::to_string(total) + " trials");
  r.line(rep.tsv());
  return r.done();
}

std::string run_exe(const std::string& args) {
  const std::string cmd = std::string(FOLDKIT_EXE) + " " + args + " 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return "<popen failed>";
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  return out;
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Outcome()> run;
};

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "folding fixtures", 1.0, folding},
      {2, "finite type dimensions against the Weyl oracle", 10.0, finite_dims},
      {3, "crystal census against Freudenthal", 60.0, crystal_census},
      {4, "fixed-point census against folded Freudenthal", 120.0, counting_route},
      {5, "affine sl2 basic representation", 30.0, affine_mults},
      {6, "Ch^a against the folded normalized character, depth 8", 300.0, desk_verification},
      {7, "quiver representation property suite", 30.0, property_suite},
  };
  using clock = std::chrono::steady_clock;
  std::vector<std::string> reports;
  bool all = true;
  auto print = [](int id, bool ok, double secs, const std::string& title, const std::string& note) {
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << " (" << t << ") " << title;
    if (!ok && !note.empty()) std::cout << " -- " << note;
    std::cout << "\n";
  };
  for (const auto& c : criteria) {
    const auto t0 = clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, "", std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    const bool ok = o.ok && secs < c.limit_s;
    if (o.ok && !ok) o.note = "over the time limit";
    print(c.id, ok, secs, c.title, o.note);
    std::cerr << "---- criterion " << c.id << " report\n" << o.report;
    reports.push_back(o.report);
    all = all && ok;
  }

  // 8: every report again, in process and through the command-line tool.
  const auto t0 = clock::now();
  bool same = true;
  std::string note;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome again;
    try {
      again = criteria[k].run();
    } catch (const std::exception& e) {
      again.report = e.what();
    }
    if (again.report != reports[k]) {
      same = false;
      if (note.empty()) note = "criterion " + std::to_string(criteria[k].id) + " report differs";
    }
  }
  const std::string fx = FOLDKIT_FIXTURES;
  for (const std::string& args : std::vector<std::string>{"fold --quiver " + fx + "/a5.quiver", "mult --cartan '2,-2;-2,2' --lambda 1,0 --depth 10",
                           "fixed --quiver " + fx + "/d4.quiver --lambda 1,0,0,0 --depth 5",
                           "verify --quiver " + fx + "/cycle4.quiver --lambda 1,0,1,0 --depth 6 --with-crystal-check",
                           "repcheck --seed 9 --trials 150"}) {
    if (run_exe(args) != run_exe(args)) {
      same = false;
      if (note.empty()) note = "foldkit " + args + " differs between runs";
    }
  }
  const double secs = std::chrono::duration<double>(clock::now() - t0).count();
  print(8, same, secs, "byte-identical reports on rerun", note);
  all = all && same;
  return all ? 0 : 1;
}
