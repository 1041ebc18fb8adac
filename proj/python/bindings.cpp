#include "foldkit/cartan.hpp"
#include "foldkit/char_series.hpp"
#include "foldkit/cli.hpp"
#include "foldkit/crystal.hpp"
#include "foldkit/error.hpp"
#include "foldkit/km_mult.hpp"
#include "foldkit/rep.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace foldkit;

namespace {

// Weight tables keyed by tuples.
py::dict plain(const std::map<RootVector, std::int64_t, HeightLexLess>& m) {
  py::dict d;
  for (const auto& [nu, x] : m) d[py::tuple(py::cast(nu))] = x;
  return d;
}

std::vector<std::tuple<std::string, std::string, std::int64_t>> terms(const QSeries& s) {
  std::vector<std::tuple<std::string, std::string, std::int64_t>> out;
  for (const auto& [e, c] : s.terms) out.emplace_back(e.get_num().get_str(), e.get_den().get_str(), c);
  return out;
}

py::dict datum_dict(const CartanDatum& c) {
  py::dict d;
  d["labels"] = c.labels;
  d["form"] = c.form;
  d["gcm"] = gcm(c).a;
  const auto t = classify(c);
  d["type"] = t.describe();
  d["delta"] = t.delta;
  return d;
}

} // namespace

PYBIND11_MODULE(_foldkit, m) {
  m.doc() = "Quiver folding, Kac-Moody multiplicities, crystals and twisted characters.";
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  m.def("fold", [](const std::string& path) {
    const auto q = load_quiver(path);
    return datum_dict(fold(q.graph, q.automorphism_or_identity()));
  }, py::arg("quiver"), "Folded datum of a quiver file.");
  m.def("datum", [](const std::string& form) { return datum_dict(parse_form(form)); }, py::arg("form"));
  m.def("mult", [](const std::string& form, const HighestWeight& l, std::int64_t depth) {
    return plain(freudenthal(parse_form(form), l, depth).entries);
  }, py::arg("form"), py::arg("weight"), py::arg("depth"));
  m.def("roots", [](const std::string& form, std::int64_t depth) {
    return plain(positive_roots(parse_form(form), depth).entries);
  }, py::arg("form"), py::arg("depth"));
  m.def("uminus", [](const std::string& form, std::int64_t depth) {
    return plain(graded_dims_uminus(parse_form(form), depth).entries);
  }, py::arg("form"), py::arg("depth"));
  m.def("weyl_dim", [](const std::string& form, const HighestWeight& l) {
    return weyl_dim(parse_form(form), l).get_str();
  }, py::arg("form"), py::arg("weight"));
  m.def("crystal_census", [](const std::string& form, const HighestWeight& l, std::int64_t depth) {
    return plain(generate(parse_form(form), l, depth).census_table());
  }, py::arg("form"), py::arg("weight"), py::arg("depth"));
  m.def("fixed_census", [](const std::string& path, const HighestWeight& l, std::int64_t depth) {
    const auto q = load_quiver(path);
    const auto a = q.automorphism_or_identity();
    const auto g = generate(cartan_from_graph(q.graph), l, depth);
    return plain(fixed_census_table(g, aut_action(g, a.vertex_perm)));
  }, py::arg("quiver"), py::arg("weight"), py::arg("depth"));
  m.def("ch_a", [](const std::string& path, const HighestWeight& w, std::int64_t depth, bool crystal_check) {
    py::gil_scoped_release nogil;
    return terms(ch_a(load_quiver(path), w, depth, crystal_check).series);
  }, py::arg("quiver"), py::arg("weight"), py::arg("depth"), py::arg("crystal_check") = false);
  m.def("verify", [](const std::string& path, const HighestWeight& w, std::int64_t depth, bool crystal_check) {
    py::gil_scoped_release nogil;
    const auto r = verify_character(load_quiver(path), w, depth, crystal_check);
    return std::make_pair(r.verified(), r.text());
  }, py::arg("quiver"), py::arg("weight"), py::arg("depth"), py::arg("crystal_check") = false);
  m.def("repcheck", [](std::uint64_t seed, std::int64_t trials) {
    const auto r = repcheck(seed, trials);
    return std::make_pair(r.passed(), r.tsv());
  }, py::arg("seed") = 1, py::arg("trials") = 200);
  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return std::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command-line tool in process; returns (exit code, stdout, stderr).");
}
