#include "foldkit/cli.hpp"

#include "foldkit/cache.hpp"
#include "foldkit/cartan.hpp"
#include "foldkit/char_series.hpp"
#include "foldkit/crystal.hpp"
#include "foldkit/error.hpp"
#include "foldkit/km_mult.hpp"
#include "foldkit/quiver.hpp"
#include "foldkit/rep.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

namespace foldkit {

namespace {

struct Selected {
  CartanDatum datum;
  std::optional<Quiver> quiver;
  /// Automorphism acting on the datum's own index set.
  std::vector<std::size_t> index_perm;
  std::optional<std::size_t> affine_node;
};

Quiver require_quiver(const RunConfig& cfg) {
  if (!cfg.quiver) throw InputError(cfg.subcommand + " needs --quiver");
  return load_quiver(*cfg.quiver);
}

void require_admissible(const Quiver& q) {
  if (!q.automorphism) return;
  const auto v = validate_admissible(q.graph, *q.automorphism);
  if (v.empty()) return;
  std::string msg = "automorphism is not admissible:";
  for (const auto& x : v) msg += " [" + x.axiom + ": " + x.witness + "]";
  throw InputError(msg);
}

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = k;
  return p;
}

Selected select(const RunConfig& cfg) {
  if (cfg.quiver && cfg.cartan) throw InputError("give either --quiver or --cartan, not both");
  Selected s;
  if (cfg.cartan) {
    s.datum = parse_form(*cfg.cartan);
    s.index_perm = iota(s.datum.rank());
    return s;
  }
  auto q = require_quiver(cfg);
  const auto a = q.automorphism_or_identity();
  if (q.automorphism && !cfg.unfolded) {
    require_admissible(q);
    s.datum = fold(q.graph, a);
    s.index_perm = iota(s.datum.rank());
    if (q.affine_node) s.affine_node = orbits(a).orbit_of_vertex[*q.affine_node];
  } else {
    s.datum = cartan_from_graph(q.graph);
    s.index_perm = a.vertex_perm;
    s.affine_node = q.affine_node;
  }
  s.quiver = std::move(q);
  return s;
}

HighestWeight require_lambda(const RunConfig& cfg, std::size_t rank, const char* what = "--lambda") {
  if (!cfg.lambda) throw InputError(cfg.subcommand + " needs " + what);
  auto l = parse_vector(*cfg.lambda);
  if (l.size() != rank)
    throw InputError(std::string(what) + " has " + std::to_string(l.size()) + " entries, expected " + std::to_string(rank));
  for (auto x : l)
    if (x < 0) throw InputError(std::string(what) + " must be dominant (entries >= 0)");
  return l;
}

void require_depth(const RunConfig& cfg) {
  if (cfg.depth < 0) throw InputError("--depth must be nonnegative");
}

std::string matrix_tsv(const std::vector<std::string>& labels, const IntMatrix& m) {
  std::string s = "orbit";
  for (const auto& l : labels) s += "\t" + l;
  s += "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += labels[i];
    for (auto x : m[i]) s += "\t" + std::to_string(x);
    s += "\n";
  }
  return s;
}

std::string type_tsv(const CartanDatum& c) {
  const auto tc = classify(c);
  std::string s = "type\t" + tc.describe() + "\n";
  for (const auto& comp : tc.components) {
    std::string members;
    for (auto i : comp.indices) members += (members.empty() ? "" : ",") + c.labels[i];
    s += "component\t" + members + "\t" + to_string(comp.kind);
    if (comp.kind == Kind::Affine) s += "\tdelta=" + format_vector(comp.delta);
    s += "\n";
  }
  if (!tc.delta.empty()) s += "delta\t" + format_vector(tc.delta) + "\n";
  return s;
}

std::string table_tsv(const MultTable& t, const char* column) {
  std::string s = std::string("nu\t") + column + "\n";
  for (const auto& [nu, m] : t.entries) s += format_vector(nu) + "\t" + std::to_string(m) + "\n";
  return s;
}

std::string latex_escape(const std::string& cell) {
  std::string s;
  for (char ch : cell) {
    if (ch == '{' || ch == '}' || ch == '_' || ch == '#' || ch == '&' || ch == '%') s += '\\';
    s += ch;
  }
  return s;
}

/// Tab-separated lines as a tabular; '#' lines become comments.
std::string tsv_to_latex(const std::string& tsv) {
  std::size_t cols = 1;
  std::stringstream ss(tsv);
  std::string line;
  std::string body;
  while (std::getline(ss, line)) {
    if (line.empty()) {
      body += "\\midrule\n";
      continue;
    }
    if (line[0] == '#') {
      body += "% " + line.substr(1) + "\n";
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, '\t');) cells.push_back(latex_escape(c));
    cols = std::max(cols, cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) body += (k ? " & " : "") + cells[k];
    body += " \\\\\n";
  }
  return "\\begin{tabular}{" + std::string(cols, 'l') + "}\n" + body + "\\end{tabular}\n";
}

struct Emitter {
  const RunConfig& cfg;
  std::ostream& out;
  void table(const std::string& tsv) const { out << (cfg.format == "latex" ? tsv_to_latex(tsv) : tsv); }
  void series(const QSeries& s) const {
    if (cfg.format == "latex") out << s.latex();
    else out << "exponent\tcoefficient\n" << s.tsv();
  }
};

int cmd_fold(const RunConfig& cfg, const Emitter& emit) {
  auto q = require_quiver(cfg);
  require_admissible(q);
  const auto a = q.automorphism_or_identity();
  const auto c = cfg.unfolded ? cartan_from_graph(q.graph) : fold(q.graph, a);
  const auto g = gcm(c);
  std::string s = "# form\n" + matrix_tsv(c.labels, c.form) + "# gcm\n" + matrix_tsv(c.labels, g.a) + type_tsv(c);
  emit.table(s);
  return kExitOk;
}

int cmd_classify(const RunConfig& cfg, const Emitter& emit) {
  const auto s = select(cfg);
  emit.table(type_tsv(s.datum));
  return kExitOk;
}

int cmd_mult(const RunConfig& cfg, const Emitter& emit, const Cache& cache) {
  require_depth(cfg);
  const auto s = select(cfg);
  const auto l = require_lambda(cfg, s.datum.rank());
  emit.table(table_tsv(cache.mult_provider()(s.datum, l, Window::by_height(cfg.depth)), "mult"));
  return kExitOk;
}

int cmd_roots(const RunConfig& cfg, const Emitter& emit) {
  require_depth(cfg);
  const auto s = select(cfg);
  if (cfg.depth == 0) {
    emit.table("nu\tmult\n");
    return kExitOk;
  }
  emit.table(table_tsv(positive_roots(s.datum, cfg.depth), "mult"));
  return kExitOk;
}

int cmd_uminus(const RunConfig& cfg, const Emitter& emit) {
  require_depth(cfg);
  const auto s = select(cfg);
  emit.table(table_tsv(graded_dims_uminus(s.datum, cfg.depth), "dim"));
  return kExitOk;
}

int cmd_crystal(const RunConfig& cfg, const Emitter& emit, const Cache& cache) {
  require_depth(cfg);
  const auto s = select(cfg);
  const auto l = require_lambda(cfg, s.datum.rank());
  const auto g = cache.crystal_provider()(s.datum, l, Window::by_height(cfg.depth));
  std::vector<std::size_t> sigma;
  bool stable = true;
  for (std::size_t j = 0; j < l.size(); ++j) stable = stable && l[j] == l[s.index_perm[j]];
  if (stable) sigma = aut_action(g, s.index_perm);
  std::string t = "index\tnu\teps\tphi\tfixed\n";
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto& n = g.node(k);
    t += std::to_string(k) + "\t" + format_vector(n.nu) + "\t" + format_vector(n.eps) + "\t" + format_vector(n.phi) + "\t" +
         (stable && sigma[k] == k ? "1" : "0") + "\n";
  }
  t += "\nsrc\tlabel\tdst\n";
  for (std::size_t k = 0; k < g.size(); ++k)
    for (std::size_t j = 0; j < s.datum.rank(); ++j) {
      const auto e = g.f_edge(k, j);
      if (e.kind == Edge::Kind::Node) t += std::to_string(k) + "\t" + s.datum.labels[j] + "\t" + std::to_string(e.target) + "\n";
    }
  emit.table(t);
  return kExitOk;
}

int cmd_fixed(const RunConfig& cfg, const Emitter& emit, const Cache& cache, std::ostream& err) {
  require_depth(cfg);
  auto q = require_quiver(cfg);
  require_admissible(q);
  const auto a = q.automorphism_or_identity();
  const auto c = cartan_from_graph(q.graph);
  const auto l = require_lambda(cfg, c.rank());
  const auto folded_l = stable_subset(l, a);
  if (!folded_l) throw InputError("--lambda is not stable under the automorphism");
  const auto g = cache.crystal_provider()(c, l, Window::by_height(cfg.depth));
  const auto sigma = aut_action(g, a.vertex_perm);
  const auto fixed = fixed_census_table(g, sigma);
  const auto f = fold(q.graph, a);
  const auto table = cache.mult_provider()(f, *folded_l, Window::by_height(cfg.depth));

  std::map<RootVector, std::pair<std::int64_t, std::int64_t>, HeightLexLess> rows;
  for (const auto& [v, m] : fixed) rows[v].first = m;
  for (const auto& [nu, m] : table.entries) {
    auto v = unfold_vector(nu, a);
    if (height(v) <= cfg.depth) rows[v].second = m;
  }
  std::string t = "nu\torbit_nu\tfixed\tfolded\n";
  std::optional<std::string> bad;
  for (const auto& [v, mm] : rows) {
    t += format_vector(v) + "\t" + format_vector(*stable_subset(v, a)) + "\t" + std::to_string(mm.first) + "\t" +
         std::to_string(mm.second) + "\n";
    if (!bad && mm.first != mm.second) bad = format_vector(v);
  }
  emit.table(t);
  if (bad) {
    err << "foldkit: fixed-point census disagrees with folded Freudenthal at nu=(" << *bad << ")\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int cmd_char(const RunConfig& cfg, const Emitter& emit, const Cache& cache, std::ostream& err) {
  require_depth(cfg);
  const auto s = select(cfg);
  const auto ad = affine_data(s.datum, s.affine_node);
  const auto l = require_lambda(cfg, s.datum.rank());
  if (ad.twisted) err << "foldkit: note: twisted affine datum; exponents are unshifted and their normalization is unverified\n";
  emit.series(normalized_character(ad, l, cfg.depth, cache.mult_provider()));
  return kExitOk;
}

int cmd_chara(const RunConfig& cfg, const Emitter& emit, const Cache& cache, std::ostream& err) {
  require_depth(cfg);
  auto q = require_quiver(cfg);
  require_admissible(q);
  const auto w = require_lambda(cfg, q.graph.vertex_count());
  const auto r = ch_a(q, w, cfg.depth, cfg.crystal_check, cache.mult_provider(), cache.crystal_provider());
  if (r.twisted) err << "foldkit: note: twisted affine datum; exponents are unshifted and their normalization is unverified\n";
  emit.series(r.series);
  if (r.crystal_mismatch) {
    err << "foldkit: crystal fixed points disagree with folded Freudenthal: " << *r.crystal_mismatch << "\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const Emitter& emit, const Cache& cache) {
  require_depth(cfg);
  auto q = require_quiver(cfg);
  require_admissible(q);
  const auto w = require_lambda(cfg, q.graph.vertex_count());
  const auto r = verify_character(q, w, cfg.depth, cfg.crystal_check, std::nullopt, cache.mult_provider(),
                               cache.crystal_provider());
  emit.table(r.text());
  return r.verified() ? kExitOk : kExitMismatch;
}

int cmd_repcheck(const RunConfig& cfg, const Emitter& emit) {
  if (cfg.trials < 0) throw InputError("--trials must be nonnegative");
  RepcheckReport r;
  if (cfg.quiver) {
    auto q = load_quiver(*cfg.quiver);
    require_admissible(q);
    r = repcheck(q, cfg.seed, cfg.trials);
  } else {
    r = repcheck(cfg.seed, cfg.trials);
  }
  emit.table(r.tsv());
  return r.passed() ? kExitOk : kExitMismatch;
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.format != "tsv" && cfg.format != "latex") throw InputError("--format must be tsv or latex");
    const auto dir = Cache::resolve(cfg.cache);
    const Cache cache = dir ? Cache(*dir) : Cache();
    const Emitter emit{cfg, out};
    const auto& c = cfg.subcommand;
    if (c == "fold") return cmd_fold(cfg, emit);
    if (c == "classify") return cmd_classify(cfg, emit);
    if (c == "mult") return cmd_mult(cfg, emit, cache);
    if (c == "roots") return cmd_roots(cfg, emit);
    if (c == "uminus") return cmd_uminus(cfg, emit);
    if (c == "crystal") return cmd_crystal(cfg, emit, cache);
    if (c == "fixed") return cmd_fixed(cfg, emit, cache, err);
    if (c == "char") return cmd_char(cfg, emit, cache, err);
    if (c == "chara") return cmd_chara(cfg, emit, cache, err);
    if (c == "verify") return cmd_verify(cfg, emit, cache);
    if (c == "repcheck") return cmd_repcheck(cfg, emit);
    throw InputError("unknown subcommand '" + c + "'");
  } catch (const InputError& e) {
    err << "foldkit: error: " << e.what() << "\n"
        << "Run 'foldkit " << (cfg.subcommand.empty() ? std::string() : cfg.subcommand + " ") << "--help' for usage.\n";
    return kExitInput;
  } catch (const InternalError& e) {
    err << "foldkit: consistency check failed: " << e.what() << "\n";
    return kExitMismatch;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quiver folding, Kac-Moody multiplicities, crystals and twisted characters.", "foldkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  bool latex = false;

  struct Spec {
    const char* name;
    const char* help;
    bool datum, lambda, depth, cache, crystal_check, rep;
  };
  const Spec specs[] = {
      {"fold", "folded form, GCM and type of a quiver with automorphism", false, false, false, false, false, false},
      {"classify", "type of the datum", true, false, false, false, false, false},
      {"mult", "weight multiplicities of L(lambda)", true, true, true, true, false, false},
      {"roots", "root multiplicities", true, false, true, false, false, false},
      {"uminus", "graded dimensions of U^-", true, false, true, false, false, false},
      {"crystal", "crystal graph of B(lambda)", true, true, true, true, false, false},
      {"fixed", "automorphism-fixed crystal nodes against folded multiplicities", false, true, true, true, false, false},
      {"char", "normalized affine character", true, true, true, true, false, false},
      {"chara", "twisted character Ch^a(W)", false, true, true, true, true, false},
      {"verify", "compare Ch^a(W) with the folded normalized character", false, true, true, true, true, false},
      {"repcheck", "property suite for the quiver-variety formulas", false, false, false, false, false, true},
  };
  for (const auto& sp : specs) {
    auto* sub = app.add_subcommand(sp.name, sp.help);
    sub->callback([&cfg, name = std::string(sp.name)] { cfg.subcommand = name; });
    sub->add_option("--quiver", cfg.quiver, "quiver file");
    sub->add_option("--format", cfg.format, "output format: tsv or latex");
    sub->add_flag("--latex", latex, "same as --format latex");
    if (sp.datum) {
      sub->add_option("--cartan", cfg.cartan, "symmetric form, rows separated by ';' (e.g. \"2,-1;-1,2\")");
      sub->add_flag("--unfolded", cfg.unfolded, "use the graph datum even when the quiver has an automorphism");
    }
    if (std::string(sp.name) == "fold") sub->add_flag("--unfolded", cfg.unfolded, "print the unfolded datum");
    if (sp.lambda) sub->add_option("--lambda", cfg.lambda, "highest weight as pairings \"a,b,c\"");
    if (sp.depth) sub->add_option("--depth", cfg.depth, "height (or layer) cutoff");
    if (sp.cache) sub->add_option("--cache", cfg.cache, "cache directory (FOLDKIT_CACHE overrides)");
    if (sp.crystal_check) sub->add_flag("--with-crystal-check", cfg.crystal_check, "also count crystal fixed points");
    if (sp.rep) {
      sub->add_option("--seed", cfg.seed, "random seed");
      sub->add_option("--trials", cfg.trials, "random samples per property");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Error& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (latex) cfg.format = "latex";
  return run(cfg, out, err);
}

} // namespace foldkit
