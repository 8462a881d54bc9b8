#include "ltj/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>

#include <CLI11.hpp>

#include "ltj/bounds.hpp"
#include "ltj/constants.hpp"
#include "ltj/errors.hpp"
#include "ltj/harness.hpp"
#include "ltj/io.hpp"
#include "ltj/lemmas.hpp"

namespace ltj {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  return f;
}

Branch parse_branch(const std::string& s) {
  if (s == "+" || s == "plus") return Branch::Plus;
  if (s == "-" || s == "minus") return Branch::Minus;
  throw std::invalid_argument("branch must be plus or minus");
}

Form parse_form(const std::string& s) {
  if (s == "halfpow") return Form::HalfPower;
  if (s == "pow") return Form::Power;
  throw std::invalid_argument("form must be halfpow or pow");
}

SpectrumSolver parse_solver(const std::string& s) {
  if (s == "auto") return SpectrumSolver::Auto;
  if (s == "complex") return SpectrumSolver::ComplexQR;
  if (s == "real") return SpectrumSolver::RealSymmetric;
  throw std::invalid_argument("solver must be auto, complex or real");
}

struct Options {
  std::string spec_file;
  std::string solver = "auto";
  std::vector<std::string> theorems;
  SweepGrid grid;
  std::string csv;
  std::string out;
  std::vector<double> alpha_grid{0.0};
  std::size_t n_max = 0;
  std::string theorem = "T1_pow";
  std::size_t budget = 1000;
  std::uint64_t seed = 0;
  std::string start;
  double p = 1.0;
  std::optional<double> alpha;
  std::optional<double> theta;
  std::string branch = "plus";
  std::string form = "halfpow";
  double cap = 20.0;
  double step = 1.0;
  bool real_only = false;
  bool trace = false;
  std::string config;
  std::size_t workers = 0;
  std::vector<double> p_grid{1.0};
  std::vector<double> theta_grid{0.0};
  std::vector<int> nu{1};
};

int cmd_spectrum(const Options& o, std::ostream& out, std::ostream& err) {
  const Spectrum s = compute_spectrum(load_spec(o.spec_file), parse_solver(o.solver));
  out << dump(spectrum_to_json(s));
  if (!s.certified) {
    err << "spectrum not certified: residuals exceed " << s.tolerance << "\n";
    return kExitUncertified;
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const OperatorSpec spec = load_spec(o.spec_file);
  const SpectralData data = SpectralData::analyze(spec, parse_solver(o.solver));
  std::vector<BoundReport> reports = check_all(data, o.grid);
  if (!o.theorems.empty()) {
    std::set<TheoremId> wanted;
    for (const auto& t : o.theorems) wanted.insert(parse_theorem(t));
    std::erase_if(reports, [&](const BoundReport& r) { return !wanted.contains(r.theorem); });
    if (reports.empty()) err << "note: none of the requested theorems applies to this spec\n";
  }
  out << dump(reports_to_json(reports));
  if (!o.csv.empty()) {
    auto f = open_output(o.csv);
    write_reports_csv(f, reports);
  }
  if (!data.spectrum.certified) {
    err << "spectrum not certified\n";
    return kExitUncertified;
  }
  const auto bad = std::count_if(reports.begin(), reports.end(), [](const BoundReport& r) { return !r.holds; });
  if (bad > 0) {
    err << bad << " violated bound(s)\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_lemmas(const Options& o, std::ostream& out, std::ostream& err) {
  const OperatorSpec spec = load_spec(o.spec_file);
  const ComplexMatrix m = build(spec);
  const Spectrum s = eig_complex(m);
  const double edge = spectral_edge(spec);
  const std::size_t n_max = o.n_max > 0 ? o.n_max : m.order();
  json result = json::array();
  bool holds = true;
  for (double a : o.alpha_grid) {
    const Spectrum tilted = tilted_spectrum(m, a);
    json entry{{"alpha", canonical(a)}, {"lemma1", json::array()}, {"lemma2", json::array()}};
    for (Branch b : {Branch::Plus, Branch::Minus}) {
      const MajorizationReport r = lemma1_check(s, tilted, a, b, n_max, edge);
      holds = holds && r.holds;
      entry["lemma1"].push_back(majorization_to_json(r));
    }
    for (double p : o.grid.p) {
      const Lemma2Report r = lemma2_check(s, tilted, a, p, n_max, edge);
      holds = holds && r.holds();
      entry["lemma2"].push_back({{"p", canonical(p)},
                                 {"plus", majorization_to_json(r.plus)},
                                 {"minus", majorization_to_json(r.minus)},
                                 {"combined", majorization_to_json(r.combined)},
                                 {"holds", r.holds()}});
    }
    result.push_back(std::move(entry));
  }
  out << dump(result);
  if (!holds) {
    err << "lemma check failed\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_search(const Options& o, std::ostream& out, std::ostream& err) {
  OperatorSpec start = Jacobi1D{{}, {0.0}, 0, TruncationMode::Hard};
  if (!o.start.empty()) start = load_spec(o.start);
  const TheoremId id = parse_theorem(o.theorem);
  BoundParams prm;
  prm.p = o.p;
  prm.alpha = o.alpha;
  prm.theta = o.theta;
  prm.branch = parse_branch(o.branch);
  prm.form = parse_form(o.form);
  SearchOptions so;
  so.budget = o.budget;
  so.seed = o.seed;
  so.cap = o.cap;
  so.initial_step = o.step;
  so.real_only = o.real_only;
  const SearchState st = sharpness_search(start, id, prm, so);
  json j{{"theorem", to_string(id)},
         {"best_objective", canonical(st.best_objective)},
         {"iterations", st.iterations},
         {"step", canonical(st.step)},
         {"counterexample", st.counterexample},
         {"diagnostics", st.diagnostics},
         {"best_spec", spec_to_json(st.best_spec)}};
  if (o.trace) {
    json t = json::array();
    for (double x : st.trace) t.push_back(canonical(x));
    j["trace"] = std::move(t);
  }
  out << dump(j);
  if (st.counterexample) {
    err << st.diagnostics << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_ensemble(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream in(o.config);
  if (!in) throw SchemaError("<file>", "cannot open '" + o.config + "'");
  json cj;
  try {
    cj = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("<root>", std::string("invalid JSON: ") + e.what());
  }
  const EnsembleConfig cfg = EnsembleConfig::from_json(cj);
  const CampaignResult res = run_campaign(cfg, o.workers > 0 ? o.workers : default_workers());
  const json j = res.to_json();
  if (o.out.empty()) {
    out << dump(j);
  } else {
    auto f = open_output(o.out);
    f << dump(j);
    out << dump(j["summary"]);
  }
  if (!o.csv.empty()) {
    std::vector<BoundReport> all;
    for (const auto& oc : res.outcomes) all.insert(all.end(), oc.reports.begin(), oc.reports.end());
    sort_reports(all);
    auto f = open_output(o.csv);
    write_reports_csv(f, all);
  }
  if (res.errors > 0) err << res.errors << " spec(s) failed or were not certified\n";
  if (res.violations + res.lemma_violations > 0) {
    err << res.violations << " bound violation(s), " << res.lemma_violations << " lemma violation(s)\n";
    return kExitViolation;
  }
  return res.errors > 0 ? kExitUncertified : kExitOk;
}

int cmd_constants(const Options& o, std::ostream& out, std::ostream&) {
  json rows = json::array();
  for (double p : o.p_grid)
    for (double t : o.theta_grid)
      for (int nu : o.nu) {
        const AngularConstants k = angular_constants(p, t);
        rows.push_back({{"p", canonical(p)},
                        {"theta", canonical(t)},
                        {"nu", nu},
                        {"c_p", canonical(c_p(p))},
                        {"c1", canonical(k.c1)},
                        {"c2", canonical(k.c2)},
                        {"L_cl", canonical(semiclassical_L(p, nu))}});
      }
  out << dump(rows);
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eigenvalue inequalities for complex Jacobi operators", "ltj"};
  app.require_subcommand(1);
  Options o;

  auto* spectrum = app.add_subcommand("spectrum", "Print the point spectrum of a spec as JSON");
  spectrum->add_option("specfile", o.spec_file)->required();
  spectrum->add_option("--solver", o.solver, "auto | complex | real");

  auto* verify = app.add_subcommand("verify", "Evaluate bounds over a parameter grid");
  verify->add_option("specfile", o.spec_file)->required();
  verify->add_option("--theorems", o.theorems)->delimiter(',');
  verify->add_option("--p", o.grid.p)->delimiter(',');
  verify->add_option("--alpha", o.grid.alpha)->delimiter(',');
  verify->add_option("--theta", o.grid.theta, "angles in radians")->delimiter(',');
  verify->add_option("--csv", o.csv, "also write the reports as CSV");
  verify->add_option("--solver", o.solver);

  auto* lemmas = app.add_subcommand("lemmas", "Partial-sum majorization checks");
  lemmas->add_option("specfile", o.spec_file)->required();
  lemmas->add_option("--alpha-grid", o.alpha_grid)->delimiter(',');
  lemmas->add_option("--p", o.grid.p)->delimiter(',');
  lemmas->add_option("--n-max", o.n_max, "default: matrix order");

  auto* search = app.add_subcommand("search", "Hill-climb lhs/rhs of one theorem");
  search->add_option("--theorem", o.theorem);
  search->add_option("--budget", o.budget)->check(CLI::PositiveNumber);
  search->add_option("--seed", o.seed);
  search->add_option("--start", o.start, "spec file (default: b = [0], Hard mode)");
  search->add_option("--p", o.p);
  search->add_option("--alpha", o.alpha);
  search->add_option("--theta", o.theta);
  search->add_option("--branch", o.branch, "plus | minus");
  search->add_option("--form", o.form, "halfpow | pow");
  search->add_option("--cap", o.cap);
  search->add_option("--step", o.step);
  search->add_flag("--real-only", o.real_only);
  search->add_flag("--trace", o.trace, "include the objective trace");

  auto* ensemble = app.add_subcommand("ensemble", "Run a seeded verification campaign");
  ensemble->add_option("--config", o.config)->required();
  ensemble->add_option("--out", o.out, "write the full JSON here; stdout gets the summary");
  ensemble->add_option("--csv", o.csv);
  ensemble->add_option("--workers", o.workers, "default: LTJ_WORKERS or hardware concurrency");

  auto* constants = app.add_subcommand("constants", "Tabulate the bound constants");
  constants->add_option("--p-grid", o.p_grid)->delimiter(',');
  constants->add_option("--theta-grid", o.theta_grid)->delimiter(',');
  constants->add_option("--nu", o.nu)->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*spectrum) return cmd_spectrum(o, out, err);
    if (*verify) return cmd_verify(o, out, err);
    if (*lemmas) return cmd_lemmas(o, out, err);
    if (*search) return cmd_search(o, out, err);
    if (*ensemble) return cmd_ensemble(o, out, err);
    if (*constants) return cmd_constants(o, out, err);
  } catch (const SchemaError& e) {
    err << e.what() << "\n";
    return kExitBadInput;
  } catch (const ConvergenceError& e) {
    err << "eigensolver failed: " << e.what() << "\n";
    return kExitUncertified;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace ltj
