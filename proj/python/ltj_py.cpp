#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "ltj/bounds.hpp"
#include "ltj/constants.hpp"
#include "ltj/errors.hpp"
#include "ltj/harness.hpp"
#include "ltj/io.hpp"
#include "ltj/lemmas.hpp"

namespace py = pybind11;
using namespace ltj;

namespace {

// Dicts cross the boundary as JSON text.
json to_json(const py::object& obj) {
  return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

OperatorSpec spec_arg(const py::object& obj) { return spec_from_json(to_json(obj)); }

SpectrumSolver parse_solver(const std::string& s) {
  if (s == "auto") return SpectrumSolver::Auto;
  if (s == "complex") return SpectrumSolver::ComplexQR;
  if (s == "real") return SpectrumSolver::RealSymmetric;
  throw std::invalid_argument("solver must be auto, complex or real");
}

Branch parse_branch(const std::string& s) {
  if (s == "plus" || s == "+") return Branch::Plus;
  if (s == "minus" || s == "-") return Branch::Minus;
  throw std::invalid_argument("branch must be plus or minus");
}

BoundParams params(double p, std::optional<double> alpha, std::optional<double> theta, const std::string& branch,
                   const std::string& form, std::optional<std::pair<double, double>> eigenvalue) {
  BoundParams prm;
  prm.p = p;
  prm.alpha = alpha;
  prm.theta = theta;
  prm.branch = parse_branch(branch);
  if (form == "halfpow") prm.form = Form::HalfPower;
  else if (form == "pow") prm.form = Form::Power;
  else throw std::invalid_argument("form must be halfpow or pow");
  if (eigenvalue) prm.eigenvalue = cplx(eigenvalue->first, eigenvalue->second);
  return prm;
}

py::object lemma2_to_py(const Lemma2Report& r) {
  return to_py({{"p", canonical(r.p)},
                {"plus", majorization_to_json(r.plus)},
                {"minus", majorization_to_json(r.minus)},
                {"combined", majorization_to_json(r.combined)},
                {"holds", r.holds()}});
}

}  // namespace

PYBIND11_MODULE(_ltj, m) {
  m.doc() = "Eigenvalue bounds for complex Jacobi operators";

  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<IncompatibleTheorem>(m, "IncompatibleTheorem", PyExc_ValueError);

  m.def("normalize_spec", [](const py::object& spec) { return to_py(spec_to_json(spec_arg(spec))); },
        "Parse and re-serialize a spec dict.", py::arg("spec"));

  m.def(
      "spectrum",
      [](const py::object& spec, const std::string& solver) {
        return to_py(spectrum_to_json(compute_spectrum(spec_arg(spec), parse_solver(solver))));
      },
      "Eigenvalues of the finite section as [{re, im, mult}].", py::arg("spec"), py::arg("solver") = "auto");

  m.def(
      "evaluate",
      [](const std::string& theorem, const py::object& spec, double p, std::optional<double> alpha,
         std::optional<double> theta, const std::string& branch, const std::string& form,
         std::optional<std::pair<double, double>> eigenvalue) {
        const BoundParams prm = params(p, alpha, theta, branch, form, eigenvalue);
        return to_py(report_to_json(evaluate(parse_theorem(theorem), spec_arg(spec), prm)));
      },
      py::arg("theorem"), py::arg("spec"), py::arg("p") = 1.0, py::arg("alpha") = py::none(),
      py::arg("theta") = py::none(), py::arg("branch") = "plus", py::arg("form") = "halfpow",
      py::arg("eigenvalue") = py::none());

  m.def(
      "check_all",
      [](const py::object& spec, std::vector<double> p, std::vector<double> alpha, std::vector<double> theta) {
        return to_py(reports_to_json(check_all(spec_arg(spec), SweepGrid{p, alpha, theta})));
      },
      "Every applicable bound over the grid.", py::arg("spec"), py::arg("p") = std::vector<double>{1.0},
      py::arg("alpha") = std::vector<double>{0.0}, py::arg("theta") = std::vector<double>{0.0});

  m.def(
      "constants",
      [](double p, double theta, int nu) {
        const AngularConstants k = angular_constants(p, theta);
        return py::dict(py::arg("c_p") = c_p(p), py::arg("c1") = k.c1, py::arg("c2") = k.c2,
                        py::arg("L_cl") = semiclassical_L(p, nu));
      },
      py::arg("p") = 1.0, py::arg("theta") = 0.0, py::arg("nu") = 1);
  m.def("gamma", &gamma_fn, py::arg("x"));

  m.def(
      "lemma1",
      [](const py::object& spec, double alpha, const std::string& branch, std::size_t n_max) {
        const OperatorSpec s = spec_arg(spec);
        return to_py(majorization_to_json(lemma1_check(s, alpha, parse_branch(branch), n_max ? n_max : order_of(s))));
      },
      py::arg("spec"), py::arg("alpha") = 0.0, py::arg("branch") = "plus", py::arg("n_max") = 0);

  m.def(
      "lemma2",
      [](const py::object& spec, double alpha, double p, std::size_t n_max) {
        const OperatorSpec s = spec_arg(spec);
        return lemma2_to_py(lemma2_check(s, alpha, p, n_max ? n_max : order_of(s)));
      },
      py::arg("spec"), py::arg("alpha") = 0.0, py::arg("p") = 1.0, py::arg("n_max") = 0);

  m.def(
      "search",
      [](const std::string& theorem, const py::object& start, double p, std::optional<double> alpha,
         std::optional<double> theta, std::size_t budget, std::uint64_t seed, bool real_only, double cap) {
        OperatorSpec s = Jacobi1D{{}, {0.0}, 0, TruncationMode::Hard};
        if (!start.is_none()) s = spec_arg(start);
        SearchOptions so;
        so.budget = budget;
        so.seed = seed;
        so.real_only = real_only;
        so.cap = cap;
        SearchState st;
        {
          py::gil_scoped_release release;
          st = sharpness_search(s, parse_theorem(theorem), params(p, alpha, theta, "plus", "halfpow", std::nullopt), so);
        }
        return py::dict(py::arg("best_objective") = st.best_objective, py::arg("iterations") = st.iterations,
                        py::arg("counterexample") = st.counterexample, py::arg("diagnostics") = st.diagnostics,
                        py::arg("best_spec") = to_py(spec_to_json(st.best_spec)), py::arg("trace") = st.trace);
      },
      py::arg("theorem") = "T1_pow", py::arg("start") = py::none(), py::arg("p") = 1.0, py::arg("alpha") = py::none(),
      py::arg("theta") = py::none(), py::arg("budget") = 1000, py::arg("seed") = 0, py::arg("real_only") = false,
      py::arg("cap") = 20.0);

  m.def(
      "stabilization",
      [](const std::string& theorem, const py::object& spec, double p, std::optional<double> alpha) {
        BoundParams prm;
        prm.p = p;
        prm.alpha = alpha;
        const StabilizationDiagnostic d = stabilization_check(spec_arg(spec), parse_theorem(theorem), prm);
        return py::dict(py::arg("order") = d.order, py::arg("doubled_order") = d.doubled_order, py::arg("lhs") = d.lhs,
                        py::arg("doubled_lhs") = d.doubled_lhs, py::arg("relative_difference") = d.relative_difference,
                        py::arg("flagged") = d.flagged);
      },
      py::arg("theorem"), py::arg("spec"), py::arg("p") = 1.0, py::arg("alpha") = py::none());

  m.def(
      "ensemble",
      [](const py::object& config) {
        json out = json::array();
        for (const auto& s : generate_ensemble(EnsembleConfig::from_json(to_json(config)))) out.push_back(spec_to_json(s));
        return to_py(out);
      },
      py::arg("config"));

  m.def(
      "campaign",
      [](const py::object& config, std::size_t workers) {
        const EnsembleConfig cfg = EnsembleConfig::from_json(to_json(config));
        CampaignResult r;
        {
          py::gil_scoped_release release;
          r = run_campaign(cfg, workers ? workers : default_workers());
        }
        return to_py(r.to_json());
      },
      py::arg("config"), py::arg("workers") = 0);
}
