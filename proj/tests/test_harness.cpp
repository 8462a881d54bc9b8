#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ltj/cli.hpp"
#include "ltj/errors.hpp"
#include "ltj/harness.hpp"
#include "ltj/io.hpp"

using namespace ltj;
using Catch::Approx;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("ltj_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

// max over b in (1, 20] of (b + 1/b - 2) / (b + 4), on a fine grid.
double sweep_oracle() {
  double best = 0.0;
  for (int k = 1; k <= 190000; ++k) {
    const double b = 1.0 + k * 1e-4;
    best = std::max(best, (b + 1.0 / b - 2.0) / (b + 4.0));
  }
  return best;
}

}  // namespace

TEST_CASE("ensemble examples") {
  EnsembleConfig cfg;
  cfg.count = 1;
  cfg.distribution = Distribution::RealOnly;
  cfg.support_min = cfg.support_max = 1;
  cfg.cap = 3.0;
  cfg.seed = 7;
  const auto specs = generate_ensemble(cfg);
  REQUIRE(specs.size() == 1);
  const auto& s = std::get<Jacobi1D>(specs[0]);
  REQUIRE(s.b.size() == 1);
  CHECK(s.a.empty());
  CHECK(s.b[0].imag() == 0.0);
  CHECK(std::abs(s.b[0].real()) <= 3.0);
  CHECK(generate_ensemble(cfg) == specs);

  cfg.cap = 0.0;
  cfg.count = 10;
  cfg.distribution = Distribution::Mixed;
  cfg.support_max = 6;
  for (const auto& spec : generate_ensemble(cfg)) {
    const auto& z = std::get<Jacobi1D>(spec);
    for (cplx b : z.b) CHECK(b == cplx(0.0));
    for (cplx a : z.a) CHECK(a == cplx(1.0));
    CHECK(compute_spectrum(spec).eigenvalues.size() == z.size());
  }
}

TEST_CASE("ensemble invariants", "[property]") {
  EnsembleConfig cfg;
  cfg.count = 200;
  cfg.seed = 123;
  const auto specs = generate_ensemble(cfg);
  CHECK(specs == generate_ensemble(cfg));
  cfg.seed = 124;
  CHECK(specs != generate_ensemble(cfg));

  int real = 0, imaginary = 0;
  for (const auto& spec : specs) {
    const auto& s = std::get<Jacobi1D>(spec);
    CHECK_NOTHROW(s.validate());
    CHECK(s.b.size() >= 1);
    CHECK(s.b.size() <= 20);
    CHECK(s.size() == s.b.size() + cfg.margin);
    for (cplx b : s.b) CHECK(std::abs(b) <= cfg.cap + 1e-12);
    for (cplx a : s.a) CHECK(std::abs(a - 1.0) <= cfg.cap + 1e-12);
    if (is_real(spec)) ++real;
    if (std::all_of(s.b.begin(), s.b.end(), [](cplx b) { return b.real() == 0.0; })) ++imaginary;
  }
  CHECK(real >= 40);
  CHECK(imaginary >= 40);

  // Spec i depends only on (seed, i).
  EnsembleConfig longer = cfg;
  longer.count = 250;
  const auto more = generate_ensemble(longer);
  const auto fewer = generate_ensemble(cfg);
  CHECK(std::equal(fewer.begin(), fewer.end(), more.begin()));

  EnsembleConfig lat;
  lat.family = Family::Lattice;
  lat.count = 30;
  lat.support_max = 6;
  for (const auto& spec : generate_ensemble(lat)) {
    const auto& l = std::get<LatticeJacobi>(spec);
    CHECK_NOTHROW(l.validate());
    CHECK(l.order() == 144);
  }
}

TEST_CASE("ensemble config parsing") {
  const EnsembleConfig c = EnsembleConfig::from_json(json::parse(
      R"({"family": "lattice", "count": 5, "seed": 9, "p": [1, 2], "alpha": [0.5], "distribution": "gaussian",
          "mode": "hard", "nu": 2, "box_side": 8})"));
  CHECK(c.family == Family::Lattice);
  CHECK(c.count == 5);
  CHECK(c.grid.p == std::vector<double>{1, 2});
  CHECK(c.box_side == 8);
  CHECK(EnsembleConfig::from_json(c.to_json()).to_json() == c.to_json());

  auto field = [](const char* text) {
    try {
      EnsembleConfig::from_json(json::parse(text));
    } catch (const SchemaError& e) {
      return e.field();
    }
    return std::string("<accepted>");
  };
  CHECK(field(R"({"count": 0})") == "count");
  CHECK(field(R"({"family": "2d"})") == "family");
  CHECK(field(R"({"distribution": "cauchy"})") == "distribution");
  CHECK(field(R"({"p": [0.5]})") == "p");
  CHECK(field(R"({"cap": "big"})") == "cap");
}

TEST_CASE("sharpness search basics") {
  const OperatorSpec free = Jacobi1D{{}, {0.0}, 0, TruncationMode::Approximate};
  SearchOptions once;
  once.budget = 1;
  const SearchState s = sharpness_search(free, TheoremId::T1_pow, {.p = 1.0}, once);
  CHECK(s.iterations == 1);
  CHECK(s.objective == 0.0);
  CHECK(s.trace == std::vector<double>{0.0});
  CHECK(mode_of(s.best_spec) == TruncationMode::Hard);
  CHECK(mode_of(s.current) == TruncationMode::Hard);
  CHECK_FALSE(s.counterexample);
  CHECK_THROWS_AS(sharpness_search(free, TheoremId::T1_pow, {.p = 1.0}, {.budget = 0}), std::invalid_argument);
}

TEST_CASE("sharpness search on a single real site", "[property]") {
  const OperatorSpec start = Jacobi1D{{}, {0.0}, 0, TruncationMode::Hard};
  SearchOptions opts;
  opts.budget = 2000;
  opts.real_only = true;
  const SearchState s = sharpness_search(start, TheoremId::T1_pow, {.p = 1.0}, opts);
  CHECK(s.iterations == 2000);
  CHECK(s.trace.size() == 2000);
  CHECK(std::is_sorted(s.trace.begin(), s.trace.end()));
  CHECK(s.best_objective > 4.0 / 21.0);
  CHECK(s.best_objective <= 1.0 + 1e-10);
  CHECK_FALSE(s.counterexample);
  CHECK(s.best_objective >= 0.99 * sweep_oracle());
  CHECK(is_real(s.best_spec));
}

TEST_CASE("sharpness search stays below one on other theorems", "[property]") {
  const OperatorSpec start = Jacobi1D{{1.0}, {0.5, 0.0}, 0, TruncationMode::Hard};
  for (TheoremId id : {TheoremId::T01_halfpow, TheoremId::T02_pow, TheoremId::T2_angular_pow, TheoremId::T3_outer_91}) {
    SearchOptions opts;
    opts.budget = 150;
    opts.seed = 3;
    const SearchState s = sharpness_search(start, id, {.p = 1.5, .alpha = 0.5, .theta = 0.4}, opts);
    CHECK(std::is_sorted(s.trace.begin(), s.trace.end()));
    CHECK(s.best_objective <= 1.0 + 1e-10);
    CHECK_FALSE(s.counterexample);
  }
}

TEST_CASE("stabilization diagnostics") {
  const OperatorSpec deep = Jacobi1D{{}, {3.0}, 60, TruncationMode::Approximate};
  const StabilizationDiagnostic d = stabilization_check(deep, TheoremId::T1_pow, {.p = 1.0});
  CHECK(d.order == 60);
  CHECK(d.doubled_order == 120);
  CHECK(d.relative_difference < 1e-10);
  CHECK_FALSE(d.flagged);

  const OperatorSpec shallow = Jacobi1D{{}, {1.05}, 60, TruncationMode::Approximate};
  const StabilizationDiagnostic s = stabilization_check(shallow, TheoremId::T1_pow, {.p = 1.0});
  CHECK(s.relative_difference >= 1e-6);
  CHECK(s.flagged);

  const OperatorSpec free = Jacobi1D{{}, {}, 30, TruncationMode::Approximate};
  CHECK(stabilization_check(free, TheoremId::T1_halfpow, {.p = 2.0}).relative_difference == 0.0);

  const StabilizationDiagnostic one = stabilization_check(deep, TheoremId::T3_strip_8, {.p = 1.0, .eigenvalue = cplx(10.0 / 3.0)});
  CHECK(one.relative_difference < 1e-10);

  CHECK_THROWS_AS(stabilization_check(Jacobi1D{{}, {3.0}, 60}, TheoremId::T1_pow, {.p = 1.0}), std::invalid_argument);
}

TEST_CASE("campaigns are deterministic and sound") {
  EnsembleConfig cfg;
  cfg.count = 24;
  cfg.seed = 5;
  cfg.grid = {{1.0, 2.0}, {0.0, 1.0}, {0.0, 0.5}};
  cfg.lemma_alpha = {-1.0, 1.0};
  const CampaignResult one = run_campaign(cfg, 1);
  const CampaignResult many = run_campaign(cfg, 4);
  CHECK(one.all_hold());
  CHECK(one.report_count > 0);
  CHECK(one.max_ratio < 1.0);
  CHECK(dump(one.to_json()) == dump(many.to_json()));
  REQUIRE(one.outcomes.size() == 24);
  CHECK(one.outcomes[3].index == 3);
  CHECK(one.outcomes[3].lemma1.size() == 4);
  CHECK(one.outcomes[3].lemma2.size() == 4);

  EnsembleConfig lat;
  lat.family = Family::Lattice;
  lat.count = 2;
  lat.box_side = 7;
  lat.support_max = 4;
  lat.grid = {{1.0}, {0.0, 1.0}, {0.0}};
  const CampaignResult l = run_campaign(lat, 2);
  CHECK(l.all_hold());
  CHECK(l.report_count > 0);
}

TEST_CASE("worker count from the environment") {
  setenv("LTJ_WORKERS", "3", 1);
  CHECK(default_workers() == 3);
  setenv("LTJ_WORKERS", "zero", 1);
  CHECK(default_workers() >= 1);
  unsetenv("LTJ_WORKERS");
}

TEST_CASE("cli: constants") {
  const Run r = cli({"constants", "--p-grid", "1", "--theta-grid", "0", "--nu", "1"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["c_p"].get<double>() == Approx(0.7351051939).epsilon(1e-9));
  CHECK(j[0]["L_cl"].get<double>() == Approx(0.2122066).epsilon(1e-7));
  CHECK(j[0]["c2"].get<double>() == Approx(2.8284271).epsilon(1e-7));
}

TEST_CASE("cli: verify, spectrum and lemmas") {
  const std::string free = write_temp("free.json", R"({"type": "jacobi1d", "b": [], "n": 20})");
  Run r = cli({"verify", free, "--theorems", "T1_pow", "--p", "1"});
  CHECK(r.code == 0);
  json reports = json::parse(r.out);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0]["theorem"] == "T1_pow");
  CHECK(reports[0]["lhs"] == 0.0);
  CHECK(reports[0]["holds"] == true);

  const std::string bad = write_temp("bad.json", R"({"type": "jacobi1d", "a": [1, 2]})");
  r = cli({"verify", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("a[0]") != std::string::npos);

  const std::string site = write_temp("site.json", R"({"type": "jacobi1d", "b": [[3, 4]], "n": 60})");
  const std::string csv = (std::filesystem::temp_directory_path() / "ltj_test_reports.csv").string();
  r = cli({"verify", site, "--p", "1,2", "--alpha", "0,1", "--theta", "0", "--csv", csv});
  CHECK(r.code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "theorem,p,alpha,theta,nu,lhs,rhs,ratio,holds,mode,diagnostics");

  r = cli({"spectrum", site});
  CHECK(r.code == 0);
  const json spectrum = json::parse(r.out);
  CHECK(spectrum.size() == 60);
  bool found = false;
  for (const auto& e : spectrum)
    if (std::abs(e["re"].get<double>() - 3.12) < 1e-8 && std::abs(e["im"].get<double>() - 3.84) < 1e-8) found = true;
  CHECK(found);

  r = cli({"lemmas", site, "--alpha-grid", "0,1", "--n-max", "3"});
  CHECK(r.code == 0);
  const json lemmas = json::parse(r.out);
  REQUIRE(lemmas.size() == 2);
  CHECK(lemmas[0]["lemma1"][0]["margins"].size() == 3);
  CHECK(lemmas[0]["lemma1"][0]["holds"] == true);

  CHECK(cli({"verify", "/nonexistent.json"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({}).code == 2);
}

TEST_CASE("cli: search and ensemble") {
  Run r = cli({"search", "--theorem", "T1_pow", "--budget", "50", "--seed", "1", "--real-only", "--trace"});
  CHECK(r.code == 0);
  const json s = json::parse(r.out);
  CHECK(s["iterations"] == 50);
  CHECK(s["trace"].size() == 50);
  CHECK(s["counterexample"] == false);

  CHECK(cli({"search", "--theorem", "T7"}).code == 2);

  const std::string config = write_temp("config.json", R"({"count": 6, "seed": 11, "p": [1], "alpha": [0, 1],
      "theta": [0], "lemma_alpha": [0]})");
  const std::string out = (std::filesystem::temp_directory_path() / "ltj_test_campaign.json").string();
  r = cli({"ensemble", "--config", config, "--out", out, "--workers", "2"});
  CHECK(r.code == 0);
  const json summary = json::parse(r.out);
  CHECK(summary["specs"] == 6);
  CHECK(summary["violations"] == 0);
  std::ifstream full(out);
  const json campaign = json::parse(full);
  CHECK(campaign["specs"].size() == 6);

  const std::string broken = write_temp("broken.json", R"({"count": -4})");
  CHECK(cli({"ensemble", "--config", broken}).code == 2);
}
