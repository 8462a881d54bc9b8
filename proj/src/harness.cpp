#include "ltj/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "ltj/errors.hpp"
#include "ltj/io.hpp"

namespace ltj {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

bool is_single_eigenvalue(TheoremId id) {
  switch (id) {
    case TheoremId::SA_single_74:
    case TheoremId::SA_single_73:
    case TheoremId::T3_strip_8:
    case TheoremId::T3_outer_91:
    case TheoremId::T3_angle_10:
      return true;
    default:
      return false;
  }
}

// Pointers to the perturbation coefficients of a spec. Off-diagonal entries
// are stored with their offset from 1 so that every coordinate is centred at 0.
struct Coordinate {
  cplx* value;
  bool off_diagonal;
};

std::vector<Coordinate> coordinates(OperatorSpec& spec) {
  std::vector<Coordinate> out;
  if (auto* s = std::get_if<Jacobi1D>(&spec)) {
    for (auto& b : s->b) out.push_back({&b, false});
    for (auto& a : s->a) out.push_back({&a, true});
  } else {
    auto& l = std::get<LatticeJacobi>(spec);
    for (auto& [site, v] : l.potential) out.push_back({&v, false});
    for (auto& [bond, v] : l.bonds) out.push_back({&v, true});
  }
  return out;
}

void nudge(Coordinate c, bool imaginary, double delta, double cap) {
  cplx d = c.off_diagonal ? *c.value - 1.0 : *c.value;
  d += imaginary ? cplx(0.0, delta) : cplx(delta, 0.0);
  if (std::abs(d) > cap) d *= cap / std::abs(d);
  *c.value = c.off_diagonal ? d + 1.0 : d;
}

void set_mode(OperatorSpec& spec, TruncationMode mode) {
  std::visit([mode](auto& s) { s.mode = mode; }, spec);
}

}  // namespace

SearchState sharpness_search(const OperatorSpec& start, TheoremId id, const BoundParams& params,
                             const SearchOptions& opts) {
  if (opts.budget < 1) throw std::invalid_argument("search budget must be >= 1");
  std::mt19937_64 rng(opts.seed);
  BoundParams prm = params;
  // The designated eigenvalue moves with the coefficients.
  if (is_single_eigenvalue(id)) prm.eigenvalue.reset();

  SearchState st;
  st.current = start;
  set_mode(st.current, TruncationMode::Hard);
  st.step = opts.initial_step;

  std::size_t failures = 0;
  auto objective = [&](const OperatorSpec& s) {
    try {
      return evaluate(id, s, prm).ratio;
    } catch (const IncompatibleTheorem&) {
      return 0.0;
    } catch (const ConvergenceError&) {
      ++failures;
      return -std::numeric_limits<double>::infinity();
    }
  };
  auto record = [&](double value, const OperatorSpec& s) {
    ++st.iterations;
    if (st.iterations == 1 || value > st.best_objective) {
      st.best_objective = value;
      st.best_spec = s;
    }
    st.trace.push_back(st.best_objective);
    if (value > 1.0 + kHoldsTolerance && !st.counterexample) {
      st.counterexample = true;
      st.diagnostics = "COUNTEREXAMPLE: " + std::string(to_string(id)) + " ratio=" + num(value) +
                       " spec=" + spec_to_json(s).dump();
    }
  };

  st.objective = objective(st.current);
  record(st.objective, st.current);

  std::size_t rejections = 0;
  const int parts = opts.real_only ? 1 : 2;
  while (st.iterations < opts.budget && !st.counterexample) {
    OperatorSpec trial = st.current;
    auto coords = coordinates(trial);
    if (coords.empty()) break;
    const std::size_t k = std::min(coords.size() * parts - 1,
                                   static_cast<std::size_t>(unit(rng) * static_cast<double>(coords.size() * parts)));
    nudge(coords[k / parts], k % parts == 1, st.step * (2.0 * unit(rng) - 1.0), opts.cap);

    const double value = objective(trial);
    record(value, trial);
    if (value >= st.objective) {
      st.current = std::move(trial);
      st.objective = value;
      rejections = 0;
    } else if (++rejections >= opts.patience) {
      st.step /= 2.0;
      rejections = 0;
    }

    if (st.step < opts.min_step && st.iterations < opts.budget && !st.counterexample) {
      st.step = opts.initial_step;
      st.current = st.best_spec;
      for (auto c : coordinates(st.current))
        for (int part = 0; part < parts; ++part)
          nudge(c, part == 1, 0.1 * opts.initial_step * (2.0 * unit(rng) - 1.0), opts.cap);
      st.objective = objective(st.current);
      record(st.objective, st.current);
    }
  }
  if (failures > 0) {
    if (!st.diagnostics.empty()) st.diagnostics += "; ";
    st.diagnostics += "eigensolver failures=" + std::to_string(failures);
  }
  return st;
}

StabilizationDiagnostic stabilization_check(const OperatorSpec& spec, TheoremId id, const BoundParams& params) {
  if (mode_of(spec) != TruncationMode::Approximate)
    throw std::invalid_argument("stabilization_check requires an Approximate-mode spec");
  const OperatorSpec big = doubled(spec);
  const SpectralData small_data{spec, compute_spectrum(spec), std::nullopt, {}};
  const SpectralData big_data{big, compute_spectrum(big), std::nullopt, {}};

  BoundParams big_params = params;
  if (is_single_eigenvalue(id) && params.eigenvalue) {
    // Follow the designated eigenvalue to its counterpart on the larger section.
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : big_data.spectrum.eigenvalues) {
      const double d = std::abs(e.value - *params.eigenvalue);
      if (d < best) {
        best = d;
        big_params.eigenvalue = e.value;
      }
    }
  }

  StabilizationDiagnostic d;
  d.order = order_of(spec);
  d.doubled_order = order_of(big);
  d.lhs = evaluate(id, small_data, params).lhs;
  d.doubled_lhs = evaluate(id, big_data, big_params).lhs;
  const double scale = std::max(std::abs(d.lhs), std::abs(d.doubled_lhs));
  d.relative_difference = scale == 0.0 ? 0.0 : std::abs(d.doubled_lhs - d.lhs) / scale;
  d.flagged = d.relative_difference >= kStabilizationTolerance;
  return d;
}

std::size_t default_workers() {
  if (const char* env = std::getenv("LTJ_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SpecOutcome run_spec(const OperatorSpec& spec, const EnsembleConfig& cfg, std::size_t index) {
  SpecOutcome out;
  out.index = index;
  out.spec = spec;
  try {
    const SpectralData data = SpectralData::analyze(spec);
    out.certified = data.spectrum.certified;
    out.reports = check_all(data, cfg.grid);
    if (!cfg.lemma_alpha.empty()) {
      const ComplexMatrix m = build(spec);
      const double edge = spectral_edge(spec);
      const std::size_t n_max = m.order();
      for (double a : cfg.lemma_alpha) {
        const Spectrum tilted = tilted_spectrum(m, a);
        for (Branch b : {Branch::Plus, Branch::Minus})
          out.lemma1.push_back(lemma1_check(data.spectrum, tilted, a, b, n_max, edge));
        for (double p : cfg.grid.p) out.lemma2.push_back(lemma2_check(data.spectrum, tilted, a, p, n_max, edge));
      }
    }
  } catch (const std::exception& e) {
    out.error = e.what();
    if (dynamic_cast<const ConvergenceError*>(&e)) out.certified = false;
  }
  return out;
}

CampaignResult run_campaign(const EnsembleConfig& cfg, std::size_t workers) {
  const std::vector<OperatorSpec> specs = generate_ensemble(cfg);
  CampaignResult result;
  result.outcomes.resize(specs.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) result.outcomes[i] = run_spec(specs[i], cfg, i);
  };
  workers = std::clamp<std::size_t>(workers, 1, specs.size());
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  for (const auto& o : result.outcomes) {
    if (!o.error.empty() || !o.certified) ++result.errors;
    result.report_count += o.reports.size();
    for (const auto& r : o.reports) {
      if (!r.holds) ++result.violations;
      result.max_ratio = std::max(result.max_ratio, r.ratio);
    }
    for (const auto& l : o.lemma1)
      if (!l.holds) ++result.lemma_violations;
    for (const auto& l : o.lemma2)
      if (!l.holds()) ++result.lemma_violations;
  }
  return result;
}

nlohmann::json CampaignResult::to_json() const {
  json specs = json::array();
  for (const auto& o : outcomes) {
    json lemma1 = json::array();
    for (const auto& l : o.lemma1) lemma1.push_back(majorization_to_json(l));
    json lemma2 = json::array();
    for (const auto& l : o.lemma2)
      lemma2.push_back({{"alpha", canonical(l.combined.alpha)},
                        {"p", canonical(l.p)},
                        {"plus", majorization_to_json(l.plus)},
                        {"minus", majorization_to_json(l.minus)},
                        {"combined", majorization_to_json(l.combined)},
                        {"holds", l.holds()}});
    json block{{"spec", o.index},
               {"operator", spec_to_json(o.spec)},
               {"certified", o.certified},
               {"reports", reports_to_json(o.reports)},
               {"lemma1", lemma1},
               {"lemma2", lemma2}};
    if (!o.error.empty()) block["error"] = o.error;
    specs.push_back(std::move(block));
  }
  return {{"summary",
           {{"specs", outcomes.size()},
            {"reports", report_count},
            {"violations", violations},
            {"lemma_violations", lemma_violations},
            {"errors", errors},
            {"max_ratio", std::isfinite(max_ratio) ? json(canonical(max_ratio)) : json(nullptr)},
            {"all_hold", all_hold()}}},
          {"specs", specs}};
}

}  // namespace ltj
