#pragma once

// Seeded ensembles, sharpness search, truncation diagnostics and full
// verification campaigns.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ltj/bounds.hpp"
#include "ltj/lemmas.hpp"
#include "ltj/operators.hpp"

namespace ltj {

enum class Family { OneD, Lattice };
enum class Distribution { UniformDisc, Gaussian, RealOnly, ImaginaryOnly, Mixed };

struct EnsembleConfig {
  Family family = Family::OneD;
  std::size_t support_min = 1;
  std::size_t support_max = 20;
  double cap = 5.0;  // bound on |b| and |a - 1|
  Distribution distribution = Distribution::Mixed;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  TruncationMode mode = TruncationMode::Hard;
  std::size_t margin = kDefaultMargin;  // 1D: N = support + margin
  int nu = 2;
  int box_side = 12;
  SweepGrid grid;
  std::vector<double> lemma_alpha;  // empty: no lemma checks

  void validate() const;
  static EnsembleConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Deterministic in cfg.seed; spec i depends only on (seed, i).
std::vector<OperatorSpec> generate_ensemble(const EnsembleConfig& cfg);

struct SearchOptions {
  std::size_t budget = 1000;  // objective evaluations, start included
  std::uint64_t seed = 0;
  double initial_step = 1.0;
  double cap = 20.0;  // bound on |b| and |a - 1| during the search
  bool real_only = false;
  std::size_t patience = 20;  // consecutive rejections before halving the step
  double min_step = 1e-6;     // below this the walk restarts from the best point
};

struct SearchState {
  OperatorSpec current;
  double objective = 0.0;
  double step = 1.0;
  std::size_t iterations = 0;
  OperatorSpec best_spec;
  double best_objective = 0.0;
  std::vector<double> trace;  // best objective after each evaluation
  bool counterexample = false;
  std::string diagnostics;
};

/// Random coordinate hill-climb on the coefficients, maximizing lhs/rhs of
/// one theorem in Hard mode.
SearchState sharpness_search(const OperatorSpec& start, TheoremId id, const BoundParams& params,
                             const SearchOptions& opts = {});

struct StabilizationDiagnostic {
  std::size_t order = 0;
  std::size_t doubled_order = 0;
  double lhs = 0.0;
  double doubled_lhs = 0.0;
  double relative_difference = 0.0;
  bool flagged = false;
};

/// Compares the left-hand side on the section and on the doubled section.
/// Requires Approximate mode.
StabilizationDiagnostic stabilization_check(const OperatorSpec& spec, TheoremId id, const BoundParams& params);

struct SpecOutcome {
  std::size_t index = 0;
  OperatorSpec spec;
  bool certified = true;
  std::vector<BoundReport> reports;
  std::vector<MajorizationReport> lemma1;
  std::vector<Lemma2Report> lemma2;
  std::string error;
};

struct CampaignResult {
  std::vector<SpecOutcome> outcomes;
  std::size_t report_count = 0;
  std::size_t violations = 0;
  std::size_t lemma_violations = 0;
  std::size_t errors = 0;
  double max_ratio = 0.0;

  bool all_hold() const { return violations == 0 && lemma_violations == 0 && errors == 0; }
  nlohmann::json to_json() const;
};

/// LTJ_WORKERS if set, else the available hardware parallelism.
std::size_t default_workers();

/// Evaluates one spec: every applicable bound over cfg.grid, and the lemma
/// checks for each slope in cfg.lemma_alpha.
SpecOutcome run_spec(const OperatorSpec& spec, const EnsembleConfig& cfg, std::size_t index = 0);

/// Worker pool over the ensemble; outcomes are stored in ensemble order.
CampaignResult run_campaign(const EnsembleConfig& cfg, std::size_t workers = default_workers());

}  // namespace ltj
