#pragma once

// Eigenvalue power sums versus perturbation sums for every inequality of the
// one-dimensional and lattice families.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ltj/constants.hpp"
#include "ltj/eigen.hpp"
#include "ltj/operators.hpp"
#include "ltj/regions.hpp"

namespace ltj {

enum class TheoremId {
  T1_halfpow,
  T1_pow,
  T01_halfpow,
  T01_pow,
  T02_halfpow,
  T02_pow,
  REFINED_52,
  T2_angular_halfpow,
  T2_angular_pow,
  SA_single_74,
  SA_single_73,
  T3_strip_8,
  T3_outer_91,
  T3_angle_10,
  HS_multi_halfpow,
  HS_multi_pow,
  T4_multi_halfpow,
  T4_multi_pow,
};

const char* to_string(TheoremId id);
/// Throws std::invalid_argument for unknown names.
TheoremId parse_theorem(std::string_view name);
const std::vector<TheoremId>& all_theorems();

/// Exponent family for ids that come in both: p + 1/2 (or p + nu/2) versus p.
enum class Form { HalfPower, Power };
/// Angular bound checked with its closed-form constant, or through the
/// angular-union bound at slope 1 + 2 tan(theta) that it is derived from.
enum class AngularRoute { Direct, ProofRoute };
enum class SpectrumSolver { Auto, ComplexQR, RealSymmetric };

const char* to_string(Form f);
const char* to_string(AngularRoute r);

struct BoundParams {
  double p = 1.0;
  std::optional<double> alpha;
  std::optional<double> theta;
  Branch branch = Branch::Plus;               // REFINED_52, SA_single_*, T3_*
  Form form = Form::HalfPower;                // REFINED_52, T3_*
  AngularRoute route = AngularRoute::Direct;  // T2_angular_*
  std::optional<cplx> eigenvalue;             // SA_single_*, T3_*
};

inline constexpr double kHoldsTolerance = 1e-10;
inline constexpr double kNearTightBand = 1e-6;
inline constexpr double kStabilizationTolerance = 1e-6;

struct BoundReport {
  TheoremId theorem = TheoremId::T1_halfpow;
  double p = 1.0;
  std::optional<double> alpha;
  std::optional<double> theta;
  std::optional<int> nu;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool holds = true;
  TruncationMode mode = TruncationMode::Hard;
  std::string diagnostics;
};

/// Sets ratio and holds from lhs and rhs, flags near-tight reports.
void finalize(BoundReport& r);

/// An operator together with its computed point spectrum. In Approximate mode
/// the spectrum of the doubled section is kept for stabilization diagnostics.
struct SpectralData {
  OperatorSpec spec;
  Spectrum spectrum;
  std::optional<Spectrum> doubled;
  std::string notes;

  static SpectralData analyze(const OperatorSpec& spec, SpectrumSolver solver = SpectrumSolver::Auto);
};

Spectrum compute_spectrum(const OperatorSpec& spec, SpectrumSolver solver = SpectrumSolver::Auto);

enum class LhsVariant {
  HalfPlane,       // sum (f+)_+^p + (f-)_+^p at slope alpha
  AngularUnion,    // ((Re l - e) + alpha |Im l|)_+^p + ((Re l + e) - alpha |Im l|)_-^p
  AngularModulus,  // |l - e|^p over Psi+ members plus |l + e|^p over Psi- members
};

/// Multiplicity-weighted half-plane sum over a classified spectrum.
double lhs_power_sum(const ClassifiedSpectrum& cs, double p);
double lhs_power_sum(const Spectrum& s, double p, LhsVariant variant, double alpha, double edge = 2.0);

BoundReport evaluate(TheoremId id, const SpectralData& data, const BoundParams& params);
BoundReport evaluate(TheoremId id, const OperatorSpec& spec, const BoundParams& params);

struct SweepGrid {
  std::vector<double> p{1.0};
  std::vector<double> alpha{0.0};
  std::vector<double> theta{0.0};
};

/// Every applicable theorem over the Cartesian grid, sorted by ratio descending.
std::vector<BoundReport> check_all(const SpectralData& data, const SweepGrid& grid);
std::vector<BoundReport> check_all(const OperatorSpec& spec, const SweepGrid& grid);

/// Deterministic ordering: ratio descending, then theorem and parameters.
void sort_reports(std::vector<BoundReport>& reports);

}  // namespace ltj
