#include "ltj/bounds.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "ltj/errors.hpp"

namespace ltj {

namespace {

constexpr std::array<const char*, 18> kTheoremNames = {
    "T1_halfpow",         "T1_pow",         "T01_halfpow",  "T01_pow",          "T02_halfpow",
    "T02_pow",            "REFINED_52",     "T2_angular_halfpow", "T2_angular_pow", "SA_single_74",
    "SA_single_73",       "T3_strip_8",     "T3_outer_91",  "T3_angle_10",      "HS_multi_halfpow",
    "HS_multi_pow",       "T4_multi_halfpow", "T4_multi_pow",
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string num(cplx z) { return "(" + num(z.real()) + "," + num(z.imag()) + ")"; }

void append(std::string& diag, const std::string& item) {
  if (item.empty()) return;
  if (!diag.empty()) diag += "; ";
  diag += item;
}

double cut(double x) { return x > kBoundaryTolerance ? x : 0.0; }

bool is_lattice_theorem(TheoremId id) {
  return id == TheoremId::HS_multi_halfpow || id == TheoremId::HS_multi_pow || id == TheoremId::T4_multi_halfpow ||
         id == TheoremId::T4_multi_pow;
}

bool needs_real_spec(TheoremId id) {
  return id == TheoremId::SA_single_74 || id == TheoremId::SA_single_73 || id == TheoremId::HS_multi_halfpow ||
         id == TheoremId::HS_multi_pow;
}

bool is_single_eigenvalue(TheoremId id) {
  return id == TheoremId::SA_single_74 || id == TheoremId::SA_single_73 || id == TheoremId::T3_strip_8 ||
         id == TheoremId::T3_outer_91 || id == TheoremId::T3_angle_10;
}

double pow_q(double p, Form f, double nu = 1.0) { return f == Form::HalfPower ? p + nu / 2 : p; }

// c_p or 3^(p-1), the one-dimensional prefactor for each exponent family.
double family_constant(double p, Form f) { return f == Form::HalfPower ? c_p(p) : std::pow(3.0, p - 1.0); }

double pt(const OperatorSpec& spec, double q, CoefficientMap map, double alpha, double weight) {
  return perturbation_terms(spec, q, TermSelector{map, alpha, weight});
}

// Threshold below which an eigenvalue is taken to be real.
double imag_tolerance(const Spectrum& s) { return std::max(s.tolerance, 1e-12); }

// Single-eigenvalue evaluation: lhs and rhs for one designated eigenvalue.
struct SingleResult {
  double lhs;
  double rhs;
  std::optional<double> theta;
};

bool single_applicable(TheoremId id, cplx l, Branch b, double itol) {
  const double x = l.real();
  switch (id) {
    case TheoremId::SA_single_74:
    case TheoremId::SA_single_73:
    case TheoremId::T3_strip_8:
      return true;
    case TheoremId::T3_outer_91:
      return b == Branch::Plus ? x > 2.0 : x < -2.0;
    case TheoremId::T3_angle_10:
      return x >= -2.0 && x <= 2.0 && std::abs(l.imag()) > itol;
    default:
      return false;
  }
}

SingleResult single_bound(TheoremId id, const OperatorSpec& spec, cplx l, const BoundParams& prm) {
  const double p = prm.p;
  const Branch b = prm.branch;
  const bool plus = b == Branch::Plus;
  const CoefficientMap signed_part = plus ? CoefficientMap::TiltPositive : CoefficientMap::TiltNegative;
  switch (id) {
    case TheoremId::SA_single_74:
    case TheoremId::SA_single_73: {
      const Form f = id == TheoremId::SA_single_74 ? Form::HalfPower : Form::Power;
      const double lhs = std::pow(cut(plus ? l.real() - 2.0 : -(l.real() + 2.0)), p);
      return {lhs, family_constant(p, f) * pt(spec, pow_q(p, f), signed_part, 0.0, 2.0), std::nullopt};
    }
    case TheoremId::T3_strip_8: {
      const double lhs = std::pow(cut(plus ? l.real() - 2.0 : -(l.real() + 2.0)), p);
      return {lhs, family_constant(p, prm.form) * pt(spec, pow_q(p, prm.form), signed_part, 0.0, 2.0),
              std::nullopt};
    }
    case TheoremId::T3_outer_91: {
      const double lhs = std::pow(std::abs(l - (plus ? 2.0 : -2.0)), p);
      const double k = prm.form == Form::HalfPower ? std::pow(2.0, p / 2 + 0.25) * c_p(p)
                                                   : std::pow(2.0, p / 2) * std::pow(3.0, p - 1.0);
      return {lhs, k * pt(spec, pow_q(p, prm.form), CoefficientMap::Modulus, 0.0, 2.0), std::nullopt};
    }
    case TheoremId::T3_angle_10: {
      const double theta_min = min_theta_for(l, b);
      double theta = theta_min;
      if (prm.theta) {
        if (*prm.theta < theta_min - 1e-15)
          throw IncompatibleTheorem("T3_angle_10: eigenvalue " + num(l) + " is not in Psi for theta = " +
                                    num(*prm.theta) + " (minimum " + num(theta_min) + ")");
        theta = *prm.theta;
      }
      const double widen = 1.0 + 2.0 * std::tan(theta);
      const double lhs = std::pow(std::abs(l - (plus ? 2.0 : -2.0)), p);
      const double k = prm.form == Form::HalfPower ? c_p(p) * std::pow(widen, p + 0.5)
                                                   : std::pow(3.0, p - 1.0) * std::pow(widen, p);
      return {lhs, k * pt(spec, pow_q(p, prm.form), CoefficientMap::Modulus, 0.0, 2.0), theta};
    }
    default:
      throw std::logic_error("not a single-eigenvalue theorem");
  }
}

// Power sum used by the stabilization diagnostic: the same functional
// evaluated on the spectrum of the doubled section.
double aggregate_lhs(TheoremId id, const Spectrum& s, const BoundParams& prm, double edge) {
  const double p = prm.p;
  const double alpha = prm.alpha.value_or(0.0);
  switch (id) {
    case TheoremId::T1_halfpow:
    case TheoremId::T1_pow:
    case TheoremId::HS_multi_halfpow:
    case TheoremId::HS_multi_pow:
    case TheoremId::T4_multi_halfpow:
    case TheoremId::T4_multi_pow:
      return lhs_power_sum(s, p, LhsVariant::HalfPlane, 0.0, edge);
    case TheoremId::T01_halfpow:
    case TheoremId::T01_pow:
      return lhs_power_sum(s, p, LhsVariant::HalfPlane, alpha, edge);
    case TheoremId::T02_halfpow:
    case TheoremId::T02_pow:
      return lhs_power_sum(s, p, LhsVariant::AngularUnion, alpha, edge);
    case TheoremId::REFINED_52: {
      const ClassifiedSpectrum cs = classify(s, alpha, edge);
      const auto& list = prm.branch == Branch::Plus ? cs.plus_list : cs.minus_list;
      double sum = 0.0;
      for (const auto& e : list) sum += e.multiplicity * std::pow(f_region(e.value, alpha, prm.branch, edge), p);
      return sum;
    }
    case TheoremId::T2_angular_halfpow:
    case TheoremId::T2_angular_pow:
      return lhs_power_sum(s, p, LhsVariant::AngularModulus, std::tan(prm.theta.value_or(0.0)), edge);
    default:
      return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

// ---- names ------------------------------------------------------------------

const char* to_string(TheoremId id) { return kTheoremNames[static_cast<std::size_t>(id)]; }

TheoremId parse_theorem(std::string_view name) {
  for (std::size_t i = 0; i < kTheoremNames.size(); ++i)
    if (name == kTheoremNames[i]) return static_cast<TheoremId>(i);
  throw std::invalid_argument("unknown theorem id '" + std::string(name) + "'");
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> v;
    for (std::size_t i = 0; i < kTheoremNames.size(); ++i) v.push_back(static_cast<TheoremId>(i));
    return v;
  }();
  return ids;
}

const char* to_string(Form f) { return f == Form::HalfPower ? "halfpow" : "pow"; }
const char* to_string(AngularRoute r) { return r == AngularRoute::Direct ? "direct" : "proof"; }

void finalize(BoundReport& r) {
  if (r.rhs > 0.0)
    r.ratio = r.lhs / r.rhs;
  else
    r.ratio = r.lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  r.holds = r.lhs <= r.rhs * (1.0 + kHoldsTolerance);
  if (r.ratio > 1.0 - kNearTightBand && r.holds) append(r.diagnostics, "near-tight");
  if (!r.holds) append(r.diagnostics, "VIOLATION");
}

// ---- spectra ----------------------------------------------------------------

Spectrum compute_spectrum(const OperatorSpec& spec, SpectrumSolver solver) {
  const ComplexMatrix m = build(spec);
  if (solver == SpectrumSolver::Auto) solver = is_real(spec) ? SpectrumSolver::RealSymmetric : SpectrumSolver::ComplexQR;
  if (solver == SpectrumSolver::RealSymmetric) {
    if (!is_real(spec)) throw IncompatibleTheorem("real symmetric solver requested for a complex spec");
    return hermitian_spectrum(m);
  }
  return eig_complex(m);
}

SpectralData SpectralData::analyze(const OperatorSpec& spec, SpectrumSolver solver) {
  SpectralData d{spec, compute_spectrum(spec, solver), std::nullopt, {}};
  if (const auto* l = std::get_if<LatticeJacobi>(&spec))
    for (const auto& w : l->warnings()) append(d.notes, "warning: " + w);
  if (mode_of(spec) == TruncationMode::Approximate) {
    const OperatorSpec big = ltj::doubled(spec);
    if (order_of(big) <= 5000)
      d.doubled = compute_spectrum(big, solver);
    else
      append(d.notes, "stabilization skipped: doubled order exceeds 5000");
  }
  return d;
}

// ---- left-hand sides --------------------------------------------------------

double lhs_power_sum(const ClassifiedSpectrum& cs, double p) {
  double sum = 0.0;
  for (const auto& e : cs.plus_list) sum += e.multiplicity * std::pow(f_region(e.value, cs.alpha, Branch::Plus, cs.edge), p);
  for (const auto& e : cs.minus_list)
    sum += e.multiplicity * std::pow(f_region(e.value, cs.alpha, Branch::Minus, cs.edge), p);
  return sum;
}

double lhs_power_sum(const Spectrum& s, double p, LhsVariant variant, double alpha, double edge) {
  if (variant == LhsVariant::HalfPlane) return lhs_power_sum(classify(s, alpha, edge), p);
  double sum = 0.0;
  for (const auto& e : s.eigenvalues) {
    const double x = e.value.real();
    const double y = std::abs(e.value.imag());
    const double up = (x - edge) + alpha * y;
    const double down = -((x + edge) - alpha * y);
    double term = 0.0;
    if (variant == LhsVariant::AngularUnion) {
      term = std::pow(cut(up), p) + std::pow(cut(down), p);
    } else {
      if (up > kBoundaryTolerance) term += std::pow(std::abs(e.value - edge), p);
      if (down > kBoundaryTolerance) term += std::pow(std::abs(e.value + edge), p);
    }
    sum += e.multiplicity * term;
  }
  return sum;
}

// ---- evaluate ---------------------------------------------------------------

BoundReport evaluate(TheoremId id, const SpectralData& data, const BoundParams& prm) {
  const OperatorSpec& spec = data.spec;
  const bool lattice = std::holds_alternative<LatticeJacobi>(spec);
  if (!(prm.p >= 1.0)) throw std::domain_error("exponent p must be >= 1");
  if (is_lattice_theorem(id) != lattice)
    throw IncompatibleTheorem(std::string(to_string(id)) + (lattice ? " requires a Jacobi1D spec" : " requires a lattice spec"));
  if (needs_real_spec(id) && !is_real(spec))
    throw IncompatibleTheorem(std::string(to_string(id)) + " requires a real (self-adjoint) spec");

  const double p = prm.p;
  const double edge = spectral_edge(spec);
  BoundReport r;
  r.theorem = id;
  r.p = p;
  r.mode = mode_of(spec);
  r.diagnostics = data.notes;
  if (lattice) r.nu = std::get<LatticeJacobi>(spec).nu;

  if (is_single_eigenvalue(id)) {
    const double itol = imag_tolerance(data.spectrum);
    std::vector<cplx> candidates;
    if (prm.eigenvalue) {
      const cplx l = *prm.eigenvalue;
      const double match_tol = std::max(data.spectrum.tolerance, 1e-8 * std::max(1.0, std::abs(l)));
      const bool found = std::any_of(data.spectrum.eigenvalues.begin(), data.spectrum.eigenvalues.end(),
                                     [&](const Eigenvalue& e) { return std::abs(e.value - l) <= match_tol; });
      if (!found) throw IncompatibleTheorem(std::string(to_string(id)) + ": " + num(l) + " is not an eigenvalue");
      if (!single_applicable(id, l, prm.branch, itol))
        throw IncompatibleTheorem(std::string(to_string(id)) + ": eigenvalue " + num(l) + " lies outside the region of the " +
                                  to_string(prm.branch) + " branch");
      candidates.push_back(l);
    } else {
      for (const auto& e : data.spectrum.eigenvalues)
        if (single_applicable(id, e.value, prm.branch, itol)) candidates.push_back(e.value);
      if (candidates.empty())
        throw IncompatibleTheorem(std::string(to_string(id)) + ": no eigenvalue in the applicable region");
    }
    // Report the least favourable candidate.
    std::optional<BoundReport> best;
    for (cplx l : candidates) {
      BoundReport c = r;
      const SingleResult s = single_bound(id, spec, l, prm);
      c.lhs = s.lhs;
      c.rhs = s.rhs;
      c.theta = s.theta;
      std::string d = std::string("branch=") + to_string(prm.branch);
      if (id != TheoremId::SA_single_74 && id != TheoremId::SA_single_73) d += std::string("; form=") + to_string(prm.form);
      d += "; lambda=" + num(l);
      append(c.diagnostics, d);
      if (data.doubled && !data.doubled->eigenvalues.empty()) {
        double shift = std::numeric_limits<double>::infinity();
        for (const auto& e : data.doubled->eigenvalues) shift = std::min(shift, std::abs(e.value - l));
        const double rel = shift / std::max(1.0, std::abs(l));
        append(c.diagnostics,
               "stabilization_rel_diff=" + num(rel) + (rel >= kStabilizationTolerance ? " UNSTABLE" : ""));
      }
      finalize(c);
      if (!best || c.ratio > best->ratio) best = std::move(c);
    }
    return *best;
  }

  const double alpha = prm.alpha.value_or(0.0);
  switch (id) {
    case TheoremId::T1_halfpow:
    case TheoremId::T1_pow: {
      const Form f = id == TheoremId::T1_halfpow ? Form::HalfPower : Form::Power;
      r.lhs = lhs_power_sum(data.spectrum, p, LhsVariant::HalfPlane, 0.0, edge);
      r.rhs = family_constant(p, f) * pt(spec, pow_q(p, f), CoefficientMap::RealPart, 0.0, 4.0);
      break;
    }
    case TheoremId::T01_halfpow:
    case TheoremId::T01_pow: {
      const Form f = id == TheoremId::T01_halfpow ? Form::HalfPower : Form::Power;
      r.alpha = alpha;
      r.lhs = lhs_power_sum(data.spectrum, p, LhsVariant::HalfPlane, alpha, edge);
      r.rhs = family_constant(p, f) * pt(spec, pow_q(p, f), CoefficientMap::Tilt, alpha, 4.0);
      break;
    }
    case TheoremId::T02_halfpow:
    case TheoremId::T02_pow: {
      if (alpha < 0.0)
        throw IncompatibleTheorem("T02 is stated for alpha >= 0; negative slopes correspond to the adjoint spec");
      const Form f = id == TheoremId::T02_halfpow ? Form::HalfPower : Form::Power;
      const double q = pow_q(p, f);
      r.alpha = alpha;
      r.lhs = lhs_power_sum(data.spectrum, p, LhsVariant::AngularUnion, alpha, edge);
      r.rhs = family_constant(p, f) *
              (pt(spec, q, CoefficientMap::Tilt, alpha, 4.0) + pt(spec, q, CoefficientMap::Tilt, -alpha, 4.0));
      break;
    }
    case TheoremId::REFINED_52: {
      r.alpha = alpha;
      r.lhs = aggregate_lhs(id, data.spectrum, prm, edge);
      const CoefficientMap signed_part =
          prm.branch == Branch::Plus ? CoefficientMap::TiltPositive : CoefficientMap::TiltNegative;
      r.rhs = family_constant(p, prm.form) * pt(spec, pow_q(p, prm.form), signed_part, alpha, 2.0);
      append(r.diagnostics, std::string("branch=") + to_string(prm.branch) + "; form=" + to_string(prm.form));
      break;
    }
    case TheoremId::T2_angular_halfpow:
    case TheoremId::T2_angular_pow: {
      const double theta = prm.theta.value_or(0.0);
      const RegionParams region = RegionParams::from_theta(theta);
      const Form f = id == TheoremId::T2_angular_halfpow ? Form::HalfPower : Form::Power;
      const double q = pow_q(p, f);
      r.theta = theta;
      r.lhs = lhs_power_sum(data.spectrum, p, LhsVariant::AngularModulus, region.alpha, edge);
      if (prm.route == AngularRoute::Direct) {
        const AngularConstants k = angular_constants(p, theta);
        r.rhs = (f == Form::HalfPower ? k.c1 : k.c2) * pt(spec, q, CoefficientMap::Modulus, 0.0, 4.0);
      } else {
        const double slope = 1.0 + 2.0 * region.alpha;
        r.rhs = family_constant(p, f) *
                (pt(spec, q, CoefficientMap::Tilt, slope, 4.0) + pt(spec, q, CoefficientMap::Tilt, -slope, 4.0));
      }
      append(r.diagnostics, std::string("route=") + to_string(prm.route));
      break;
    }
    case TheoremId::HS_multi_halfpow:
    case TheoremId::HS_multi_pow:
    case TheoremId::T4_multi_halfpow:
    case TheoremId::T4_multi_pow: {
      const int nu = std::get<LatticeJacobi>(spec).nu;
      const double n = nu;
      const bool half = id == TheoremId::HS_multi_halfpow || id == TheoremId::T4_multi_halfpow;
      r.lhs = lhs_power_sum(data.spectrum, p, LhsVariant::HalfPlane, 0.0, edge);
      if (half) {
        const double k = std::pow(2.0, n) * std::pow(2.0 * n + 1.0, p + n / 2 - 1.0) * semiclassical_L(p, nu);
        r.rhs = k * pt(spec, p + n / 2, CoefficientMap::RealPart, 0.0, 2.0);
      } else {
        r.rhs = std::pow(2.0 * n + 1.0, p - 1.0) * pt(spec, p, CoefficientMap::RealPart, 0.0, 2.0);
      }
      break;
    }
    default:
      throw std::logic_error("unhandled theorem id");
  }

  if (data.doubled) {
    const double big = aggregate_lhs(id, *data.doubled, prm, edge);
    const double scale = std::max(std::abs(r.lhs), std::abs(big));
    const double rel = scale == 0.0 ? 0.0 : std::abs(big - r.lhs) / scale;
    append(r.diagnostics, "stabilization_rel_diff=" + num(rel) + (rel >= kStabilizationTolerance ? " UNSTABLE" : ""));
  }
  finalize(r);
  return r;
}

BoundReport evaluate(TheoremId id, const OperatorSpec& spec, const BoundParams& params) {
  return evaluate(id, SpectralData::analyze(spec), params);
}

// ---- sweeps -----------------------------------------------------------------

void sort_reports(std::vector<BoundReport>& reports) {
  auto key = [](const BoundReport& r) {
    return std::make_tuple(static_cast<int>(r.theorem), r.p, r.alpha.value_or(-1e300), r.theta.value_or(-1e300),
                           r.nu.value_or(0), std::cref(r.diagnostics));
  };
  std::stable_sort(reports.begin(), reports.end(), [&](const BoundReport& a, const BoundReport& b) {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    return key(a) < key(b);
  });
}

std::vector<BoundReport> check_all(const SpectralData& data, const SweepGrid& grid) {
  std::vector<BoundReport> out;
  const OperatorSpec& spec = data.spec;
  auto run = [&](TheoremId id, BoundParams prm) { out.push_back(evaluate(id, data, prm)); };

  if (const auto* lattice = std::get_if<LatticeJacobi>(&spec)) {
    for (double p : grid.p) {
      run(TheoremId::T4_multi_halfpow, {.p = p});
      run(TheoremId::T4_multi_pow, {.p = p});
    }
    // Self-adjoint lattice bounds on the tilted (real) operators.
    std::vector<double> alphas = is_real(spec) ? std::vector<double>{0.0} : grid.alpha;
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    for (double a : alphas) {
      const SpectralData tilted = SpectralData::analyze(tilt(*lattice, a));
      for (double p : grid.p)
        for (TheoremId id : {TheoremId::HS_multi_halfpow, TheoremId::HS_multi_pow}) {
          BoundReport r = evaluate(id, tilted, {.p = p});
          r.alpha = a;
          out.push_back(std::move(r));
        }
    }
    sort_reports(out);
    return out;
  }

  const double itol = imag_tolerance(data.spectrum);
  const bool real = is_real(spec);
  for (double p : grid.p) {
    run(TheoremId::T1_halfpow, {.p = p});
    run(TheoremId::T1_pow, {.p = p});
    for (double a : grid.alpha) {
      run(TheoremId::T01_halfpow, {.p = p, .alpha = a});
      run(TheoremId::T01_pow, {.p = p, .alpha = a});
      if (a >= 0.0) {
        run(TheoremId::T02_halfpow, {.p = p, .alpha = a});
        run(TheoremId::T02_pow, {.p = p, .alpha = a});
      }
      for (Branch b : {Branch::Plus, Branch::Minus})
        for (Form f : {Form::HalfPower, Form::Power})
          run(TheoremId::REFINED_52, {.p = p, .alpha = a, .branch = b, .form = f});
    }
    for (double t : grid.theta)
      for (AngularRoute route : {AngularRoute::Direct, AngularRoute::ProofRoute}) {
        run(TheoremId::T2_angular_halfpow, {.p = p, .theta = t, .route = route});
        run(TheoremId::T2_angular_pow, {.p = p, .theta = t, .route = route});
      }

    for (const auto& e : data.spectrum.eigenvalues) {
      const cplx l = e.value;
      for (Form f : {Form::HalfPower, Form::Power}) {
        if (l.real() > 2.0 || l.real() < -2.0) {
          const Branch b = l.real() > 2.0 ? Branch::Plus : Branch::Minus;
          run(TheoremId::T3_strip_8, {.p = p, .branch = b, .form = f, .eigenvalue = l});
          run(TheoremId::T3_outer_91, {.p = p, .branch = b, .form = f, .eigenvalue = l});
        } else if (std::abs(l.imag()) > itol) {
          for (Branch b : {Branch::Plus, Branch::Minus})
            run(TheoremId::T3_angle_10, {.p = p, .branch = b, .form = f, .eigenvalue = l});
        }
      }
      if (real && (l.real() > 2.0 || l.real() < -2.0)) {
        const Branch b = l.real() > 2.0 ? Branch::Plus : Branch::Minus;
        run(TheoremId::SA_single_74, {.p = p, .branch = b, .eigenvalue = l});
        run(TheoremId::SA_single_73, {.p = p, .branch = b, .eigenvalue = l});
      }
    }
  }
  sort_reports(out);
  return out;
}

std::vector<BoundReport> check_all(const OperatorSpec& spec, const SweepGrid& grid) {
  return check_all(SpectralData::analyze(spec), grid);
}

}  // namespace ltj
