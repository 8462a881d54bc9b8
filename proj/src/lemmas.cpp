#include "ltj/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltj {

double MajorizationReport::min_slack() const {
  double s = 0.0;
  bool first = true;
  for (const auto& m : margins) {
    s = first ? m.slack : std::min(s, m.slack);
    first = false;
  }
  return s;
}

namespace {

// Region-function values of J's eigenvalues on one branch, largest first,
// repeated by multiplicity.
std::vector<double> lambda_terms(const Spectrum& s, double alpha, Branch b, double edge) {
  const ClassifiedSpectrum cs = classify(s, alpha, edge);
  const auto& list = b == Branch::Plus ? cs.plus_list : cs.minus_list;
  std::vector<double> out;
  for (const auto& e : list) out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), f_region(e.value, alpha, b, edge));
  return out;
}

// mu - edge for mu > edge (Plus) or -(mu + edge) for mu < -edge (Minus),
// largest first, repeated by multiplicity.
std::vector<double> mu_terms(const Spectrum& tilted, Branch b, double edge) {
  std::vector<double> out;
  for (const auto& e : tilted.eigenvalues) {
    const double mu = e.value.real();
    const double v = b == Branch::Plus ? mu - edge : -(mu + edge);
    if (v > kBoundaryTolerance) out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), v);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double term_at(const std::vector<double>& v, std::size_t j) { return j < v.size() ? v[j] : 0.0; }

MajorizationReport compare(const std::vector<double>& lam, const std::vector<double>& mu, double alpha,
                           std::string branch, std::size_t n_max, double sign) {
  MajorizationReport r;
  r.alpha = alpha;
  r.branch = std::move(branch);
  r.n_max = n_max;
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    lhs += sign * term_at(lam, n - 1);
    rhs += sign * term_at(mu, n - 1);
    const double slack = sign * (rhs - lhs);
    r.margins.push_back({n, lhs, rhs, slack});
    if (slack < -kSlackTolerance) r.holds = false;
  }
  return r;
}

}  // namespace

Spectrum tilted_spectrum(const ComplexMatrix& m, double alpha) { return hermitian_spectrum(hermitian_tilt(m, alpha)); }

MajorizationReport lemma1_check(const Spectrum& spectrum, const Spectrum& tilted, double alpha, Branch branch,
                                std::size_t n_max, double edge) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  // Minus branch partial sums are of (Re l + edge) + alpha Im l = -f-(l) and mu + edge.
  const double sign = branch == Branch::Plus ? 1.0 : -1.0;
  return compare(lambda_terms(spectrum, alpha, branch, edge), mu_terms(tilted, branch, edge), alpha,
                 to_string(branch), n_max, sign);
}

MajorizationReport lemma1_check(const ComplexMatrix& j, double alpha, Branch branch, std::size_t n_max, double edge) {
  return lemma1_check(eig_complex(j), tilted_spectrum(j, alpha), alpha, branch, n_max, edge);
}

MajorizationReport lemma1_check(const OperatorSpec& spec, double alpha, Branch branch, std::size_t n_max) {
  return lemma1_check(build(spec), alpha, branch, n_max, spectral_edge(spec));
}

Lemma2Report lemma2_check(const Spectrum& spectrum, const Spectrum& tilted, double alpha, double p, std::size_t n_max,
                          double edge) {
  if (!(p >= 1.0)) throw std::domain_error("exponent p must be >= 1");
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  auto powered = [p](std::vector<double> v) {
    for (auto& x : v) x = std::pow(x, p);
    return v;
  };
  Lemma2Report r;
  r.p = p;
  r.plus = compare(powered(lambda_terms(spectrum, alpha, Branch::Plus, edge)), powered(mu_terms(tilted, Branch::Plus, edge)),
                   alpha, "+", n_max, 1.0);
  r.minus = compare(powered(lambda_terms(spectrum, alpha, Branch::Minus, edge)),
                    powered(mu_terms(tilted, Branch::Minus, edge)), alpha, "-", n_max, 1.0);
  r.combined.alpha = alpha;
  r.combined.branch = "+-";
  r.combined.n_max = n_max;
  for (std::size_t k = 0; k < n_max; ++k) {
    const Margin& a = r.plus.margins[k];
    const Margin& b = r.minus.margins[k];
    const double lhs = a.lhs + b.lhs, rhs = a.rhs + b.rhs;
    r.combined.margins.push_back({k + 1, lhs, rhs, rhs - lhs});
    if (rhs - lhs < -kSlackTolerance) r.combined.holds = false;
  }
  return r;
}

Lemma2Report lemma2_check(const OperatorSpec& spec, double alpha, double p, std::size_t n_max) {
  const ComplexMatrix j = build(spec);
  return lemma2_check(eig_complex(j), tilted_spectrum(j, alpha), alpha, p, n_max, spectral_edge(spec));
}

}  // namespace ltj
