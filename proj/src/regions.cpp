#include "ltj/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ltj {

const char* to_string(Branch b) { return b == Branch::Plus ? "+" : "-"; }

RegionParams RegionParams::from_theta(double theta, Branch branch) {
  RegionParams p;
  p.theta = theta;
  p.alpha = std::tan(theta);
  p.branch = branch;
  p.validate();
  return p;
}

void RegionParams::validate() const {
  if (!theta) return;
  if (!(*theta >= 0.0 && *theta < std::numbers::pi / 2))
    throw std::domain_error("theta must lie in [0, pi/2)");
  if (std::abs(alpha - std::tan(*theta)) > 1e-12 * std::max(1.0, std::abs(alpha)))
    throw std::domain_error("alpha must equal tan(theta)");
}

double f_region(cplx lambda, double alpha, Branch branch, double edge) {
  if (branch == Branch::Plus) return (lambda.real() - edge) + alpha * lambda.imag();
  return -(lambda.real() + edge) - alpha * lambda.imag();
}

bool in_psi(cplx lambda, double alpha, Branch branch, double edge) {
  if (branch == Branch::Plus) return (lambda.real() - edge) + alpha * std::abs(lambda.imag()) > 0.0;
  return (lambda.real() + edge) - alpha * std::abs(lambda.imag()) < 0.0;
}

ClassifiedSpectrum classify(const Spectrum& spec, double alpha, double edge) {
  ClassifiedSpectrum cs;
  cs.alpha = alpha;
  cs.edge = edge;
  for (const auto& e : spec.eigenvalues) {
    const double fp = f_region(e.value, alpha, Branch::Plus, edge);
    const double fm = f_region(e.value, alpha, Branch::Minus, edge);
    // The half-planes are disjoint since f+ + f- = -2 edge < 0.
    if (fp > kBoundaryTolerance)
      cs.plus_list.push_back(e);
    else if (fm > kBoundaryTolerance)
      cs.minus_list.push_back(e);
    else
      cs.remainder.push_back(e);
  }
  auto order = [&](Branch b) {
    return [=](const Eigenvalue& x, const Eigenvalue& y) {
      const double fx = f_region(x.value, alpha, b, edge);
      const double fy = f_region(y.value, alpha, b, edge);
      if (fx != fy) return fx > fy;
      if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
      return x.value.imag() < y.value.imag();
    };
  };
  std::sort(cs.plus_list.begin(), cs.plus_list.end(), order(Branch::Plus));
  std::sort(cs.minus_list.begin(), cs.minus_list.end(), order(Branch::Minus));
  return cs;
}

double min_theta_for(cplx lambda, Branch branch) {
  const double x = lambda.real();
  const double y = std::abs(lambda.imag());
  if (x < -2.0 || x > 2.0) throw std::domain_error("min_theta_for: Re lambda outside [-2, 2]");
  if (y == 0.0) throw std::domain_error("min_theta_for: lambda lies in the essential spectrum [-2, 2]");
  const double t = branch == Branch::Plus ? (2.0 - x) / y : (2.0 + x) / y;
  return std::atan(t);
}

}  // namespace ltj
