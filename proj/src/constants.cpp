#include "ltj/constants.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ltj {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

void require_p(double p) {
  if (!(p >= 1.0)) throw std::domain_error("exponent p must be >= 1");
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  const double z = x - 1.0;
  double series = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) series += kLanczosCoeffs[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  // t^(z+1/2) e^-t, split to delay overflow
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * series;
}

double c_p(double p) {
  require_p(p);
  return 0.5 * std::pow(3.0, p - 0.5) * gamma_fn(p + 1.0) / gamma_fn(p + 1.5) * gamma_fn(2.0) / gamma_fn(1.5);
}

AngularConstants angular_constants(double p, double theta) {
  require_p(p);
  if (!(theta >= 0.0 && theta < std::numbers::pi / 2)) throw std::domain_error("theta must lie in [0, pi/2)");
  const double widen = 1.0 + 2.0 * std::tan(theta);
  return {
      std::pow(2.0, p / 2 + 1.25) * std::pow(widen, p + 0.5) * c_p(p),
      std::pow(3.0, p - 1.0) * std::pow(2.0, p / 2 + 1.0) * std::pow(widen, p / 2),
  };
}

double semiclassical_L(double p, int nu) {
  require_p(p);
  if (nu < 1) throw std::domain_error("nu must be positive");
  const double n = static_cast<double>(nu);
  return std::pow(2.0, -n) * std::pow(std::numbers::pi, -n / 2) * gamma_fn(p + 1.0) / gamma_fn(p + n / 2 + 1.0);
}

}  // namespace ltj
