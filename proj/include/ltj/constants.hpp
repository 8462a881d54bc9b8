#pragma once

namespace ltj {

/// Euler Gamma by the Lanczos approximation (g = 7, 9 coefficients).
/// Relative error below 1e-13 on [0.5, 50]. Throws std::domain_error for x <= 0.
double gamma_fn(double x);

/// One-dimensional Lieb-Thirring constant
///   c_p = 1/2 * 3^(p - 1/2) * Gamma(p+1)/Gamma(p+3/2) * Gamma(2)/Gamma(3/2),  p >= 1.
double c_p(double p);

struct AngularConstants {
  double c1;  // 2^(p/2 + 5/4) (1 + 2 tan theta)^(p + 1/2) c_p
  double c2;  // 3^(p-1) 2^(p/2 + 1) (1 + 2 tan theta)^(p/2)
};

/// Constants of the angular bounds for p >= 1, 0 <= theta < pi/2.
AngularConstants angular_constants(double p, double theta);

/// Semiclassical constant L^cl_{p,nu} = 2^-nu pi^(-nu/2) Gamma(p+1)/Gamma(p+nu/2+1).
double semiclassical_L(double p, int nu);

}  // namespace ltj
