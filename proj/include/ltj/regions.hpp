#pragma once

// Half-planes beyond the spectral edges, tilted by a slope alpha = tan(theta),
// and their unions. `edge` is the essential-spectrum endpoint: 2 in one
// dimension, 2 nu on the lattice.

#include <optional>
#include <vector>

#include "ltj/eigen.hpp"

namespace ltj {

enum class Branch { Plus, Minus };

const char* to_string(Branch b);

/// Eigenvalues with |f| at or below this are treated as on the region boundary.
inline constexpr double kBoundaryTolerance = 1e-12;

struct RegionParams {
  double alpha = 0.0;
  std::optional<double> theta;  // in [0, pi/2); alpha == tan(theta) when set
  Branch branch = Branch::Plus;

  static RegionParams from_theta(double theta, Branch branch = Branch::Plus);
  void validate() const;
};

struct ClassifiedSpectrum {
  std::vector<Eigenvalue> plus_list;   // f+ nonincreasing, > 0
  std::vector<Eigenvalue> minus_list;  // f- nonincreasing, > 0
  std::vector<Eigenvalue> remainder;
  double alpha = 0.0;
  double edge = 2.0;
};

/// Plus: (Re l - edge) + alpha Im l.  Minus: -(Re l + edge) - alpha Im l.
double f_region(cplx lambda, double alpha, Branch branch, double edge = 2.0);

/// Membership in the union of the half-planes for +alpha and -alpha (alpha >= 0).
bool in_psi(cplx lambda, double alpha, Branch branch, double edge = 2.0);

/// Splits a spectrum by the sign of f+ / f-; each list is ordered by
/// decreasing region function, ties by (Re, Im).
ClassifiedSpectrum classify(const Spectrum& spec, double alpha, double edge = 2.0);

inline double pos_part(double x) { return x > 0.0 ? x : 0.0; }
inline double neg_part(double x) { return x < 0.0 ? -x : 0.0; }

/// Smallest theta in [0, pi/2) for which lambda lies in (the closure of)
/// Psi_{tan theta} on the given branch. Requires -2 <= Re lambda <= 2 and
/// lambda off the real segment; throws std::domain_error otherwise.
double min_theta_for(cplx lambda, Branch branch);

}  // namespace ltj
