#pragma once

// Partial-sum comparisons between the complex spectrum of J and the real
// spectrum of the tilted matrix Re J + alpha Im J.

#include <cstddef>
#include <string>
#include <vector>

#include "ltj/eigen.hpp"
#include "ltj/operators.hpp"
#include "ltj/regions.hpp"

namespace ltj {

inline constexpr double kSlackTolerance = 1e-10;

struct Margin {
  std::size_t n;
  double lhs;    // partial sum over eigenvalues of J
  double rhs;    // partial sum over eigenvalues of the tilted matrix
  double slack;  // >= 0 when the inequality holds
};

struct MajorizationReport {
  double alpha = 0.0;
  std::string branch;  // "+", "-", or "+-" for the combined power sum
  std::size_t n_max = 0;
  std::vector<Margin> margins;
  bool holds = true;

  double min_slack() const;
};

struct Lemma2Report {
  double p = 1.0;
  MajorizationReport plus;
  MajorizationReport minus;
  MajorizationReport combined;
  bool holds() const { return plus.holds && minus.holds && combined.holds; }
};

/// Plus: sum_{j<=n} f+(lambda_j) <= sum_{j<=n} (mu_j - edge), both lists in
/// decreasing order and padded with zero terms once exhausted.
/// Minus: sum_{j<=n} ((Re lambda_j + edge) + alpha Im lambda_j) >= sum_{j<=n} (mu_j + edge).
MajorizationReport lemma1_check(const Spectrum& spectrum, const Spectrum& tilted, double alpha, Branch branch,
                                std::size_t n_max, double edge = 2.0);
MajorizationReport lemma1_check(const ComplexMatrix& j, double alpha, Branch branch, std::size_t n_max,
                                double edge = 2.0);
MajorizationReport lemma1_check(const OperatorSpec& spec, double alpha, Branch branch, std::size_t n_max);

/// Power-sum version with x -> x_+^p on each branch, and the two branches summed.
Lemma2Report lemma2_check(const Spectrum& spectrum, const Spectrum& tilted, double alpha, double p,
                          std::size_t n_max, double edge = 2.0);
Lemma2Report lemma2_check(const OperatorSpec& spec, double alpha, double p, std::size_t n_max);

/// Spectrum of the tilted Hermitian matrix of `m`.
Spectrum tilted_spectrum(const ComplexMatrix& m, double alpha);

}  // namespace ltj
