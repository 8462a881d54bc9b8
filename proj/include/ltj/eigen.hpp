#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ltj/matrix.hpp"

namespace ltj {

struct Eigenvalue {
  cplx value;
  int multiplicity = 1;
  /// Inverse-iteration residual ||(M - lambda I) v|| / ||v||.
  double residual = 0.0;
};

/// Point spectrum of a finite matrix, clustered into algebraic multiplicities.
struct Spectrum {
  std::vector<Eigenvalue> eigenvalues;
  std::size_t source_order = 0;
  double tolerance = 0.0;  // certification threshold applied to residuals
  bool certified = true;

  int total_multiplicity() const;
  /// Eigenvalues repeated according to multiplicity.
  std::vector<cplx> expanded() const;
};

struct EigOptions {
  /// Sweep budget is max_iter_factor * n.
  std::size_t max_iter_factor = 30;
  /// Certification and clustering tolerance relative to ||M||_inf.
  double relative_tolerance = 1e-8;
};

/// Unitary similarity to upper Hessenberg form (Householder). Input that is
/// already Hessenberg, in particular any tridiagonal matrix, is returned as is.
ComplexMatrix hessenberg_reduce(const ComplexMatrix& m);

/// Raw eigenvalues of an upper Hessenberg matrix by single-shift complex QR.
/// Throws ConvergenceError naming the stagnating block.
std::vector<cplx> hessenberg_eigenvalues(ComplexMatrix h, std::size_t max_iter_factor = 30);

/// One inverse-iteration step on a Hessenberg matrix (similar to the source).
double inverse_iteration_residual(const ComplexMatrix& hessenberg, cplx lambda);

/// Diagonal similarity by powers of two that evens out row and column norms.
ComplexMatrix balance(const ComplexMatrix& m);

/// Ratio of the largest to the smallest nonzero entry modulus (1 for zero).
double magnitude_span(const ComplexMatrix& m);

/// Full spectrum of a general complex matrix with residual certificates.
/// Dense input whose magnitude span exceeds 1e6 is balanced first.
Spectrum eig_complex(const ComplexMatrix& m, const EigOptions& opts = {});

/// Eigenvalues of a real symmetric tridiagonal matrix, ascending (implicit QL).
std::vector<double> eig_real_symtri(std::span<const double> diag, std::span<const double> offdiag);

/// Eigenvalues of a Hermitian matrix, ascending: Householder tridiagonalization
/// followed by eig_real_symtri.
std::vector<double> eig_hermitian(const ComplexMatrix& m);

/// Spectrum of a Hermitian matrix through the real route, with residuals.
Spectrum hermitian_spectrum(const ComplexMatrix& m, const EigOptions& opts = {});

/// Greedy single-linkage clustering; centroid and size of each cluster.
/// `residuals`, when given, must match `raw`; a cluster keeps the worst one.
Spectrum cluster_multiplicities(std::span<const cplx> raw, double tol, std::span<const double> residuals = {});

}  // namespace ltj
