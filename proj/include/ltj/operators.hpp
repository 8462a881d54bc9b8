#pragma once

// Complex Jacobi operators in one dimension and on the lattice Z^nu, together
// with the bookkeeping that relates a finite section to the infinite operator.

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ltj/matrix.hpp"

namespace ltj {

/// How a finite N x N section relates to the operator on l^2.
///
/// Hard: the section is read as the infinite matrix with the coupling across
/// the cut set to zero. That matrix is itself a legal compact perturbation of
/// the free operator, so every bound is an exact instance; each cut coupling
/// contributes |0 - 1| = 1 to the perturbation sums.
///
/// Approximate: the section approximates the infinite operator. Sums omit the
/// cut couplings and reports carry a stabilization diagnostic.
enum class TruncationMode { Hard, Approximate };

const char* to_string(TruncationMode mode);
TruncationMode parse_mode(const std::string& s);

/// Extra sites appended beyond the perturbation support when no explicit
/// truncation size is given.
inline constexpr std::size_t kDefaultMargin = 40;

/// Finitely supported perturbation of the free semi-infinite Jacobi matrix.
/// Off-diagonal a_k defaults to 1 beyond `a`, diagonal b_k to 0 beyond `b`.
struct Jacobi1D {
  std::vector<cplx> a;  // a_1 .. a_K
  std::vector<cplx> b;  // b_1 .. b_M
  std::size_t truncation_size = 0;  // 0 selects support_extent() + kDefaultMargin
  TruncationMode mode = TruncationMode::Hard;

  /// Smallest admissible matrix order: max(K + 1, M).
  std::size_t support_extent() const;
  std::size_t size() const;
  /// Throws InvalidSpec naming the required minimum.
  void validate() const;

  friend bool operator==(const Jacobi1D&, const Jacobi1D&) = default;
};

using Site = std::vector<int>;
/// Unordered nearest-neighbour pair, stored with first < second.
using Bond = std::pair<Site, Site>;

Bond make_bond(Site x, Site y);

/// Perturbation of the free lattice operator on Z^nu, restricted to the box
/// {1..L}^nu. Sites are ordered lexicographically.
struct LatticeJacobi {
  int nu = 1;
  int box_side = 1;
  std::map<Bond, cplx> bonds;      // unset bonds are 1
  std::map<Site, cplx> potential;  // unset sites are 0
  TruncationMode mode = TruncationMode::Hard;

  void set_bond(const Site& x, const Site& y, cplx value);
  void set_potential(const Site& x, cplx value);

  std::size_t order() const;
  std::size_t index_of(const Site& x) const;
  Site site_at(std::size_t index) const;
  bool on_boundary(const Site& x) const;
  /// Bonds joining the box to its exterior: 2 nu L^(nu-1).
  std::size_t cut_bond_count() const;

  /// Throws InvalidSpec for sites outside the box or non-adjacent bonds.
  void validate() const;
  /// Non-fatal findings, e.g. support touching the box face in Approximate mode.
  std::vector<std::string> warnings() const;

  friend bool operator==(const LatticeJacobi&, const LatticeJacobi&) = default;
};

using OperatorSpec = std::variant<Jacobi1D, LatticeJacobi>;

/// Essential spectrum edge: 2 for Jacobi1D, 2 nu for the lattice.
double spectral_edge(const OperatorSpec& spec);
bool is_real(const OperatorSpec& spec);
TruncationMode mode_of(const OperatorSpec& spec);
std::size_t order_of(const OperatorSpec& spec);

ComplexMatrix build_1d(const Jacobi1D& spec);
ComplexMatrix build_lattice(const LatticeJacobi& spec);
ComplexMatrix build(const OperatorSpec& spec);

/// Every coefficient c becomes Re c + alpha Im c. The result is real.
Jacobi1D tilt(const Jacobi1D& spec, double alpha);
LatticeJacobi tilt(const LatticeJacobi& spec, double alpha);
OperatorSpec tilt(const OperatorSpec& spec, double alpha);

/// (B + B*)/2 + alpha (B - B*)/(2i): Hermitian for every square B.
ComplexMatrix hermitian_tilt(const ComplexMatrix& m, double alpha);

/// Conjugates every coefficient; builds to the adjoint matrix.
Jacobi1D adjoint_spec(const Jacobi1D& spec);
LatticeJacobi adjoint_spec(const LatticeJacobi& spec);
OperatorSpec adjoint_spec(const OperatorSpec& spec);

/// Same operator on a section twice as long (1D), or in a box of twice the side
/// with the support shifted to its centre (lattice).
OperatorSpec doubled(const OperatorSpec& spec);

/// Map applied to each coefficient before it enters a perturbation sum.
/// With x = Re c + alpha Im c, a diagonal entry contributes
///   Modulus:      |b|          RealPart: |Re b|
///   Tilt:         |x|          TiltPositive / TiltNegative: x_+ / x_-
/// and an off-diagonal entry contributes |a - 1|, |Re a - 1| or |x - 1|.
enum class CoefficientMap { Modulus, RealPart, Tilt, TiltPositive, TiltNegative };

struct TermSelector {
  CoefficientMap map = CoefficientMap::RealPart;
  double alpha = 0.0;
  double bond_weight = 4.0;
};

/// sum_k g(b_k)^q + bond_weight * sum_k h(a_k)^q over the perturbation
/// support. In Hard mode the cut couplings (a_N = 0, or the box-face bonds)
/// are included.
double perturbation_terms(const OperatorSpec& spec, double q, const TermSelector& sel);

}  // namespace ltj
