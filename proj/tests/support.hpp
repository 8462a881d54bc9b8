#pragma once

// Test-only generators and independent oracles.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ltj/operators.hpp"

namespace ltj::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  cplx complex(double cap) { return {uniform(-cap, cap), uniform(-cap, cap)}; }

  Jacobi1D jacobi(int max_support, double cap, bool real, TruncationMode mode = TruncationMode::Hard) {
    Jacobi1D s;
    const int k = integer(1, max_support);
    for (int i = 0; i < k; ++i) s.b.push_back(real ? cplx(uniform(-cap, cap), 0.0) : complex(cap));
    const int ka = integer(0, k);
    for (int i = 0; i < ka; ++i) s.a.push_back(1.0 + (real ? cplx(uniform(-cap, cap), 0.0) : complex(cap)));
    s.truncation_size = s.support_extent() + static_cast<std::size_t>(integer(0, 10));
    s.mode = mode;
    return s;
  }

  LatticeJacobi lattice(int nu, int side, int count, double cap, bool real) {
    LatticeJacobi l;
    l.nu = nu;
    l.box_side = side;
    for (int i = 0; i < count; ++i) {
      Site x(static_cast<std::size_t>(nu));
      for (auto& c : x) c = integer(2, side - 1);
      l.set_potential(x, real ? cplx(uniform(-cap, cap), 0.0) : complex(cap));
      Site y = x;
      y[static_cast<std::size_t>(integer(0, nu - 1))] += 1;
      l.set_bond(x, y, 1.0 + (real ? cplx(uniform(-cap, cap), 0.0) : complex(cap)));
    }
    return l;
  }

 private:
  std::mt19937_64 rng_;
};

/// Bound state of a single-site perturbation b_1 = c of the free matrix.
inline cplx single_site_eigenvalue(cplx c) { return c + 1.0 / c; }

/// Number of eigenvalues below x of a real symmetric tridiagonal matrix
/// (Sturm sequence count).
inline int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double off = i == 0 ? 0.0 : e[i - 1] * e[i - 1];
    q = d[i] - x - (i == 0 ? 0.0 : off / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

/// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
inline double sturm_eigenvalue(const std::vector<double>& d, const std::vector<double>& e, int k) {
  double bound = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double r = std::abs(d[i]);
    if (i > 0) r += std::abs(e[i - 1]);
    if (i < e.size()) r += std::abs(e[i]);
    bound = std::max(bound, r);
  }
  double lo = -bound - 1.0, hi = bound + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(d, e, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace ltj::testing
