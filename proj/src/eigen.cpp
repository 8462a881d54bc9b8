#include "ltj/eigen.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ltj/errors.hpp"

namespace ltj {

int Spectrum::total_multiplicity() const {
  int total = 0;
  for (const auto& e : eigenvalues) total += e.multiplicity;
  return total;
}

std::vector<cplx> Spectrum::expanded() const {
  std::vector<cplx> out;
  for (const auto& e : eigenvalues) out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), e.value);
  return out;
}

// ---- Hessenberg reduction ---------------------------------------------------

ComplexMatrix hessenberg_reduce(const ComplexMatrix& m) {
  if (m.is_hessenberg()) return m;
  ComplexMatrix a = m;
  const std::size_t n = a.order();
  std::vector<cplx> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm = std::hypot(xnorm, std::abs(a(i, k)));
    if (xnorm == 0.0) continue;
    const cplx x0 = a(k + 1, k);
    const cplx phase = std::abs(x0) == 0.0 ? cplx{1.0} : x0 / std::abs(x0);
    const cplx alpha = -phase * xnorm;

    std::fill(v.begin(), v.end(), cplx{});
    v[k + 1] = x0 - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = a(i, k);
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm = std::hypot(vnorm, std::abs(v[i]));
    if (vnorm == 0.0) continue;
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;

    // A <- (I - 2 v v*) A
    for (std::size_t c = k; c < n; ++c) {
      cplx s{};
      for (std::size_t r = k + 1; r < n; ++r) s += std::conj(v[r]) * a(r, c);
      s *= 2.0;
      for (std::size_t r = k + 1; r < n; ++r) a(r, c) -= v[r] * s;
    }
    // A <- A (I - 2 v v*)
    for (std::size_t r = 0; r < n; ++r) {
      cplx s{};
      for (std::size_t c = k + 1; c < n; ++c) s += a(r, c) * v[c];
      s *= 2.0;
      for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= s * std::conj(v[c]);
    }
    a(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = cplx{};
  }
  return a;
}

// ---- complex QR ---------------------------------------------------------------

namespace {

struct Givens {
  double c;
  cplx s;
};

// G = [c s; -conj(s) c] maps (x, y) to (r, 0).
Givens make_givens(cplx x, cplx y) {
  if (y == cplx{}) return {1.0, cplx{}};
  const double ax = std::abs(x);
  const double norm = std::hypot(ax, std::abs(y));
  if (ax == 0.0) return {0.0, std::conj(y) / std::abs(y)};
  return {ax / norm, (x / ax) * std::conj(y) / norm};
}

// Eigenvalues of [[a, b], [c, d]], the larger-magnitude root first.
std::pair<cplx, cplx> eig2x2(cplx a, cplx b, cplx c, cplx d) {
  const cplx mid = 0.5 * (a + d);
  cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  if (std::real(std::conj(mid) * disc) < 0.0) disc = -disc;
  const cplx l1 = mid + disc;
  const cplx det = a * d - b * c;
  const cplx l2 = std::abs(l1) == 0.0 ? mid - disc : det / l1;
  return {l1, l2};
}

}  // namespace

std::vector<cplx> hessenberg_eigenvalues(ComplexMatrix h, std::size_t max_iter_factor) {
  const std::size_t n = h.order();
  std::vector<cplx> eig(n);
  if (n == 0) return eig;
  const double hnorm = std::max(h.norm_inf(), DBL_MIN);
  const std::size_t budget = max_iter_factor * std::max<std::size_t>(n, 1);
  std::size_t sweeps = 0;
  std::size_t its = 0;
  std::vector<Givens> rot(n);

  long hi = static_cast<long>(n) - 1;
  while (hi >= 0) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    long l = hi;
    for (; l > 0; --l) {
      const auto ul = static_cast<std::size_t>(l);
      double s = std::abs(h(ul - 1, ul - 1)) + std::abs(h(ul, ul));
      if (s == 0.0) s = hnorm;
      if (std::abs(h(ul, ul - 1)) < 1e-14 * s) {
        h(ul, ul - 1) = cplx{};
        break;
      }
    }
    const auto uh = static_cast<std::size_t>(hi);
    if (l == hi) {
      eig[uh] = h(uh, uh);
      --hi;
      its = 0;
      continue;
    }
    if (l == hi - 1) {
      auto [l1, l2] = eig2x2(h(uh - 1, uh - 1), h(uh - 1, uh), h(uh, uh - 1), h(uh, uh));
      eig[uh - 1] = l1;
      eig[uh] = l2;
      hi -= 2;
      its = 0;
      continue;
    }
    if (++sweeps > budget) {
      std::ostringstream os;
      os << "complex QR did not converge: block [" << l << ", " << hi << "] stagnated after " << budget
         << " sweeps";
      throw ConvergenceError(os.str());
    }
    ++its;

    cplx mu;
    if (its % 10 == 0) {
      // exceptional shift
      mu = h(uh, uh) + 1.5 * std::abs(h(uh, uh - 1).real()) + std::abs(h(uh - 1, uh - 2).real());
    } else {
      const cplx a = h(uh - 1, uh - 1), b = h(uh - 1, uh), c = h(uh, uh - 1), d = h(uh, uh);
      auto [r1, r2] = eig2x2(a, b, c, d);
      mu = std::abs(r1 - d) < std::abs(r2 - d) ? r1 : r2;
    }

    const auto ul = static_cast<std::size_t>(l);
    for (std::size_t k = ul; k <= uh; ++k) h(k, k) -= mu;
    for (std::size_t k = ul; k < uh; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rot[k] = g;
      for (std::size_t j = k; j <= uh; ++j) {
        const cplx t1 = h(k, j), t2 = h(k + 1, j);
        h(k, j) = g.c * t1 + g.s * t2;
        h(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
      }
    }
    for (std::size_t k = ul; k < uh; ++k) {
      const Givens g = rot[k];
      for (std::size_t i = ul; i <= std::min(k + 1, uh); ++i) {
        const cplx u1 = h(i, k), u2 = h(i, k + 1);
        h(i, k) = u1 * g.c + u2 * std::conj(g.s);
        h(i, k + 1) = -u1 * g.s + u2 * g.c;
      }
    }
    for (std::size_t k = ul; k <= uh; ++k) h(k, k) += mu;
  }
  return eig;
}

namespace {

double residual_from(const ComplexMatrix& hess, cplx lambda, std::vector<cplx> rhs) {
  const std::size_t n = hess.order();
  ComplexMatrix a = hess;
  for (std::size_t i = 0; i < n; ++i) a(i, i) -= lambda;
  const double tiny = DBL_EPSILON * std::max(a.norm_inf(), DBL_MIN);

  // LU with partial pivoting; only rows k and k+1 compete for the pivot.
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (std::abs(a(k + 1, k)) > std::abs(a(k, k))) {
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(k + 1, j));
      std::swap(rhs[k], rhs[k + 1]);
    }
    if (std::abs(a(k, k)) < tiny) a(k, k) = tiny;
    const cplx f = a(k + 1, k) / a(k, k);
    if (f != cplx{}) {
      for (std::size_t j = k; j < n; ++j) a(k + 1, j) -= f * a(k, j);
      rhs[k + 1] -= f * rhs[k];
    }
  }
  if (std::abs(a(n - 1, n - 1)) < tiny) a(n - 1, n - 1) = tiny;
  std::vector<cplx> v(n);
  for (std::size_t ii = n; ii-- > 0;) {
    cplx s = rhs[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * v[j];
    v[ii] = s / a(ii, ii);
  }

  double vnorm = 0.0;
  for (const cplx& x : v) vnorm = std::hypot(vnorm, std::abs(x));
  if (vnorm == 0.0 || !std::isfinite(vnorm)) return 0.0;
  double rnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = -lambda * v[i];
    for (std::size_t j = (i == 0 ? 0 : i - 1); j < n; ++j) s += hess(i, j) * v[j];
    rnorm = std::hypot(rnorm, std::abs(s));
  }
  return rnorm / vnorm;
}

}  // namespace

double inverse_iteration_residual(const ComplexMatrix& hess, cplx lambda) {
  const std::size_t n = hess.order();
  if (n == 0) return 0.0;
  // Two irregular start vectors: a constant one can be orthogonal to an
  // eigenvector of a symmetric matrix.
  double best = std::numeric_limits<double>::infinity();
  for (double shift : {0.0, 0.5}) {
    std::vector<cplx> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) + shift;
      rhs[i] = {0.5 + std::fmod(t * 0.6180339887498949, 1.0), 0.25 + std::fmod(t * 0.7548776662466927, 1.0)};
    }
    best = std::min(best, residual_from(hess, lambda, std::move(rhs)));
  }
  return best;
}

namespace {

Spectrum certify(const ComplexMatrix& hess, std::span<const cplx> raw, double norm, const EigOptions& opts) {
  const double tol = opts.relative_tolerance * std::max(norm, DBL_MIN);
  std::vector<double> residuals(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) residuals[i] = inverse_iteration_residual(hess, raw[i]);
  Spectrum s = cluster_multiplicities(raw, tol, residuals);
  s.source_order = hess.order();
  return s;
}

}  // namespace

ComplexMatrix balance(const ComplexMatrix& m) {
  ComplexMatrix b = m;
  const std::size_t n = b.order();
  constexpr double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(b(j, i));
        r += std::abs(b(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r / f) < 0.95 * s * f) {
        done = false;
        for (std::size_t j = 0; j < n; ++j) b(i, j) /= f;
        for (std::size_t j = 0; j < n; ++j) b(j, i) *= f;
      }
    }
  }
  return b;
}

double magnitude_span(const ComplexMatrix& m) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j)
      if (const double a = std::abs(m(i, j)); a > 0.0) {
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
  return hi == 0.0 ? 1.0 : hi / lo;
}

namespace {

bool is_tridiagonal(const ComplexMatrix& m) {
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j)
      if ((i > j + 1 || j > i + 1) && m(i, j) != cplx(0.0)) return false;
  return true;
}

}  // namespace

Spectrum eig_complex(const ComplexMatrix& m, const EigOptions& opts) {
  const bool rebalance = magnitude_span(m) > 1e6 && !is_tridiagonal(m);
  const ComplexMatrix source = rebalance ? balance(m) : m;
  const ComplexMatrix hess = hessenberg_reduce(source);
  const std::vector<cplx> raw = hessenberg_eigenvalues(hess, opts.max_iter_factor);
  return certify(hess, raw, source.norm_inf(), opts);
}

// ---- real symmetric tridiagonal -------------------------------------------------

std::vector<double> eig_real_symtri(std::span<const double> diag, std::span<const double> offdiag) {
  const std::size_t n = diag.size();
  if (n == 0) return {};
  if (offdiag.size() + 1 != n) throw std::invalid_argument("eig_real_symtri: offdiag must be one shorter than diag");
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());

  const std::size_t budget = 30 * n;
  std::size_t total = 0;
  for (std::size_t l = 0; l < n; ++l) {
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= DBL_EPSILON * dd) break;
      }
      if (m == l) break;
      if (++total > budget) throw ConvergenceError("implicit QL did not converge at index " + std::to_string(l));

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

namespace {

void require_hermitian(const ComplexMatrix& m) {
  const double tol = 1e-13 * std::max(m.norm_inf(), 1.0);
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) throw std::invalid_argument("matrix is not Hermitian");
}

// Tridiagonal Hermitian -> real symmetric tridiagonal via a diagonal unitary
// similarity: off-diagonals become their moduli.
void hermitian_tridiagonal(const ComplexMatrix& t, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = t.order();
  d.resize(n);
  e.resize(n ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = t(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = std::abs(t(i + 1, i));
}

}  // namespace

std::vector<double> eig_hermitian(const ComplexMatrix& m) {
  require_hermitian(m);
  std::vector<double> d, e;
  hermitian_tridiagonal(hessenberg_reduce(m), d, e);
  return eig_real_symtri(d, e);
}

Spectrum hermitian_spectrum(const ComplexMatrix& m, const EigOptions& opts) {
  require_hermitian(m);
  std::vector<double> d, e;
  hermitian_tridiagonal(hessenberg_reduce(m), d, e);
  const std::vector<double> values = eig_real_symtri(d, e);
  ComplexMatrix tri(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    tri(i, i) = d[i];
    if (i + 1 < d.size()) tri(i, i + 1) = tri(i + 1, i) = e[i];
  }
  std::vector<cplx> raw(values.begin(), values.end());
  return certify(tri, raw, m.norm_inf(), opts);
}

// ---- clustering ----------------------------------------------------------------

Spectrum cluster_multiplicities(std::span<const cplx> raw, double tol, std::span<const double> residuals) {
  const std::size_t n = raw.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(raw[i] - raw[j]) <= tol) parent[find(i)] = find(j);

  std::vector<std::size_t> root_slot(n, n);
  std::vector<cplx> sums;
  Spectrum s;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (root_slot[r] == n) {
      root_slot[r] = s.eigenvalues.size();
      s.eigenvalues.push_back({cplx{}, 0, 0.0});
      sums.push_back(cplx{});
    }
    auto& ev = s.eigenvalues[root_slot[r]];
    sums[root_slot[r]] += raw[i];
    ev.multiplicity += 1;
    if (!residuals.empty()) ev.residual = std::max(ev.residual, residuals[i]);
  }
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k)
    s.eigenvalues[k].value = sums[k] / static_cast<double>(s.eigenvalues[k].multiplicity);
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](const Eigenvalue& x, const Eigenvalue& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  s.source_order = n;
  s.tolerance = tol;
  s.certified = std::all_of(s.eigenvalues.begin(), s.eigenvalues.end(),
                            [&](const Eigenvalue& e) { return e.residual <= tol; });
  return s;
}

}  // namespace ltj
