#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>
#include <numbers>

#include "ltj/eigen.hpp"
#include "ltj/errors.hpp"
#include "ltj/operators.hpp"
#include "support.hpp"

using namespace ltj;
using Catch::Approx;

namespace {

const cplx I{0.0, 1.0};

std::vector<cplx> oracle_eigenvalues(const ComplexMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.order());
  Eigen::MatrixXcd e(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) e(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(e, false);
  REQUIRE(solver.info() == Eigen::Success);
  const auto& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

// Largest distance in a greedy nearest-neighbour matching of two multisets.
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  for (cplx x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t at = 0;
    for (std::size_t k = 0; k < b.size(); ++k)
      if (!used[k] && std::abs(b[k] - x) < best) {
        best = std::abs(b[k] - x);
        at = k;
      }
    used[at] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

bool contains(const Spectrum& s, cplx z, double tol) {
  for (const auto& e : s.eigenvalues)
    if (std::abs(e.value - z) < tol) return true;
  return false;
}

ComplexMatrix free_matrix(std::size_t n) { return build_1d(Jacobi1D{{}, {}, n}); }

}  // namespace

TEST_CASE("free truncation of order 3") {
  const Spectrum s = eig_complex(free_matrix(3));
  REQUIRE(s.eigenvalues.size() == 3);
  CHECK(s.total_multiplicity() == 3);
  CHECK(s.certified);
  CHECK(contains(s, std::sqrt(2.0), 1e-12));
  CHECK(contains(s, 0.0, 1e-12));
  CHECK(contains(s, -std::sqrt(2.0), 1e-12));
  for (const auto& e : s.eigenvalues) CHECK(e.multiplicity == 1);
}

TEST_CASE("single-site bound states") {
  for (cplx c : {cplx(3.0), 3.0 + 4.0 * I}) {
    const Spectrum s = eig_complex(build_1d(Jacobi1D{{}, {c}, 60}));
    CHECK(contains(s, testing::single_site_eigenvalue(c), 1e-8));
    CHECK(s.certified);
  }
  CHECK(testing::single_site_eigenvalue(3.0 + 4.0 * I) == cplx(3.12, 3.84));
}

TEST_CASE("free truncations match the cosine formula", "[property]") {
  for (std::size_t n : {1u, 2u, 7u, 50u, 200u, 400u}) {
    const Spectrum s = eig_complex(free_matrix(n));
    std::vector<cplx> exact;
    for (std::size_t k = 1; k <= n; ++k)
      exact.push_back(2.0 * std::cos(static_cast<double>(k) * std::numbers::pi / static_cast<double>(n + 1)));
    CHECK(multiset_distance(s.expanded(), exact) < 1e-10);
  }
}

TEST_CASE("eig_real_symtri examples") {
  const std::vector<double> d{0, 0, 0}, e{1, 1};
  const auto v = eig_real_symtri(d, e);
  REQUIRE(v.size() == 3);
  CHECK(v[0] == Approx(-std::sqrt(2.0)).epsilon(1e-14));
  CHECK(v[1] == Approx(0.0).margin(1e-14));
  CHECK(v[2] == Approx(std::sqrt(2.0)).epsilon(1e-14));

  std::vector<double> d60(60, 0.0), e59(59, 1.0);
  d60[0] = 3.0;
  CHECK(eig_real_symtri(d60, e59).back() == Approx(10.0 / 3.0).epsilon(1e-10));

  const std::vector<double> single{-1.25};
  CHECK(eig_real_symtri(single, {}) == std::vector<double>{-1.25});
  CHECK_THROWS_AS(eig_real_symtri(d, d), std::invalid_argument);
}

TEST_CASE("eig_real_symtri agrees with Sturm bisection", "[property]") {
  testing::Gen gen(99);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.integer(1, 80);
    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n - 1));
    for (auto& x : d) x = gen.uniform(-5.0, 5.0);
    for (auto& x : e) x = gen.uniform(-3.0, 3.0);
    const auto v = eig_real_symtri(d, e);
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm = std::max(norm, std::abs(d[static_cast<std::size_t>(i)]) + 6.0);
    for (int k = 0; k < n; ++k) CHECK(std::abs(v[static_cast<std::size_t>(k)] - testing::sturm_eigenvalue(d, e, k)) < 1e-12 * norm);
    CHECK(std::is_sorted(v.begin(), v.end()));
  }
}

TEST_CASE("cluster_multiplicities examples") {
  const std::vector<cplx> a{1.0, 1.0 + 1e-12, 5.0};
  const Spectrum s = cluster_multiplicities(a, 1e-8);
  REQUIRE(s.eigenvalues.size() == 2);
  CHECK(s.eigenvalues[0].multiplicity == 2);
  CHECK(s.eigenvalues[0].value.real() == Approx(1.0));
  CHECK(s.eigenvalues[1].multiplicity == 1);
  CHECK(s.eigenvalues[1].value == cplx(5.0));

  const std::vector<cplx> b{1.0, 2.0, 3.0};
  CHECK(cluster_multiplicities(b, 1e-8).eigenvalues.size() == 3);

  const std::vector<cplx> chain{0.0, 1e-9, 2e-9};
  const Spectrum c = cluster_multiplicities(chain, 1e-8);
  REQUIRE(c.eigenvalues.size() == 1);
  CHECK(c.eigenvalues[0].multiplicity == 3);
}

TEST_CASE("hessenberg_reduce") {
  const ComplexMatrix f = free_matrix(3);
  CHECK(hessenberg_reduce(f) == f);
  ComplexMatrix one(1);
  one(0, 0) = 2.0 + I;
  CHECK(hessenberg_reduce(one) == one);

  testing::Gen gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    LatticeJacobi l;
    if (trial % 2) {
      l.nu = 2;
      l.box_side = 2;
      l.set_potential({1, 2}, gen.complex(2.0));
      l.set_bond({1, 1}, {2, 1}, 1.0 + gen.complex(2.0));
    } else {
      l = gen.lattice(2, 5, 3, 2.0, false);
    }
    const ComplexMatrix m = build_lattice(l);
    const ComplexMatrix h = hessenberg_reduce(m);
    const double norm = m.norm_inf();
    for (std::size_t i = 2; i < h.order(); ++i)
      for (std::size_t j = 0; j + 1 < i; ++j) CHECK(std::abs(h(i, j)) < 1e-14 * norm);
    CHECK(multiset_distance(oracle_eigenvalues(h), oracle_eigenvalues(m)) < 1e-10);
    CHECK(multiset_distance(eig_complex(m).expanded(), eig_complex(h).expanded()) < 1e-9);
  }
}

TEST_CASE("dense lattice spectra match an independent solver", "[property]") {
  testing::Gen gen(2718);
  for (int trial = 0; trial < 8; ++trial) {
    const LatticeJacobi l = gen.lattice(2, 6, 5, 3.0, trial % 4 == 0);
    const ComplexMatrix m = build_lattice(l);
    const Spectrum s = eig_complex(m);
    CHECK(s.total_multiplicity() == 36);
    CHECK(s.certified);
    CHECK(multiset_distance(s.expanded(), oracle_eigenvalues(m)) < 1e-7);
  }
}

TEST_CASE("badly scaled dense matrices are balanced", "[property]") {
  testing::Gen gen(314);
  for (int trial = 0; trial < 6; ++trial) {
    const ComplexMatrix base = build_lattice(gen.lattice(2, 5, 4, 3.0, false));
    // D M D^-1 with D alternating 1 and 1e4: same spectrum, eight decades of entries.
    ComplexMatrix m = base;
    for (std::size_t i = 0; i < m.order(); ++i)
      for (std::size_t j = 0; j < m.order(); ++j)
        m(i, j) *= std::pow(10.0, 4.0 * (static_cast<int>(i % 2) - static_cast<int>(j % 2)));
    CHECK(magnitude_span(m) > 1e6);
    const ComplexMatrix b = balance(m);
    CHECK(b.norm_inf() < m.norm_inf());
    CHECK(multiset_distance(oracle_eigenvalues(b), oracle_eigenvalues(base)) < 1e-8);
    const Spectrum s = eig_complex(m);
    CHECK(s.total_multiplicity() == 25);
    CHECK(multiset_distance(s.expanded(), oracle_eigenvalues(base)) < 1e-7);
  }
  CHECK(magnitude_span(ComplexMatrix(3)) == 1.0);
}

TEST_CASE("spectrum invariants on random Jacobi matrices", "[property]") {
  testing::Gen gen(31337);
  for (int trial = 0; trial < 60; ++trial) {
    const bool real = trial % 2 == 0;
    const ComplexMatrix m = build_1d(gen.jacobi(15, 5.0, real));
    const Spectrum s = eig_complex(m);
    CHECK(s.total_multiplicity() == static_cast<int>(m.order()));
    CHECK(s.source_order == m.order());
    CHECK(s.certified);
    for (const auto& e : s.eigenvalues) CHECK(e.residual <= s.tolerance);

    cplx sum = 0.0;
    for (cplx z : s.expanded()) sum += z;
    CHECK(std::abs(sum - m.trace()) < 1e-9 * static_cast<double>(m.order()) * m.norm_inf());

    if (real) {
      std::vector<double> d, e;
      for (std::size_t i = 0; i < m.order(); ++i) d.push_back(m(i, i).real());
      for (std::size_t i = 0; i + 1 < m.order(); ++i) e.push_back(m(i, i + 1).real());
      std::vector<cplx> r;
      for (double x : eig_real_symtri(d, e)) r.push_back(x);
      CHECK(multiset_distance(s.expanded(), r) < 1e-9);
      const Spectrum h = hermitian_spectrum(m);
      CHECK(multiset_distance(h.expanded(), r) < 1e-9);
    }
  }
}

TEST_CASE("non-convergence is reported") {
  const ComplexMatrix m = build_1d(Jacobi1D{{2.0 + I}, {1.0, I}, 6});
  CHECK_THROWS_AS(hessenberg_eigenvalues(m, 0), ConvergenceError);
}
