#include <catch_amalgamated.hpp>

#include <cmath>

#include "ltj/lemmas.hpp"
#include "support.hpp"

using namespace ltj;
using Catch::Approx;

namespace {

const cplx I{0.0, 1.0};

OperatorSpec single_site(cplx c) { return Jacobi1D{{}, {c}, 60}; }

}  // namespace

TEST_CASE("partial sums on a real single site") {
  const MajorizationReport r = lemma1_check(single_site(3.0), 0.0, Branch::Plus, 5);
  CHECK(r.holds);
  REQUIRE(r.margins.size() == 5);
  CHECK(r.branch == "+");
  for (const auto& m : r.margins) CHECK(m.slack == Approx(0.0).margin(1e-9));
  CHECK(r.margins[0].lhs == Approx(4.0 / 3.0).margin(1e-8));
}

TEST_CASE("partial sums on a complex single site") {
  const MajorizationReport r = lemma1_check(single_site(3.0 + 4.0 * I), 0.0, Branch::Plus, 10);
  REQUIRE(r.margins.size() == 10);
  CHECK(r.margins[0].n == 1);
  CHECK(r.margins[0].lhs == Approx(1.12).margin(1e-8));
  CHECK(r.margins[0].rhs == Approx(4.0 / 3.0).margin(1e-8));
  CHECK(r.margins[0].slack == Approx(4.0 / 3.0 - 1.12).margin(1e-8));
  CHECK(r.holds);
  // Both lists are exhausted after the first entry: partial sums stay put.
  for (std::size_t k = 1; k < r.margins.size(); ++k) {
    CHECK(r.margins[k].lhs == r.margins[0].lhs);
    CHECK(r.margins[k].rhs == r.margins[0].rhs);
  }
  CHECK(r.min_slack() == Approx(4.0 / 3.0 - 1.12).margin(1e-8));
  CHECK_THROWS_AS(lemma1_check(single_site(3.0), 0.0, Branch::Plus, 0), std::invalid_argument);
}

TEST_CASE("power-sum consequence examples") {
  const Lemma2Report real = lemma2_check(single_site(-3.0), 0.5, 1.5, 8);
  CHECK(real.holds());
  for (const auto* r : {&real.plus, &real.minus, &real.combined})
    for (const auto& m : r->margins) CHECK(m.slack == Approx(0.0).margin(1e-9));
  CHECK(real.minus.margins[0].lhs == Approx(std::pow(4.0 / 3.0, 1.5)).margin(1e-8));

  const Lemma2Report one = lemma2_check(single_site(3.0 + 4.0 * I), 0.0, 1.0, 1);
  CHECK(one.plus.margins[0].lhs == Approx(1.12).margin(1e-8));
  CHECK(one.plus.margins[0].rhs == Approx(4.0 / 3.0).margin(1e-8));
  CHECK(one.holds());

  const Lemma2Report two = lemma2_check(single_site(3.0 + 4.0 * I), 0.0, 2.0, 1);
  CHECK(two.plus.margins[0].lhs == Approx(1.12 * 1.12).margin(1e-8));
  CHECK(two.plus.margins[0].rhs == Approx(16.0 / 9.0).margin(1e-8));
  CHECK(two.combined.branch == "+-");
  CHECK(two.p == 2.0);
  CHECK(two.holds());
  CHECK_THROWS_AS(lemma2_check(single_site(3.0), 0.0, 0.5, 1), std::domain_error);
}

TEST_CASE("partial-sum minus branch mirrors the plus branch of -J", "[property]") {
  testing::Gen gen(6502);
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexMatrix j = build(OperatorSpec{gen.jacobi(12, 5.0, false)});
    const double alpha = gen.uniform(-2.0, 2.0);
    const MajorizationReport minus = lemma1_check(j, alpha, Branch::Minus, j.order());
    const MajorizationReport plus = lemma1_check(-j, alpha, Branch::Plus, j.order());
    REQUIRE(minus.margins.size() == plus.margins.size());
    for (std::size_t k = 0; k < minus.margins.size(); ++k) {
      CHECK(minus.margins[k].slack == Approx(plus.margins[k].slack).margin(1e-9));
      CHECK(minus.margins[k].lhs == Approx(-plus.margins[k].lhs).margin(1e-9));
    }
  }
}

TEST_CASE("Lemmas hold on random specs", "[property]") {
  testing::Gen gen(1984);
  for (int trial = 0; trial < 60; ++trial) {
    const bool real = trial % 5 == 0;
    const OperatorSpec s = gen.jacobi(20, 5.0, real);
    const ComplexMatrix j = build(s);
    const Spectrum spectrum = eig_complex(j);
    for (double alpha : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}) {
      const Spectrum tilted = tilted_spectrum(j, alpha);
      for (Branch b : {Branch::Plus, Branch::Minus}) {
        const MajorizationReport r = lemma1_check(spectrum, tilted, alpha, b, j.order());
        CHECK(r.holds);
        CHECK(r.min_slack() >= -kSlackTolerance);
        CHECK(r.margins.size() == j.order());
        if (real)
          for (const auto& m : r.margins) CHECK(std::abs(m.slack) < 1e-9);
      }
      for (double p : {1.0, 2.0}) CHECK(lemma2_check(spectrum, tilted, alpha, p, j.order()).holds());
    }
  }
}

TEST_CASE("Lemmas on a lattice spec") {
  testing::Gen gen(42);
  const LatticeJacobi l = gen.lattice(2, 6, 4, 4.0, false);
  for (double alpha : {-1.0, 0.0, 1.0}) {
    CHECK(lemma1_check(OperatorSpec{l}, alpha, Branch::Plus, 36).holds);
    CHECK(lemma1_check(OperatorSpec{l}, alpha, Branch::Minus, 36).holds);
    CHECK(lemma2_check(OperatorSpec{l}, alpha, 1.0, 36).holds());
  }
}
