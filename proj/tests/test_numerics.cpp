#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "modflow/laurent.hpp"
#include "modflow/rational.hpp"
#include "modflow/richardson.hpp"
#include "modflow/sequences.hpp"
#include "modflow/special_functions.hpp"
#include "modflow/summation.hpp"

using namespace modflow;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent quadrature oracle for integrals of (1+t^2)^{-r}: composite
// Simpson with enough panels that the discretisation error is far below the
// tolerances asserted against it.
double simpson_one_plus_tsq(double a, double b, double r, int panels) {
  const double h = (b - a) / (2.0 * panels);
  auto f = [r](double t) { return std::pow(1.0 + t * t, -r); };
  double acc = f(a) + f(b);
  for (int i = 1; i < 2 * panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("log_gamma agrees with std::lgamma on the real axis") {
  for (double x : {0.3, 0.5, 1.0, 1.5, 2.0, 4.75, 10.0, 25.0}) {
    const double got = log_gamma(std::complex<double>(x, 0.0)).real();
    CHECK(got == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  }
}

TEST_CASE("c_r special values") {
  CHECK(c_r(1.0) == doctest::Approx(kPi).epsilon(1e-13));
  CHECK(c_r(2.0) == doctest::Approx(kPi / 2.0).epsilon(1e-13));
  // Gamma(1)/Gamma(3/2) = 2/sqrt(pi)
  CHECK(c_r(1.5) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK_THROWS_AS(c_r(0.5 + 1e-9), std::domain_error);
  CHECK_THROWS_AS(c_r(0.4), std::domain_error);
}

TEST_CASE("c_r matches its defining integral (quadrature oracle)") {
  // r = 2: integrate over [-200, 200], tail < 4e-7/3 each side is still too
  // coarse, so bound with exact tail: int_L^inf < L^{-3}/3.
  const double body = simpson_one_plus_tsq(-200.0, 200.0, 2.0, 400000);
  const double tail_bound = 2.0 * std::pow(200.0, -3.0) / 3.0;
  CHECK(std::abs(c_r(2.0) - body) < tail_bound + 1e-10);
}

TEST_CASE("eta_tail_integral closed forms") {
  CHECK(eta_tail_integral(0.0, 1.0) == doctest::Approx(kPi / 2.0).epsilon(1e-13));
  CHECK(eta_tail_integral(1.0, 1.0) == doctest::Approx(kPi / 4.0).epsilon(1e-13));
  for (double r : {0.51, 0.6, 0.75, 1.0, 1.5, 2.0, 3.5, 6.0, 10.0}) {
    CAPTURE(r);
    CHECK(eta_tail_integral(0.0, r) == doctest::Approx(c_r(r) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("eta_tail_integral against Simpson oracle at interior points") {
  // Compare G(x) - G(L) with the finite quadrature over [x, L]; differencing
  // removes the common tail so only quadrature error remains.
  for (double r : {0.8, 1.3, 2.5}) {
    for (double x : {0.0, 0.7, 1.5, 3.0, 10.0}) {
      CAPTURE(r);
      CAPTURE(x);
      const double L = 400.0;
      const double body = simpson_one_plus_tsq(x, L, r, 200000);
      const double got = eta_tail_integral(x, r) - eta_tail_integral(L, r);
      CHECK(std::abs(got - body) < 1e-11);
    }
  }
}

TEST_CASE("eta_tail_integral additivity across the series switch point") {
  // G(x) - G(y) must equal the finite integral [x, y] for x < 2 < y.
  const double r = 0.62;
  const double finite = simpson_one_plus_tsq(1.0, 5.0, r, 100000);
  CHECK(eta_tail_integral(1.0, r) - eta_tail_integral(5.0, r) ==
        doctest::Approx(finite).epsilon(1e-11));
}

TEST_CASE("zeta_tail matches brute force") {
  double brute = 0.0;
  for (long n = 3; n < 4000000; ++n) brute += std::pow(double(n), -2.5);
  CHECK(zeta_tail(2.5, 3.0) == doctest::Approx(brute).epsilon(1e-9));
}

TEST_CASE("one_plus_nsq_sum closed form pi*coth(pi)") {
  const double expected = kPi / std::tanh(kPi);
  CHECK(one_plus_nsq_sum(1.0) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("one_plus_nsq_tail against brute force at several r") {
  for (double r : {0.75, 1.0, 2.0}) {
    CAPTURE(r);
    double brute = 0.0;
    for (long n = 5000000; n > 4; --n) brute += std::pow(1.0 + double(n) * double(n), -r);
    const double missing = std::pow(5000000.0, 1.0 - 2.0 * r) / (2.0 * r - 1.0);
    CHECK(std::abs(one_plus_nsq_tail(4, r) - brute) < missing + 1e-11);
  }
}

TEST_CASE("zeta_series constant sequence reproduces one_plus_nsq_sum") {
  const auto s = BoundedSequence::constant(1.0);
  for (double r : {0.5004, 0.51, 0.75, 1.0, 2.0}) {
    CAPTURE(r);
    const auto got = zeta_series(s, r);
    CHECK(got.value == doctest::Approx(one_plus_nsq_sum(r)).epsilon(1e-12));
    CHECK(got.error_bound <= 1e-12 * std::abs(got.value));
  }
}

TEST_CASE("zeta_series zero sequence") {
  const auto got = zeta_series(BoundedSequence::zero(), 0.9);
  CHECK(got.value == 0.0);
  CHECK(got.error_bound == 0.0);
}

TEST_CASE("zeta_series geometric tails against brute force") {
  // s_n = 0.8 * 0.6^{|n-2|} for n >= 2, s_n = 0.8 * 0.3^{|n+1|} for n <= -1,
  // explicit window [-1, 2].
  BoundedSequence s(-1, {0.8, 0.1, -0.4, 0.8}, {TailKind::Geometric, 0.3},
                    {TailKind::Geometric, 0.6});
  const double r = 0.7;
  double brute = 0.0;
  for (long n = -400; n <= 400; ++n)
    brute += s.at(n) * std::pow(1.0 + double(n) * double(n), -r);
  const auto got = zeta_series(s, r);
  CHECK(got.value == doctest::Approx(brute).epsilon(1e-13));
}

TEST_CASE("residue of C_r equals 1") {
  const auto res = residue_at_half([](double r) { return c_r(r); });
  CHECK(std::abs(res.value - 1.0) < 1e-6);
  CHECK(res.error < 1e-6);
}

TEST_CASE("residue extractor oracle: 2*zeta(2r) has residue 1") {
  const auto res = residue_at_half([](double r) { return 2.0 * std::riemann_zeta(2.0 * r); });
  CHECK(std::abs(res.value - 1.0) < 1e-6);
}

TEST_CASE("residue of the full zeta series equals 1") {
  const auto res =
      residue_at_half([](double r) { return zeta_series(BoundedSequence::constant(1.0), r).value; });
  CHECK(std::abs(res.value - 1.0) < 1e-6);
}

TEST_CASE("residue of a holomorphic function is zero") {
  const auto res = residue_at_half([](double) { return 42.0; });
  CHECK(std::abs(res.value) < 1e-12);
}

TEST_CASE("eta_series vanishes identically for constant sequences") {
  const auto s = BoundedSequence::constant(0.37);
  for (double r : {0.51, 0.75, 1.0, 2.0}) {
    const auto got = eta_series(s, 3, r);
    CHECK(got.value == 0.0);
    CHECK(got.error_bound == 0.0);
  }
}

TEST_CASE("eta_series against direct evaluation on a geometric model") {
  // Mimics the q-deformed trace data at q^2 = 0.25, degree -1 isometry:
  //   s_n = 0.25 for n <= 0, s_n = 0.25 * 0.0625^n for n > 0, m = +1.
  const double q2 = 0.25;
  BoundedSequence s(0, {q2, q2 * q2 * q2}, {TailKind::Constant, 0.0},
                    {TailKind::Geometric, q2 * q2});
  const long m = 1;
  for (double r : {0.6, 1.0, 1.7}) {
    CAPTURE(r);
    double direct = 0.0;
    for (long n = 1; n <= 60; ++n)
      direct += (s.at(n - m) - s.at(n)) * eta_tail_integral(double(n), r);
    for (long n = -1; n >= -60; --n)
      direct -= (s.at(n - m) - s.at(n)) * eta_tail_integral(double(-n), r);
    const auto got = eta_series(s, m, r);
    CHECK(got.value == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("theta identity: eta = theta(s) - theta(shifted s) for r > 1") {
  BoundedSequence s(0, {0.25, 0.015625}, {TailKind::Constant, 0.0},
                    {TailKind::Geometric, 0.0625});
  for (long m : {1L, 2L, -2L}) {
    for (double r : {1.75, 2.0}) {
      CAPTURE(m);
      CAPTURE(r);
      const auto eta = eta_series(s, m, r);
      const auto th_a = theta_series(s, r);
      const auto th_b = theta_series(s.shifted(m), r);
      const double lhs = eta.value;
      const double rhs = th_a.value - th_b.value;
      const double slack = eta.error_bound + th_a.error_bound + th_b.error_bound + 1e-9;
      CHECK(std::abs(lhs - rhs) < slack);
    }
  }
}

TEST_CASE("laurent polynomial arithmetic and evaluation") {
  LaurentPolynomial p;
  p.add_term(0, -0.0625);
  p.add_term(1, -0.1875);
  CHECK(p.evaluate(1.0 / 3.0) == doctest::Approx(-0.125).epsilon(1e-15));

  LaurentPolynomial q = p.shifted(-1);
  CHECK(q.coeff(-1) == -0.0625);
  CHECK(q.coeff(0) == -0.1875);

  p.add_term(1, 0.1875);
  CHECK(p.coeffs().size() == 1);  // exact zero pruned

  ExactLaurentPolynomial e;
  e.add_term(-2, Rational(3, 4));
  e.add_term(1, Rational(-1, 2));
  CHECK(evaluate_exact(e, Rational(1, 2)) == Rational(3, 4) * 4 - Rational(1, 4));
}

TEST_CASE("bounded sequence tails") {
  BoundedSequence s(-1, {2.0, 1.0, 0.5}, {TailKind::Constant, 0.0},
                    {TailKind::Geometric, 0.5});
  CHECK(s.at(-1) == 2.0);
  CHECK(s.at(-7) == 2.0);
  CHECK(s.at(1) == 0.5);
  CHECK(s.at(3) == 0.125);
  CHECK(s.shifted(2).at(2) == 1.0);  // (shifted s)_n = s_{n-2}
  CHECK(BoundedSequence::zero().identically_zero());
}

TEST_CASE("rational power and complex rational arithmetic") {
  CHECK(rational_pow(Rational(2), 10) == Rational(1024));
  CHECK(rational_pow(Rational(3), -2) == Rational(1, 9));
  RationalComplex a{Rational(1, 2), Rational(1, 3)};
  RationalComplex b{Rational(2), Rational(-1)};
  CHECK((a * b).re == Rational(4, 3));
  CHECK((a * b).im == Rational(1, 6));
  CHECK(a.conj().im == Rational(-1, 3));
}
