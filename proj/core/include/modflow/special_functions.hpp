#pragma once

#include <array>
#include <complex>

namespace modflow {

/// log Gamma(z) for Re(z) > 0, Lanczos approximation (g = 607/128, 15 terms).
/// Relative accuracy is a few ulp across the domain used here.
std::complex<double> log_gamma(std::complex<double> z);

/// C_r = sqrt(pi) Gamma(r - 1/2) / Gamma(r), the normalisation constant of
/// the residue flow formula; equals the full-line integral of (1+x^2)^{-r}.
/// Simple pole at r = 1/2 with residue 1.
///
/// Throws std::domain_error when Re(r) <= 1/2 or |r - 1/2| < 1e-8.
std::complex<double> c_r(std::complex<double> r);
double c_r(double r);

/// G(x, r) = integral over [x, inf) of (1+t^2)^{-r} dt, for x >= 0, r > 1/2.
///
/// Evaluated as Gauss-Legendre (order 64) on the tan-substituted segment
/// [arctan x, arctan 2] plus a binomial-series tail from t = 2; the split
/// keeps full accuracy down to r near 1/2 where the substituted integrand
/// is singular at pi/2. G(0, r) = C_r / 2.
double eta_tail_integral(double x, double r);

/// Hurwitz-style sum  Z(s, a) = sum_{n >= a} n^{-s}  for real s > 1, a >= 1,
/// via Euler-Maclaurin. Machine-accurate for the ranges used here.
double zeta_tail(double s, double a);

/// sum_{n > N} (1+n^2)^{-r} for N >= 0, r > 1/2, by binomial expansion into
/// zeta_tail terms. Exact tail for constant-tailed series.
double one_plus_nsq_tail(long n_from_exclusive, double r);

/// S(r) = sum_{n in Z} (1+n^2)^{-r}, r > 1/2. Simple pole at r = 1/2 with
/// residue 1.
double one_plus_nsq_sum(double r);

/// Fixed Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::array<double, 128> nodes;
  std::array<double, 128> weights;
  int order;
};
const GaussLegendreRule& gauss_legendre(int order);  // order in {64, 128}

/// Integrate f on [a, b] with the order-64 rule.
template <class F>
double gl64(F&& f, double a, double b) {
  const auto& rule = gauss_legendre(64);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < rule.order; ++i)
    acc += rule.weights[std::size_t(i)] * f(mid + half * rule.nodes[std::size_t(i)]);
  return acc * half;
}

}  // namespace modflow
