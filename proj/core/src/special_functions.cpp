#include "modflow/special_functions.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace modflow {

namespace {

// Lanczos coefficients, g = 607/128, n = 15.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // log(2*pi)/2

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.real() <= 0.0)
    throw std::domain_error("log_gamma: Re(z) > 0 required");
  std::complex<double> sum = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) sum += kLanczos[k] / (z + double(k - 1));
  const std::complex<double> t = z + (kLanczosG - 0.5);
  return kHalfLogTwoPi + (z - 0.5) * std::log(t) - t + std::log(sum);
}

std::complex<double> c_r(std::complex<double> r) {
  const std::complex<double> shift = r - 0.5;
  if (std::abs(shift) < 1e-8)
    throw std::domain_error("c_r: evaluation too close to the pole at r = 1/2");
  if (shift.real() <= 0.0)
    throw std::domain_error("c_r: Re(r) > 1/2 required");
  const double log_sqrt_pi = 0.5723649429247000870717137;  // log(sqrt(pi))
  return std::exp(log_sqrt_pi + log_gamma(shift) - log_gamma(r));
}

double c_r(double r) { return c_r(std::complex<double>(r, 0.0)).real(); }

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes by Newton iteration on P_n.
// ---------------------------------------------------------------------------

namespace {

GaussLegendreRule make_rule(int n) {
  GaussLegendreRule rule{};
  rule.order = n;
  for (int i = 0; i < n; ++i) {
    // Standard initial guess, then Newton on the Legendre recurrence.
    double x = std::cos(M_PI * (double(i) + 0.75) / (double(n) + 0.5));
    double p1 = 0.0, dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * x * p2 - double(j) * p3) / double(j + 1);
      }
      dp = double(n) * (x * p1 - p2) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[std::size_t(i)] = x;
    rule.weights[std::size_t(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
  static const GaussLegendreRule r64 = make_rule(64);
  static const GaussLegendreRule r128 = make_rule(128);
  if (order == 64) return r64;
  if (order == 128) return r128;
  throw std::invalid_argument("gauss_legendre: only orders 64 and 128 are tabulated");
}

// ---------------------------------------------------------------------------
// G(x, r)
// ---------------------------------------------------------------------------

namespace {

// Binomial series for the tail from x >= 2:
//   G(x,r) = sum_j C(-r, j) x^{1-2r-2j} / (2r + 2j - 1).
double tail_series_from(double x, double r) {
  double coeff = 1.0;  // C(-r, 0)
  double xpow = std::pow(x, 1.0 - 2.0 * r);
  const double inv_x2 = 1.0 / (x * x);
  double acc = 0.0;
  for (int j = 0; j < 200; ++j) {
    const double term = coeff * xpow / (2.0 * r + 2.0 * j - 1.0);
    acc += term;
    if (std::abs(term) < 1e-17 * (std::abs(acc) + 1e-300)) break;
    coeff *= -(r + double(j)) / double(j + 1);
    xpow *= inv_x2;
  }
  return acc;
}

template <class F>
double integrate_order(const GaussLegendreRule& rule, F&& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < rule.order; ++i)
    acc += rule.weights[std::size_t(i)] * f(mid + half * rule.nodes[std::size_t(i)]);
  return acc * half;
}

// One-time doubling check of the quadrature on a probe integrand.
void quadrature_self_check() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    auto probe = [](double theta) { return std::pow(std::cos(theta), 1.2); };
    const double a = 0.3, b = std::atan(2.0);
    const double v64 = integrate_order(gauss_legendre(64), probe, a, b);
    const double v128 = integrate_order(gauss_legendre(128), probe, a, b);
    if (std::abs(v64 - v128) > 1e-12)
      std::cerr << "modflow: quadrature self-check disagreement " << std::abs(v64 - v128)
                << "\n";
  });
}

}  // namespace

double eta_tail_integral(double x, double r) {
  if (x < 0.0) throw std::domain_error("eta_tail_integral: x >= 0 required");
  if (!(r > 0.5)) throw std::domain_error("eta_tail_integral: r > 1/2 required");
  quadrature_self_check();
  if (x >= 2.0) return tail_series_from(x, r);
  // integral over [x, 2] under t = tan(theta), integrand cos(theta)^{2r-2},
  // smooth on [arctan x, arctan 2]; series tail from 2.
  const double s = 2.0 * r - 2.0;
  const double head = gl64([s](double theta) { return std::pow(std::cos(theta), s); },
                           std::atan(x), std::atan(2.0));
  return head + tail_series_from(2.0, r);
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin zeta tails
// ---------------------------------------------------------------------------

namespace {

// B_{2k} / (2k)! for k = 1..8
constexpr std::array<double, 8> kBernoulliOverFact = {
    8.3333333333333333e-02,  // 1/12
    -1.3888888888888889e-03, // -1/720
    3.3068783068783069e-05,  // 1/30240
    -8.2671957671957672e-07, // -1/1209600
    2.0876756987868099e-08,
    -5.2841901386874932e-10,
    1.3382536530684679e-11,
    -3.3896802963225829e-13,
};

constexpr double kEmBase = 24.0;  // Euler-Maclaurin switch-over point

}  // namespace

double zeta_tail(double s, double a) {
  if (!(s > 1.0)) throw std::domain_error("zeta_tail: s > 1 required");
  if (!(a >= 1.0)) throw std::domain_error("zeta_tail: a >= 1 required");
  double acc = 0.0;
  double m = a;
  while (m < kEmBase) {
    acc += std::pow(m, -s);
    m += 1.0;
  }
  // Sum from m upward by Euler-Maclaurin.
  const double lm = std::log(m);
  if (s * lm > 700.0) return acc;  // remainder below double underflow
  const double m_to_minus_s = std::exp(-s * lm);
  acc += m_to_minus_s * m / (s - 1.0) + 0.5 * m_to_minus_s;
  double poch = s;                       // s (s+1) ... (s+2k-2)
  double mpow = m_to_minus_s / m;        // m^{-s-2k+1}
  for (std::size_t k = 0; k < kBernoulliOverFact.size(); ++k) {
    acc += kBernoulliOverFact[k] * poch * mpow;
    poch *= (s + 2.0 * k + 1.0) * (s + 2.0 * k + 2.0);
    mpow /= m * m;
  }
  return acc;
}

double one_plus_nsq_tail(long n_from_exclusive, double r) {
  if (!(r > 0.5)) throw std::domain_error("one_plus_nsq_tail: r > 1/2 required");
  long n = n_from_exclusive + 1;
  if (n < 1) throw std::domain_error("one_plus_nsq_tail: tail must start at n >= 1");
  double acc = 0.0;
  while (n < 12) {
    acc += std::pow(1.0 + double(n) * double(n), -r);
    ++n;
  }
  // (1+n^2)^{-r} = sum_j C(-r,j) n^{-2r-2j} for n >= 12.
  double coeff = 1.0;
  for (int j = 0; j < 200; ++j) {
    const double term = coeff * zeta_tail(2.0 * r + 2.0 * j, double(n));
    acc += term;
    if (std::abs(term) < 1e-17 * (std::abs(acc) + 1e-300)) break;
    coeff *= -(r + double(j)) / double(j + 1);
  }
  return acc;
}

double one_plus_nsq_sum(double r) { return 1.0 + 2.0 * one_plus_nsq_tail(0, r); }

}  // namespace modflow
