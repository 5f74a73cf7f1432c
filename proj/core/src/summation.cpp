#include "modflow/summation.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "modflow/runtime.hpp"
#include "modflow/special_functions.hpp"

namespace modflow {

namespace {

constexpr long kTermCap = 1'000'000;  // truncation cap before bounding analytically

double weight(long n, double r) {
  const double x = double(n);
  return std::pow(1.0 + x * x, -r);
}

// Integral-comparison bound for sum_{n > N} G(n, r), valid for r > 1:
//   sum_{n>N} G(n) <= int_N^inf G(t) dt = (1+N^2)^{1-r} / (2(r-1)) - N G(N).
double g_series_remainder(double n_from, double r) {
  const double bound = std::pow(1.0 + n_from * n_from, 1.0 - r) / (2.0 * (r - 1.0)) -
                       n_from * eta_tail_integral(n_from, r);
  return std::max(bound, 0.0);
}

}  // namespace

namespace {

struct WindowCtx {
  const BoundedSequence* s;
  double r;
};

double window_term(long i, const void* raw) {
  const auto* ctx = static_cast<const WindowCtx*>(raw);
  const long n = ctx->s->n_min() + i;
  return ctx->s->at(n) * weight(n, ctx->r);
}

}  // namespace

SumResult zeta_series(const BoundedSequence& s, double r) {
  if (!(r > 0.5)) throw std::domain_error("zeta_series: r > 1/2 required");
  SumResult out;

  // Window part: fixed blocks combined pairwise in index order, so the result
  // is bit-identical for any worker count.
  const WindowCtx ctx{&s, r};
  out.value = parallel_sum(s.n_max() - s.n_min() + 1, window_term, &ctx);

  // Right tail.
  switch (s.right_tail().kind) {
    case TailKind::Zero:
      break;
    case TailKind::Constant: {
      // explicit gap down to n = 0 when the window sits left of the origin,
      // then the closed-form tail of (1+n^2)^{-r}
      for (long n = s.n_max() + 1; n <= 0; ++n) out.value += s.at(n) * weight(n, r);
      out.value += s.at(s.n_max()) * one_plus_nsq_tail(std::max(s.n_max(), 0L), r);
      break;
    }
    case TailKind::Geometric: {
      const double ratio = s.right_tail().ratio;
      long n = s.n_max() + 1;
      while (n <= s.n_max() + kTermCap) {
        const double term = s.at(n) * weight(n, r);
        out.value += term;
        ++n;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(out.value))) break;
      }
      out.error_bound += std::abs(s.at(n)) / (1.0 - ratio) * weight(n, r);
      break;
    }
  }

  // Left tail, mirrored.
  switch (s.left_tail().kind) {
    case TailKind::Zero:
      break;
    case TailKind::Constant: {
      for (long n = 0; n < s.n_min(); ++n) out.value += s.at(n) * weight(n, r);
      out.value += s.at(s.n_min()) * one_plus_nsq_tail(std::max(-s.n_min(), 0L), r);
      break;
    }
    case TailKind::Geometric: {
      const double ratio = s.left_tail().ratio;
      long n = s.n_min() - 1;
      while (n >= s.n_min() - kTermCap) {
        const double term = s.at(n) * weight(n, r);
        out.value += term;
        --n;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(out.value))) break;
      }
      out.error_bound += std::abs(s.at(n)) / (1.0 - ratio) * weight(n, r);
      break;
    }
  }
  return out;
}

SumResult eta_series(const BoundedSequence& s, long m, double r) {
  if (!(r > 0.5)) throw std::domain_error("eta_series: r > 1/2 required");
  SumResult out;
  if (m == 0 || s.identically_zero()) return out;

  const auto diff = [&](long n) { return s.at(n - m) - s.at(n); };

  // The difference sequence vanishes identically outside [hard_lo, hard_hi]
  // unless the corresponding tail is geometric, in which case it decays with
  // that ratio.
  const long hard_lo = s.n_min() + std::min(m, 0L);
  const long hard_hi = s.n_max() + std::max(m, 0L);

  // n >= 1 branch: + (s_{n-m} - s_n) G(n).
  {
    const bool finite = s.right_tail().kind != TailKind::Geometric;
    long n = 1;
    while (true) {
      if (finite && n > hard_hi) break;
      if (n > kTermCap || (!finite && n > hard_hi && std::abs(diff(n)) == 0.0)) {
        if (!finite) {
          const double ratio = s.right_tail().ratio;
          out.error_bound +=
              std::abs(diff(n)) / (1.0 - ratio) * eta_tail_integral(double(n), r);
        }
        break;
      }
      const double d = diff(n);
      out.value += d * eta_tail_integral(double(n), r);
      if (!finite && n > hard_hi && std::abs(d) < 1e-18 * (1.0 + std::abs(out.value))) {
        const double ratio = s.right_tail().ratio;
        out.error_bound +=
            std::abs(diff(n + 1)) / (1.0 - ratio) * eta_tail_integral(double(n + 1), r);
        break;
      }
      ++n;
    }
  }

  // n <= -1 branch: - (s_{n-m} - s_n) G(-n).
  {
    const bool finite = s.left_tail().kind != TailKind::Geometric;
    long n = -1;
    while (true) {
      if (finite && n < hard_lo) break;
      if (n < -kTermCap || (!finite && n < hard_lo && std::abs(diff(n)) == 0.0)) {
        if (!finite) {
          const double ratio = s.left_tail().ratio;
          out.error_bound +=
              std::abs(diff(n)) / (1.0 - ratio) * eta_tail_integral(double(-n), r);
        }
        break;
      }
      const double d = diff(n);
      out.value -= d * eta_tail_integral(double(-n), r);
      if (!finite && n < hard_lo && std::abs(d) < 1e-18 * (1.0 + std::abs(out.value))) {
        const double ratio = s.left_tail().ratio;
        out.error_bound +=
            std::abs(diff(n - 1)) / (1.0 - ratio) * eta_tail_integral(double(-n + 1), r);
        break;
      }
      --n;
    }
  }
  return out;
}

SumResult theta_series(const BoundedSequence& t, double r) {
  if (!(r > 1.0)) throw std::domain_error("theta_series: r > 1 required");
  SumResult out;
  if (t.identically_zero()) return out;

  const long window = std::max(std::labs(t.n_min()), std::labs(t.n_max()));

  // Pair up (n, -n): theta = - sum_{n>=1} (t_n - t_{-n}) G(n).
  for (long n = 1; n <= window; ++n)
    out.value -= (t.at(n) - t.at(-n)) * eta_tail_integral(double(n), r);

  // Beyond the window split each side into its constant limit plus a decaying
  // remainder. Constant parts leave c_R - c_L times the G series.
  const double c_right = t.right_tail().kind == TailKind::Constant ? t.at(t.n_max()) : 0.0;
  const double c_left = t.left_tail().kind == TailKind::Constant ? t.at(t.n_min()) : 0.0;

  // Decaying remainders (geometric tails, zero otherwise).
  {
    long n = window + 1;
    while (n <= window + kTermCap) {
      const double d = (t.at(n) - c_right) - (t.at(-n) - c_left);
      if (d == 0.0) break;
      const double g = eta_tail_integral(double(n), r);
      out.value -= d * g;
      ++n;
      if (std::abs(d) * g < 1e-18 * (1.0 + std::abs(out.value))) {
        double rem = 0.0;
        if (t.right_tail().kind == TailKind::Geometric)
          rem += std::abs(t.at(n)) / (1.0 - t.right_tail().ratio);
        if (t.left_tail().kind == TailKind::Geometric)
          rem += std::abs(t.at(-n)) / (1.0 - t.left_tail().ratio);
        out.error_bound += rem * eta_tail_integral(double(n), r);
        break;
      }
    }
  }

  // Constant part.
  const double c = c_right - c_left;
  if (c != 0.0) {
    long n = window + 1;
    while (n <= window + kTermCap) {
      const double g = eta_tail_integral(double(n), r);
      out.value -= c * g;
      ++n;
      if (std::abs(c) * g < 1e-16 * (1.0 + std::abs(out.value))) break;
    }
    out.error_bound += std::abs(c) * g_series_remainder(double(n - 1), r);
  }
  return out;
}

}  // namespace modflow
