#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace modflow {

/// Behaviour of a two-sided integer-indexed sequence beyond its tabulated
/// window. Every series kernel in this library consumes sequences of this
/// shape; the tail structure is what makes summation near the abscissa of
/// convergence exact instead of truncated.
enum class TailKind : std::uint8_t {
  Zero,       ///< identically zero beyond the window
  Constant,   ///< frozen at the window-edge value
  Geometric,  ///< edge value decaying by `ratio` per unit step outward
};

struct Tail {
  TailKind kind = TailKind::Zero;
  double ratio = 0.0;  // only for Geometric, in (0,1)
};

/// Real sequence s_n, n in Z, given by explicit values on [n_min, n_max] and
/// a structured tail on each side.
class BoundedSequence {
 public:
  BoundedSequence() : n_min_(0), values_{0.0} {}

  BoundedSequence(long n_min, std::vector<double> values, Tail left, Tail right)
      : n_min_(n_min), values_(std::move(values)), left_(left), right_(right) {
    if (values_.empty()) throw std::invalid_argument("sequence window is empty");
    check_tail(left_);
    check_tail(right_);
  }

  /// Constant sequence (both tails frozen at the same value).
  static BoundedSequence constant(double c) {
    return BoundedSequence(0, {c}, {TailKind::Constant, 0.0}, {TailKind::Constant, 0.0});
  }

  static BoundedSequence zero() { return BoundedSequence(); }

  long n_min() const { return n_min_; }
  long n_max() const { return n_min_ + long(values_.size()) - 1; }
  const Tail& left_tail() const { return left_; }
  const Tail& right_tail() const { return right_; }

  double at(long n) const {
    if (n < n_min_) {
      switch (left_.kind) {
        case TailKind::Zero: return 0.0;
        case TailKind::Constant: return values_.front();
        case TailKind::Geometric:
          return values_.front() * pow_steps(left_.ratio, n_min_ - n);
      }
    }
    if (n > n_max()) {
      switch (right_.kind) {
        case TailKind::Zero: return 0.0;
        case TailKind::Constant: return values_.back();
        case TailKind::Geometric:
          return values_.back() * pow_steps(right_.ratio, n - n_max());
      }
    }
    return values_[std::size_t(n - n_min_)];
  }

  /// The shifted sequence n -> s_{n-k}.
  BoundedSequence shifted(long k) const {
    return BoundedSequence(n_min_ + k, values_, left_, right_);
  }

  /// Largest |s_n| over window and tail onset; tails never exceed the edges.
  double bound() const {
    double b = 0.0;
    for (double v : values_) b = std::max(b, std::abs(v));
    return b;
  }

  bool identically_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
  }

 private:
  static void check_tail(const Tail& t) {
    if (t.kind == TailKind::Geometric && !(t.ratio > 0.0 && t.ratio < 1.0))
      throw std::invalid_argument("geometric tail ratio must lie in (0,1)");
  }

  static double pow_steps(double ratio, long steps) {
    double acc = 1.0;
    for (long i = 0; i < steps; ++i) {
      acc *= ratio;
      if (acc == 0.0) break;
    }
    return acc;
  }

  long n_min_;
  std::vector<double> values_;
  Tail left_, right_;
};

}  // namespace modflow
