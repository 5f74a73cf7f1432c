#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <sstream>
#include <string>

namespace modflow {

/// Arbitrary-precision rational scalar. Word combinatorics stay exact at any
/// depth the desk-scale caps allow.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

/// Complex scalar with exact rational real and imaginary parts.
struct RationalComplex {
  Rational re{0};
  Rational im{0};

  RationalComplex() = default;
  RationalComplex(Rational r) : re(std::move(r)) {}
  RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  RationalComplex(int v) : re(v) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  RationalComplex conj() const { return {re, -im}; }

  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  friend RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend RationalComplex operator-(const RationalComplex& a, const RationalComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend RationalComplex operator-(const RationalComplex& a) { return {-a.re, -a.im}; }
  friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  RationalComplex& operator+=(const RationalComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  RationalComplex& operator-=(const RationalComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  RationalComplex& operator*=(const RationalComplex& o) { return *this = *this * o; }

  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re == b.re && a.im == b.im;
  }

  /// |a|_1 = |re| + |im| as a double; used only for residual reporting.
  double magnitude1() const {
    return std::abs(to_double(re)) + std::abs(to_double(im));
  }
};

/// Exact integer power q^k for k of either sign (q != 0 when k < 0).
inline Rational rational_pow(const Rational& q, long k) {
  Rational acc{1};
  Rational base = k >= 0 ? q : Rational{1} / q;
  for (long i = 0, n = k >= 0 ? k : -k; i < n; ++i) acc *= base;
  return acc;
}

}  // namespace modflow
