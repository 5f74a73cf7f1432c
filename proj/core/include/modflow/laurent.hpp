#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "modflow/rational.hpp"

namespace modflow {

/// Finite-support Laurent polynomial with coefficients of type T, the value
/// group of the equivariant flow. Coefficients are kept sparse by exponent;
/// exact zeros are pruned on insertion.
template <class T>
class BasicLaurentPolynomial {
 public:
  BasicLaurentPolynomial() = default;

  void add_term(long exponent, const T& coeff) {
    if (coeff == T{}) return;
    auto [it, fresh] = coeffs_.try_emplace(exponent, coeff);
    if (!fresh) {
      it->second += coeff;
      if (it->second == T{}) coeffs_.erase(it);
    }
  }

  const std::map<long, T>& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  T coeff(long exponent) const {
    auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? T{} : it->second;
  }

  BasicLaurentPolynomial& operator+=(const BasicLaurentPolynomial& o) {
    for (const auto& [n, c] : o.coeffs_) add_term(n, c);
    return *this;
  }

  friend BasicLaurentPolynomial operator+(BasicLaurentPolynomial a,
                                          const BasicLaurentPolynomial& b) {
    a += b;
    return a;
  }

  BasicLaurentPolynomial operator-() const {
    BasicLaurentPolynomial out;
    for (const auto& [n, c] : coeffs_) out.coeffs_.emplace(n, -c);
    return out;
  }

  /// Multiplication by chi^k.
  BasicLaurentPolynomial shifted(long k) const {
    BasicLaurentPolynomial out;
    for (const auto& [n, c] : coeffs_) out.coeffs_.emplace(n + k, c);
    return out;
  }

  /// Evaluation at a positive real point, terms in ascending exponent order
  /// so results are reproducible bit for bit.
  double evaluate(double x) const
    requires std::is_same_v<T, double>
  {
    if (x <= 0.0) throw std::domain_error("laurent evaluation requires x > 0");
    double acc = 0.0;
    for (const auto& [n, c] : coeffs_) acc += c * std::pow(x, double(n));
    return acc;
  }

  double max_abs_coeff() const
    requires std::is_same_v<T, double>
  {
    double m = 0.0;
    for (const auto& [n, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

 private:
  std::map<long, T> coeffs_;
};

using LaurentPolynomial = BasicLaurentPolynomial<double>;
using ExactLaurentPolynomial = BasicLaurentPolynomial<Rational>;

inline LaurentPolynomial to_double_poly(const ExactLaurentPolynomial& p) {
  LaurentPolynomial out;
  for (const auto& [n, c] : p.coeffs()) out.add_term(n, to_double(c));
  return out;
}

/// Evaluation of an exact polynomial at an exact point.
inline Rational evaluate_exact(const ExactLaurentPolynomial& p, const Rational& x) {
  Rational acc{0};
  for (const auto& [n, c] : p.coeffs()) acc += c * rational_pow(x, n);
  return acc;
}

}  // namespace modflow
