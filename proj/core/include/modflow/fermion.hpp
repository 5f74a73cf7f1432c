#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "modflow/graded.hpp"
#include "modflow/parse_error.hpp"

namespace modflow::fermion {

using Matrix = Eigen::MatrixXcd;

/// Finite CAR algebra on `modes` modes (dimension 2^modes) carrying the
/// quasi-free product state with single-mode weight lambda in (0, 1/2) and
/// the particle-number gauge action. beta = log((1-lambda)/lambda).
class Model {
 public:
  struct Component {
    int modes = 0;
    Matrix mat;
  };
  using Scalar = std::complex<double>;

  static constexpr int kMaxModes = 10;

  Model(int modes, double lambda);

  int modes() const { return modes_; }
  long dimension() const { return 1L << modes_; }
  double lambda() const { return lambda_; }
  double beta() const { return std::log((1.0 - lambda_) / lambda_); }
  KmsContext kms() const { return {beta(), /*full=*/true}; }
  double prune_tol() const { return prune_tol_; }
  void set_prune_tol(double t) { prune_tol_ = t; }

  /// Generator a_j (1-based, degree +1), Jordan-Wigner form: sign string on
  /// the first j-1 modes, single-mode step block on mode j.
  Matrix generator(int j) const;

  Component mul(const Component& a, const Component& b) const;
  Component adj(const Component& a) const;
  Component add(const Component& a, const Component& b) const;
  Component scale(const Scalar& s, const Component& a) const;
  Scalar from_int(int k) const { return Scalar(double(k), 0.0); }
  Scalar twist_factor(int k) const { return std::pow((1.0 - lambda_) / lambda_, k); }
  std::complex<double> tau(const Component& a) const { return state(a.mat); }
  double norm(const Component& a) const { return a.mat.norm(); }
  bool is_negligible(const Component& a) const { return a.mat.norm() < prune_tol_; }
  Component one() const;
  bool compatible(const Component& a, const Component& b) const {
    return a.modes == b.modes;
  }

  /// phi_lambda(x): diagonal weights (1-lambda)^{modes-|i|} lambda^{|i|}.
  std::complex<double> state(const Matrix& x) const;

  /// Spectral positivity check (self-adjoint with eigenvalues >= -1e-9).
  bool is_positive(const Component& a) const;

  /// Occupation number of a basis index.
  static int occupation(long idx) { return __builtin_popcountll((unsigned long long)idx); }

 private:
  int modes_;
  double lambda_;
  double prune_tol_ = 1e-13;
};

using Element = Graded<Model>;

/// Split a raw matrix into homogeneous components by occupation-number
/// difference; exact bookkeeping, no Fourier averaging.
Element degree_decompose(const Model& m, const Matrix& x);

/// a_j as a graded element (degree +1).
Element generator_element(const Model& m, int j);

/// Product of generators from a literal like "a1 a2* a3".
Element parse_word(const Model& m, const std::string& text);

/// Tr_phi(f Phi_n) = e^{n beta} phi_lambda(f) for degree-zero f (full
/// spectral subspaces). Throws on nonzero-degree input or a non-real value.
double spectral_trace(const Model& m, const Element& f, long n);

}  // namespace modflow::fermion
