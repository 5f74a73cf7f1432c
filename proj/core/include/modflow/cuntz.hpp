#pragma once

#include <compare>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "modflow/graded.hpp"
#include "modflow/laurent.hpp"
#include "modflow/parse_error.hpp"
#include "modflow/rational.hpp"

namespace modflow::cuntz {

/// Word S_alpha S_beta* in O_n. Stored form is canonical: a creation block
/// followed by an annihilation block admits no further reduction.
struct Word {
  std::vector<int> alpha;
  std::vector<int> beta;

  int degree() const { return int(alpha.size()) - int(beta.size()); }
  Word adjoint() const { return {beta, alpha}; }

  friend auto operator<=>(const Word&, const Word&) = default;
};

/// Finite linear combination of words of a single degree, with exact
/// rational-complex coefficients. Exact zeros are pruned eagerly.
struct Combo {
  int n = 0;  // generator count of the owning O_n
  std::map<Word, RationalComplex> terms;
};

/// Exact symbolic model of the Cuntz algebra O_n with its gauge action and
/// the unique KMS state at inverse temperature log n.
class Model {
 public:
  using Component = Combo;
  using Scalar = RationalComplex;

  static constexpr int kMaxGenerators = 16;
  static constexpr int kMaxWordLength = 32;

  explicit Model(int n);

  int generators() const { return n_; }
  double beta() const;
  KmsContext kms() const { return {beta(), /*full=*/true}; }

  Component mul(const Component& a, const Component& b) const;
  Component adj(const Component& a) const;
  Component add(const Component& a, const Component& b) const;
  Component scale(const Scalar& s, const Component& a) const;
  Scalar from_int(int k) const { return Scalar{Rational(k)}; }
  /// e^{k beta} = n^k, exact.
  Scalar twist_factor(int k) const { return Scalar{rational_pow(Rational(n_), k)}; }
  std::complex<double> tau(const Component& a) const { return tau_exact(a).to_complex(); }
  double norm(const Component& a) const;
  bool is_negligible(const Component& a) const { return a.terms.empty(); }
  Component one() const;
  bool compatible(const Component& a, const Component& b) const { return a.n == b.n; }

  /// phi(S_alpha S_beta*) = delta_{alpha beta} n^{-|alpha|}, extended
  /// linearly; exact.
  RationalComplex tau_exact(const Component& a) const;

  Component word_component(const Word& w, RationalComplex coeff = RationalComplex(1)) const;

 private:
  int n_;
};

using Element = Graded<Model>;

/// Single word as a graded element.
Element word_element(const Model& m, const Word& w,
                     RationalComplex coeff = RationalComplex(1));

/// phi on a graded element, exact.
RationalComplex phi_exact(const Model& m, const Element& a);

/// Tr_phi(f Phi_k) = n^k tau(f) for degree-zero f (full spectral subspaces),
/// exact. Throws on nonzero-degree input.
Rational spectral_trace_exact(const Model& m, const Element& f, long k);

/// Exact spectral flow of a modular element: sum_k (-k) tau(v_k v_k*).
/// Throws std::invalid_argument when v is not modular.
Rational exact_spectral_flow(const Model& m, const Element& v);

/// Exact equivariant flow: the chi-polynomial with rational coefficients.
ExactLaurentPolynomial exact_equivariant_flow(const Model& m, const Element& v);

using ParseError = modflow::ParseError;

/// Word literal grammar:  S[d(,d)*]  optional, '.' separator, S*[d(,d)*]
/// optional; empty index list or missing block means the identity.
///   "S[1,2].S*[1]"  ->  S_1 S_2 S_1*
Word parse_word(const std::string& text, int n);

std::string to_string(const Word& w);

}  // namespace modflow::cuntz
