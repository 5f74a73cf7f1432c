#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "modflow/graded.hpp"
#include "modflow/richardson.hpp"
#include "modflow/special_functions.hpp"
#include "modflow/summation.hpp"
#include "modflow/trace_table.hpp"

namespace modflow::cocycle {

using Complex = std::complex<double>;

/// phi_1(a0, a1) = phi(a0 [D, a1]); the twisted cyclic cocycle available
/// when spectral subspaces are full. Refuses non-full contexts: the residue
/// form must be used instead.
template <AlgebraModel M>
Complex phi1(const M& m, const Graded<M>& a0, const Graded<M>& a1) {
  if (!m.kms().full_subspaces)
    throw std::invalid_argument("phi1: requires full spectral subspaces");
  return phi(m, mul(m, a0, d_commutator(m, a1)));
}

/// Exact variant for models with an exact state (the word models).
template <AlgebraModel M>
  requires requires(const M& m, const typename M::Component& c) { m.tau_exact(c); }
auto phi1_exact(const M& m, const Graded<M>& a0, const Graded<M>& a1) {
  const auto x = mul(m, a0, d_commutator(m, a1));
  using Exact = decltype(m.tau_exact(x.part(0)));
  return x.has_degree(0) ? m.tau_exact(x.part(0)) : Exact{};
}

/// |phi_1(a0, a1) + phi_1(twist(a1), a0)|: the twisted cyclicity residual.
template <AlgebraModel M>
double cyclicity_residual(const M& m, const Graded<M>& a0, const Graded<M>& a1) {
  return std::abs(phi1(m, a0, a1) + phi1(m, twist(m, a1), a0));
}

// ---------------------------------------------------------------------------
// r-dependent cochains. For full-subspace algebra models every phi_D sequence
// is constant, so the eta parts vanish identically and the zeta parts are
// multiples of S(r) = sum (1+n^2)^{-r}; both are still evaluated through the
// series kernels rather than short-circuited.
// ---------------------------------------------------------------------------

/// eta^r(a0, a1) = (1/2) int_1^inf phi_D((sigma(a1)a0 - a0 a1) D (1+sD^2)^{-r}) s^{-1/2} ds.
template <AlgebraModel M>
Complex eta_r(const M& m, const Graded<M>& a0, const Graded<M>& a1, double r) {
  if (!m.kms().full_subspaces)
    throw std::invalid_argument("eta_r: algebra route requires full spectral subspaces");
  Complex acc = 0.0;
  for (const auto& [k, x] : a0.parts()) {
    const int mdeg = -k;
    if (!a1.has_degree(mdeg)) continue;  // zero unless degrees cancel
    const auto prod = m.mul(x, a1.part(mdeg));
    const Complex tau = m.tau(prod);
    const auto re = eta_series(BoundedSequence::constant(tau.real()), mdeg, r);
    const auto im = eta_series(BoundedSequence::constant(tau.imag()), mdeg, r);
    acc += Complex(re.value, im.value);
  }
  return acc;
}

/// psi^r(a0, a1) = phi_D(a0 [D, a1] (1+D^2)^{-r}) + eta^r(a0, a1).
template <AlgebraModel M>
Complex psi_r(const M& m, const Graded<M>& a0, const Graded<M>& a1, double r) {
  Complex acc = eta_r(m, a0, a1, r);
  for (const auto& [k, x] : a0.parts()) {
    const int mdeg = -k;
    if (!a1.has_degree(mdeg)) continue;
    const auto prod = m.mul(x, a1.part(mdeg));
    const Complex tau = m.tau(prod);
    const Complex coeff = double(mdeg) * tau;
    const auto re = zeta_series(BoundedSequence::constant(coeff.real()), r);
    const auto im = zeta_series(BoundedSequence::constant(coeff.imag()), r);
    acc += Complex(re.value, im.value);
  }
  return acc;
}

/// theta^r(a0) = -(1/2) int_1^inf phi_D(a0 D (1+sD^2)^{-r}) s^{-1/2} ds,
/// internal helper behind eta^r = b theta^r (r > 1).
template <AlgebraModel M>
Complex theta_r(const M& m, const Graded<M>& a0, double r) {
  if (!a0.has_degree(0)) return 0.0;
  const Complex tau = m.tau(a0.part(0));
  const auto re = theta_series(BoundedSequence::constant(tau.real()), r);
  const auto im = theta_series(BoundedSequence::constant(tau.imag()), r);
  return Complex(re.value, im.value);
}

// Table-backed pairs (v, v*) for isometries known through trace data only.
SumResult eta_r(const tables::AbstractIsometry& iso, double r);
SumResult psi_r(const tables::AbstractIsometry& iso, double r);

// ---------------------------------------------------------------------------
// Twisted coboundaries
// ---------------------------------------------------------------------------

/// Multilinear functional of fixed arity, optionally r-dependent.
template <AlgebraModel M>
struct TwistedCochain {
  int arity = 2;
  std::function<Complex(const std::vector<Graded<M>>&, std::optional<double> r)> eval;
};

/// Twisted Hochschild coboundary:
///   arity 1: (b c)(a0, a1)     = c(a0 a1) - c(sigma(a1) a0)
///   arity 2: (b c)(a0, a1, a2) = c(a0 a1, a2) - c(a0, a1 a2) + c(sigma(a2) a0, a1)
template <AlgebraModel M>
TwistedCochain<M> b_twisted(const M& m, const TwistedCochain<M>& c) {
  TwistedCochain<M> out;
  out.arity = c.arity + 1;
  if (c.arity == 1) {
    out.eval = [m, c](const std::vector<Graded<M>>& a, std::optional<double> r) {
      return c.eval({mul(m, a[0], a[1])}, r) -
             c.eval({mul(m, twist(m, a[1]), a[0])}, r);
    };
  } else if (c.arity == 2) {
    out.eval = [m, c](const std::vector<Graded<M>>& a, std::optional<double> r) {
      return c.eval({mul(m, a[0], a[1]), a[2]}, r) -
             c.eval({a[0], mul(m, a[1], a[2])}, r) +
             c.eval({mul(m, twist(m, a[2]), a[0]), a[1]}, r);
    };
  } else {
    throw std::invalid_argument("b_twisted: arity must be 1 or 2");
  }
  return out;
}

/// Twisted Connes coboundary on arity-2 cochains: (B c)(a0) = c(1, a0).
template <AlgebraModel M>
TwistedCochain<M> connes_B(const M& m, const TwistedCochain<M>& c) {
  if (c.arity != 2) throw std::invalid_argument("connes_B: arity-2 cochain required");
  TwistedCochain<M> out;
  out.arity = 1;
  out.eval = [m, c](const std::vector<Graded<M>>& a, std::optional<double> r) {
    return c.eval({Graded<M>::unit(m), a[0]}, r);
  };
  return out;
}

template <AlgebraModel M>
TwistedCochain<M> psi_cochain(const M& m) {
  TwistedCochain<M> out;
  out.arity = 2;
  out.eval = [m](const std::vector<Graded<M>>& a, std::optional<double> r) {
    if (!r) throw std::invalid_argument("psi cochain needs an r value");
    return psi_r(m, a[0], a[1], *r);
  };
  return out;
}

template <AlgebraModel M>
TwistedCochain<M> phi1_cochain(const M& m) {
  TwistedCochain<M> out;
  out.arity = 2;
  out.eval = [m](const std::vector<Graded<M>>& a, std::optional<double>) {
    return phi1(m, a[0], a[1]);
  };
  return out;
}

// ---------------------------------------------------------------------------
// Dixmier-type limit
// ---------------------------------------------------------------------------

struct DixmierGrid {
  int j_lo = 3;   // r = 2^j
  int j_hi = 12;
};

/// Extrapolated value of (1/r) sum_n s_n (1+n^2)^{-1/2-1/(2r)} as r grows
/// through the grid; equals 2 tau for constant sequences.
Extrapolated dixmier_from_sequence(const BoundedSequence& s, const DixmierGrid& grid = {});

/// Dixmier-type functional of a positive degree-zero element. For matrix
/// models positivity is asserted spectrally; for exact word models the
/// self-adjointness of the degree-zero part stands in.
template <AlgebraModel M>
Extrapolated dixmier_limit(const M& m, const Graded<M>& a, const DixmierGrid& grid = {}) {
  if (a.is_zero()) return {0.0, 0.0};
  if (a.min_degree() != 0 || a.max_degree() != 0)
    throw std::invalid_argument("dixmier_limit: degree-zero element required");
  if constexpr (requires(const typename M::Component& c) { m.is_positive(c); }) {
    if (!m.is_positive(a.part(0)))
      throw std::invalid_argument("dixmier_limit: element is not positive");
  }
  const Complex tau = m.tau(a.part(0));
  if (std::abs(tau.imag()) > 1e-10)
    throw std::invalid_argument("dixmier_limit: state value is not real");
  return dixmier_from_sequence(BoundedSequence::constant(tau.real()), grid);
}

Extrapolated dixmier_from_table(const tables::SpectralTraceTable& table,
                                const DixmierGrid& grid = {});

}  // namespace modflow::cocycle
