#pragma once

#include "modflow/sequences.hpp"

namespace modflow {

/// A numerically evaluated series value together with a rigorous bound on
/// everything that was not summed explicitly.
struct SumResult {
  double value = 0.0;
  double error_bound = 0.0;
};

/// sum_{n in Z} s_n (1+n^2)^{-r}, r > 1/2.
///
/// Explicit window terms are combined by pairwise summation; constant tails
/// are finished in closed form, geometric tails by bounded truncation. The
/// error_bound field covers everything dropped.
SumResult zeta_series(const BoundedSequence& s, double r);

/// The eta pairing against the sequence s_n = phi_D(a0 a1 Phi_n) when a1 has
/// degree m:
///
///   eta(r) = sum_{n>0} (s_{n-m} - s_n) G(n, r) - sum_{n<0} (s_{n-m} - s_n) G(-n, r)
///
/// where G is eta_tail_integral. The difference sequence vanishes off a
/// finite window for zero/constant tails and decays geometrically otherwise,
/// so the sum is evaluated term by term with a rigorous remainder bound.
/// Identically zero when s is constant (full spectral subspaces).
SumResult eta_series(const BoundedSequence& s, long m, double r);

/// theta(r) = - sum_{n != 0} sgn(n) t_n G(|n|, r), defined for r > 1.
/// Paired terms (n, -n) are combined so constant two-sided parts cancel;
/// residual constant differences converge only for r > 1 and are truncated
/// with an integral-comparison bound.
SumResult theta_series(const BoundedSequence& t, double r);

}  // namespace modflow
