#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modflow/laurent.hpp"
#include "modflow/modular.hpp"
#include "modflow/richardson.hpp"
#include "modflow/summation.hpp"
#include "modflow/trace_table.hpp"

namespace modflow::flow {

/// Trace data of one homogeneous component v_k of a modular partial
/// isometry: its degree and the range table n -> Tr_phi(v_k v_k* Phi_n).
/// This is the common currency of all three flow routes; algebra models and
/// table-backed models both reduce to it.
struct ComponentTrace {
  int degree;
  tables::SpectralTraceTable range;
};

struct ModularTraceData {
  double beta = 0.0;
  std::vector<ComponentTrace> components;  // degree-zero parts never enter

  double chi() const { return std::exp(-beta); }
  bool extrapolated() const {
    for (const auto& c : components)
      if (c.range.tail().kind == tables::TailRule::Kind::Geometric) return true;
    return false;
  }
};

ModularTraceData from_isometry(const tables::AbstractIsometry& iso);

/// Component trace data of a modular element of an algebra model with full
/// spectral subspaces. Throws std::invalid_argument when v fails the
/// modularity classification at `tol`.
template <AlgebraModel M>
ModularTraceData extract_trace_data(const M& m, const Graded<M>& v, double tol = 1e-10) {
  const auto rep = classify_modular(m, v, tol);
  if (!rep.is_modular)
    throw std::invalid_argument("spectral flow: element is not a modular partial isometry");
  const KmsContext ctx = m.kms();
  if (!ctx.full_subspaces)
    throw std::invalid_argument("spectral flow: algebra model must declare full subspaces");
  ModularTraceData data;
  data.beta = ctx.beta;
  for (const auto& [k, x] : v.parts()) {
    if (k == 0) continue;  // invariant part never contributes
    const auto t = m.tau(m.mul(x, m.adj(x)));
    if (std::abs(t.imag()) > 1e-10)
      throw std::invalid_argument("spectral flow: trace of v_k v_k* is not real");
    const double tau = std::max(t.real(), 0.0);
    tables::SpectralTraceTable table(ctx.beta, {{0L, tau}},
                                     {tables::TailRule::Kind::Full, {}, {}});
    data.components.push_back({k, std::move(table)});
  }
  return data;
}

/// Max coefficient deviation of  sf_eq(v*) + chi^{-k} sf_eq(v)  for a
/// homogeneous degree-k isometry; zero by the shift identity
/// Tr_phi(v* v Phi_n) = Tr_phi(v v* Phi_{n+k}).
template <AlgebraModel M>
double laurent_adjoint_relation_check(const M& m, const Graded<M>& v);

/// chi-polynomial of the equivariant flow:
///   degree k < 0 contributes  +sum_{k <= n < 0} Tr_phi(v_k v_k* Phi_n) chi^n,
///   degree k > 0 contributes  -sum_{0 <= n < k} Tr_phi(v_k v_k* Phi_n) chi^n.
LaurentPolynomial sf_equivariant(const ModularTraceData& data);

/// Numerical flow: the chi-polynomial evaluated at chi = e^{-beta}. The two
/// routes share the same finite data, so their agreement is exact.
double sf_trace(const ModularTraceData& data);

/// phi_D(v v* Phi_0 - v Phi_0 v*); vanishes for every modular isometry.
double kernel_correction(const ModularTraceData& data);

struct ResidueResult {
  Extrapolated flow;              // residue of the full formula
  Extrapolated eta_contribution;  // residue-scale part carried by the eta term
  double series_error = 0.0;      // max series truncation bound over the grid
};

/// Residue route: Res_{r=1/2} of
///   sum_k [ (-k) sum_n s^k_n (1+n^2)^{-r}  +  eta^r(v_k, v_k*) ]
/// with s^k_n = e^{-beta n} Tr_phi(v_k v_k* Phi_n).
ResidueResult sf_residue(const ModularTraceData& data, const ResidueGrid& grid = {});

struct SfOptions {
  bool run_residue = true;
  ResidueGrid grid{};
};

/// Combined report of the flow routes and their diagnostics.
struct SfReport {
  double sf_trace = 0.0;
  LaurentPolynomial sf_laurent;
  double sf_laurent_at_exp_minus_beta = 0.0;
  std::optional<Extrapolated> sf_residue;
  double eta_contribution = 0.0;
  double kernel_correction = 0.0;
  std::optional<double> closed_form;
  std::optional<double> closed_form_deviation;
  double route_agreement = 0.0;  // max pairwise deviation of computed routes
  bool extrapolation_dependent = false;
  std::optional<std::string> sf_trace_exact;  // "p/q" when the model is exact
};

SfReport compute_report(const ModularTraceData& data, const SfOptions& options = {},
                        std::optional<double> closed_form = std::nullopt);

template <AlgebraModel M>
double laurent_adjoint_relation_check(const M& m, const Graded<M>& v) {
  if (v.is_zero() || v.min_degree() != v.max_degree())
    throw std::invalid_argument("adjoint relation check needs a homogeneous element");
  const int k = v.min_degree();
  if (k == 0) return 0.0;
  const auto with_star = sf_equivariant(extract_trace_data(m, adj(m, v)));
  const auto original = sf_equivariant(extract_trace_data(m, v));
  return (with_star + original.shifted(-k)).max_abs_coeff();
}

/// Same check for a table-backed isometry.
double laurent_adjoint_relation_check(const tables::AbstractIsometry& iso);

}  // namespace modflow::flow
