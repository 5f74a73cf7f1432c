#include "modflow/spectral_flow.hpp"

#include <cmath>

namespace modflow::flow {

ModularTraceData from_isometry(const tables::AbstractIsometry& iso) {
  if (iso.degree == 0)
    throw std::invalid_argument("spectral flow: isometry degree must be nonzero");
  ModularTraceData data;
  data.beta = iso.range.beta();
  data.components.push_back({iso.degree, iso.range});
  return data;
}

LaurentPolynomial sf_equivariant(const ModularTraceData& data) {
  LaurentPolynomial out;
  for (const auto& c : data.components) {
    if (c.degree < 0) {
      for (long n = c.degree; n < 0; ++n) out.add_term(n, c.range.value(n));
    } else {
      for (long n = 0; n < c.degree; ++n) out.add_term(n, -c.range.value(n));
    }
  }
  return out;
}

double sf_trace(const ModularTraceData& data) {
  const auto poly = sf_equivariant(data);
  return poly.empty() ? 0.0 : poly.evaluate(data.chi());
}

double kernel_correction(const ModularTraceData& data) {
  double out = 0.0;
  for (const auto& c : data.components) {
    const auto s = c.range.phi_d_sequence();
    out += s.at(0) - s.at(c.degree);
  }
  return out;
}

ResidueResult sf_residue(const ModularTraceData& data, const ResidueGrid& grid) {
  ResidueResult result;

  std::vector<BoundedSequence> seqs;
  seqs.reserve(data.components.size());
  for (const auto& c : data.components) seqs.push_back(c.range.phi_d_sequence());

  double series_error = 0.0;
  auto full = [&](double r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < data.components.size(); ++i) {
      const int k = data.components[i].degree;
      const auto zeta = zeta_series(seqs[i], r);
      const auto eta = eta_series(seqs[i], -k, r);
      acc += double(-k) * zeta.value + eta.value;
      series_error = std::max(series_error,
                              std::abs(double(k)) * zeta.error_bound + eta.error_bound);
    }
    return acc;
  };
  auto eta_only = [&](double r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < data.components.size(); ++i)
      acc += eta_series(seqs[i], -data.components[i].degree, r).value;
    return acc;
  };

  result.flow = residue_at_half(full, grid);
  result.eta_contribution = residue_at_half(eta_only, grid);
  result.series_error = series_error;
  return result;
}

double laurent_adjoint_relation_check(const tables::AbstractIsometry& iso) {
  const tables::AbstractIsometry star{-iso.degree, iso.source()};
  const auto with_star = sf_equivariant(from_isometry(star));
  const auto original = sf_equivariant(from_isometry(iso));
  return (with_star + original.shifted(-iso.degree)).max_abs_coeff();
}

SfReport compute_report(const ModularTraceData& data, const SfOptions& options,
                        std::optional<double> closed_form) {
  SfReport rep;
  rep.sf_laurent = sf_equivariant(data);
  rep.sf_laurent_at_exp_minus_beta =
      rep.sf_laurent.empty() ? 0.0 : rep.sf_laurent.evaluate(data.chi());
  rep.sf_trace = rep.sf_laurent_at_exp_minus_beta;
  rep.kernel_correction = kernel_correction(data);
  if (options.run_residue) {
    const auto res = sf_residue(data, options.grid);
    rep.sf_residue = res.flow;
    rep.eta_contribution = res.eta_contribution.value;
    rep.extrapolation_dependent = data.extrapolated();
  }

  rep.route_agreement = std::abs(rep.sf_trace - rep.sf_laurent_at_exp_minus_beta);
  if (rep.sf_residue)
    rep.route_agreement =
        std::max(rep.route_agreement, std::abs(rep.sf_residue->value - rep.sf_trace));
  if (closed_form) {
    rep.closed_form = closed_form;
    rep.closed_form_deviation = std::abs(*closed_form - rep.sf_trace);
  }
  return rep;
}

}  // namespace modflow::flow
