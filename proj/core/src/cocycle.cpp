#include "modflow/cocycle.hpp"

#include <cmath>

namespace modflow::cocycle {

SumResult eta_r(const tables::AbstractIsometry& iso, double r) {
  return eta_series(iso.range.phi_d_sequence(), -iso.degree, r);
}

SumResult psi_r(const tables::AbstractIsometry& iso, double r) {
  const auto s = iso.range.phi_d_sequence();
  const auto eta = eta_series(s, -iso.degree, r);
  const auto zeta = zeta_series(s, r);
  return {double(-iso.degree) * zeta.value + eta.value,
          std::abs(double(iso.degree)) * zeta.error_bound + eta.error_bound};
}

Extrapolated dixmier_from_sequence(const BoundedSequence& s, const DixmierGrid& grid) {
  if (grid.j_hi <= grid.j_lo) throw std::invalid_argument("dixmier grid is empty");
  auto g = [&s](double h) {  // h = 1/r
    const double r = 1.0 / h;
    return h * zeta_series(s, 0.5 + 0.5 / r).value;
  };
  return richardson_halving(g, std::pow(0.5, grid.j_lo), grid.j_hi - grid.j_lo + 1);
}

Extrapolated dixmier_from_table(const tables::SpectralTraceTable& table,
                                const DixmierGrid& grid) {
  return dixmier_from_sequence(table.phi_d_sequence(), grid);
}

}  // namespace modflow::cocycle
