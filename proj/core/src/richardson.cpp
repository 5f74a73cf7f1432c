#include "modflow/richardson.hpp"

#include <cmath>
#include <stdexcept>

namespace modflow {

Extrapolated richardson_halving(const std::function<double(double)>& g, double h0,
                                int points) {
  if (points < 2) throw std::invalid_argument("richardson_halving: need >= 2 points");
  std::vector<std::vector<double>> table(static_cast<std::size_t>(points));
  std::vector<double> diag;
  double h = h0;
  for (int i = 0; i < points; ++i, h *= 0.5) {
    auto& row = table[std::size_t(i)];
    row.resize(std::size_t(i) + 1);
    row[0] = g(h);
    double factor = 1.0;
    for (int j = 1; j <= i; ++j) {
      factor *= 2.0;
      const auto& prev = table[std::size_t(i) - 1];
      row[std::size_t(j)] =
          row[std::size_t(j) - 1] +
          (row[std::size_t(j) - 1] - prev[std::size_t(j) - 1]) / (factor - 1.0);
    }
    diag.push_back(row.back());
  }

  // Convergence audit on diagonal increments: the last ones must not grow.
  double prev_inc = 0.0;
  int growing = 0;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    const double inc = std::abs(diag[i] - diag[i - 1]);
    if (i + 3 >= diag.size() && inc > 10.0 * prev_inc && inc > 1e-9) ++growing;
    prev_inc = inc;
  }
  if (growing >= 2) throw std::runtime_error("richardson_halving: increments diverge");

  Extrapolated out;
  out.value = diag.back();
  out.error = std::abs(diag.back() - diag[diag.size() - 2]);
  return out;
}

Extrapolated residue_at_half(const std::function<double(double)>& f_of_r,
                             const ResidueGrid& grid) {
  auto g = [&](double delta) { return delta * f_of_r(0.5 + delta); };
  return richardson_halving(g, grid.delta0, grid.points);
}

}  // namespace modflow
