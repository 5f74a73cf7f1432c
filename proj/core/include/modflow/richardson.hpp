#pragma once

#include <functional>
#include <vector>

namespace modflow {

struct Extrapolated {
  double value = 0.0;
  double error = 0.0;  // magnitude of the last extrapolation increment
};

/// Richardson extrapolation to h -> 0 of g(h) sampled at h_j = h0 * 2^{-j},
/// j = 0..(points-1), assuming g is smooth in h.
/// Throws std::runtime_error when the increment table diverges.
Extrapolated richardson_halving(const std::function<double(double)>& g, double h0,
                                int points);

struct ResidueGrid {
  double delta0 = 0.1;
  int points = 9;
};

/// Residue at r = 1/2 of F, extracted by extrapolating delta * F(1/2 + delta)
/// on a geometric grid of offsets.
Extrapolated residue_at_half(const std::function<double(double)>& f_of_r,
                             const ResidueGrid& grid = {});

}  // namespace modflow
