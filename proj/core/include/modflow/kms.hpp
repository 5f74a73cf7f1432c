#pragma once

#include <stdexcept>

namespace modflow {

/// Inverse temperature and spectral-subspace fullness of the state a model
/// computes against. The spectral-trace accessor itself lives with the model
/// (exact for word models, table-backed otherwise).
struct KmsContext {
  double beta = 0.0;
  bool full_subspaces = false;

  KmsContext() = default;
  KmsContext(double beta_, bool full) : beta(beta_), full_subspaces(full) {
    if (beta == 0.0) throw std::invalid_argument("KmsContext: beta must be nonzero");
  }
};

}  // namespace modflow
