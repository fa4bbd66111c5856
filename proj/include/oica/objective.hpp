#pragma once

#include "oica/costs.hpp"

namespace oica {

struct ShapeMismatchError : std::runtime_error {
  ShapeMismatchError(int basis_dims, int data_dims)
      : std::runtime_error("basis dims " + std::to_string(basis_dims) +
                           " != data dims " + std::to_string(data_dims)) {}
};

// log cosh contrast summed over basis rows, averaged over data columns
// (samples). Gradient rows are (1/m) sum_i tanh(w_j . x_i) x_i^T.
CostEval sparsity_prior(const Basis& basis, const Matrix& data);

// Full unconstrained objective: degeneracy cost plus lambda-weighted
// sparsity contrast on the data.
struct IcaObjective {
  CostKind kind = CostKind::L2;
  double eps = kDefaultEps;
  double lambda = 0.5;
  Matrix data;  // n x m, columns are samples
};

CostEval total_objective(const Basis& basis, const IcaObjective& objective);

}  // namespace oica
