#include "oica/objective.hpp"

#include <cmath>
#include <numbers>

namespace oica {

CostEval sparsity_prior(const Basis& basis, const Matrix& data) {
  if (basis.dims() != data.rows())
    throw ShapeMismatchError(basis.dims(), static_cast<int>(data.rows()));
  CostEval out;
  out.grad = Matrix::Zero(basis.rows(), basis.dims());
  const Eigen::Index m = data.cols();
  if (m == 0) return out;  // empty-sum convention
  Matrix responses = basis.w * data;  // k x m
  // log cosh(z) = |z| + log1p(exp(-2|z|)) - log 2 and
  // tanh(z) = sign(z) (1 - e) / (1 + e) with e = exp(-2|z|), sharing the
  // one exp per element; this evaluation dominates training time.
  double value = 0.0;
  double* it = responses.data();
  const double* end = it + responses.size();
  for (; it != end; ++it) {
    const double z = *it;
    const double a = std::abs(z);
    const double e = std::exp(-2.0 * a);
    value += a + std::log1p(e) - std::numbers::ln2;
    const double t = (1.0 - e) / (1.0 + e);
    *it = z < 0.0 ? -t : t;  // responses now holds tanh
  }
  out.value = value / static_cast<double>(m);
  out.grad = (responses * data.transpose()) / static_cast<double>(m);
  return out;
}

CostEval total_objective(const Basis& basis, const IcaObjective& objective) {
  CostEval total = eval_cost(objective.kind, basis, objective.eps);
  if (objective.lambda != 0.0 && objective.data.cols() > 0) {
    const CostEval prior = sparsity_prior(basis, objective.data);
    total.value += objective.lambda * prior.value;
    total.grad += objective.lambda * prior.grad;
  }
  return total;
}

}  // namespace oica
