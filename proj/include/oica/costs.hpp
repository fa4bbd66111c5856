#pragma once

#include <string_view>

#include "oica/basis.hpp"

namespace oica {

// Degeneracy control mechanisms acting on the pairwise cosines of the
// basis rows. Coulomb and RandomPrior are singular at |cos| = 1 and carry
// an epsilon regularizer: 1 - cos^2 -> 1 + eps - cos^2.
enum class CostKind { L2, L4, Coulomb, RandomPrior };

inline constexpr double kDefaultEps = 1e-6;

struct InvalidEpsilonError : std::runtime_error {
  InvalidEpsilonError() : std::runtime_error("eps must be > 0") {}
};

// Cost value together with its gradient taken with respect to the raw
// entries of W (the unit-norm constraint is the optimizer's business).
struct CostEval {
  double value = 0.0;
  Matrix grad;
};

// sum_ij (delta_ij - G_ij)^2 over all ordered pairs including i = j.
CostEval cost_l2(const Basis& basis);

// sum_ij (delta_ij - G_ij)^4 over all ordered pairs including i = j.
CostEval cost_l4(const Basis& basis);

// sum_{i != j} 1 / sqrt(1 + eps - G_ij^2).
CostEval cost_coulomb(const Basis& basis, double eps);

// -sum_{i != j} log(1 + eps - G_ij^2).
CostEval cost_random_prior(const Basis& basis, double eps);

CostEval eval_cost(CostKind kind, const Basis& basis, double eps = kDefaultEps);

// W <- (3/2) W - (1/2) W W^T W, rows renormalized afterwards.
Basis quasi_orth_update(const Basis& basis);

// Central finite differences of the cost value against the analytic
// gradient, elementwise. Returns the max relative error, where each
// element's denominator is max(|analytic|, |numeric|, 1e-8).
double grad_check(CostKind kind, const Basis& basis, double h,
                  double eps = kDefaultEps);

// Accepts "l2" | "l4" | "coulomb" | "rand_prior".
CostKind parse_cost_kind(std::string_view name);
std::string_view cost_kind_name(CostKind kind);
bool cost_uses_eps(CostKind kind);

}  // namespace oica
