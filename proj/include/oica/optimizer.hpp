#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "oica/costs.hpp"

namespace oica {

struct NonFiniteObjectiveError : std::runtime_error {
  NonFiniteObjectiveError()
      : std::runtime_error("objective evaluated to a non-finite value") {}
};

struct OptimOptions {
  int max_iters = 2000;
  double grad_tol = 1e-7;  // infinity norm of the tangent-projected gradient
  int history = 10;        // quasi-Newton memory
  double init_step = 1.0;
  double shrink = 0.5;
  double sufficient_decrease = 1e-4;
  std::uint64_t seed = 0;
};

enum class TerminationReason { GradTol, MaxIters, LineSearchFail };

std::string_view termination_name(TerminationReason reason);

struct OptimTrace {
  std::vector<double> objective;
  std::vector<double> grad_norm;
  std::vector<double> min_angle_deg;
  TerminationReason reason = TerminationReason::MaxIters;

  int iterations() const { return static_cast<int>(objective.size()) - 1; }
};

// CSV columns: iter, objective, grad_norm, min_angle_deg.
void write_trace_csv(const std::filesystem::path& path, const OptimTrace& trace);

using ObjectiveFn = std::function<CostEval(const Basis&)>;

struct MinimizeResult {
  Basis basis;
  OptimTrace trace;
};

// Limited-memory quasi-Newton descent over matrices with unit-norm rows.
// Every accepted step is followed by row renormalization; curvature pairs
// come from post-projection iterates; convergence is measured on the
// gradient with per-row radial components removed.
MinimizeResult minimize(const ObjectiveFn& objective, const Basis& start,
                        const OptimOptions& opts = {});

// The quasi-orthogonality fixed-point iteration as an alternative
// degeneracy control mechanism. The trace records the L2 cost, the
// per-iteration update size, and the min pairwise angle.
MinimizeResult run_quasi_orth(const Basis& start, int iters);

// Same machinery on a flat parameter vector without constraints, with
// gradients from central finite differences (step fd_h). Used for offline
// curve fitting where no analytic gradient is worth deriving.
Vector minimize_unconstrained(const std::function<double(const Vector&)>& f,
                              const Vector& start, const OptimOptions& opts = {},
                              double fd_h = 1e-6);

}  // namespace oica
