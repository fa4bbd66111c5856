#include "oica/optimizer.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <sstream>

#include "oica/matrix_io.hpp"

namespace oica {

std::string_view termination_name(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::GradTol:
      return "grad_tol";
    case TerminationReason::MaxIters:
      return "max_iters";
    case TerminationReason::LineSearchFail:
      return "line_search_fail";
  }
  return "?";
}

void write_trace_csv(const std::filesystem::path& path,
                     const OptimTrace& trace) {
  std::ostringstream out;
  out << "iter,objective,grad_norm,min_angle_deg\n";
  char buf[40];
  for (std::size_t i = 0; i < trace.objective.size(); ++i) {
    out << i;
    std::snprintf(buf, sizeof buf, ",%.17g", trace.objective[i]);
    out << buf;
    std::snprintf(buf, sizeof buf, ",%.17g", trace.grad_norm[i]);
    out << buf;
    std::snprintf(buf, sizeof buf, ",%.17g", trace.min_angle_deg[i]);
    out << buf << "\n";
  }
  atomic_write_text(path, out.str());
}

namespace {

// Removes the per-row radial component; what is left is the gradient on
// the product-of-spheres manifold. At a critical point of the constrained
// problem the raw gradient is radial, not zero.
Matrix tangent_gradient(const Basis& basis, const Matrix& grad) {
  Matrix out = grad;
  for (int i = 0; i < basis.rows(); ++i) {
    const double radial = grad.row(i).dot(basis.w.row(i));
    out.row(i) -= radial * basis.w.row(i);
  }
  return out;
}

struct LbfgsMemory {
  std::deque<Vector> s;
  std::deque<Vector> y;
  std::deque<double> rho;

  void clear() {
    s.clear();
    y.clear();
    rho.clear();
  }

  void push(Vector s_new, Vector y_new, int capacity) {
    const double sy = s_new.dot(y_new);
    if (sy <= 1e-10) return;  // keeps the approximation positive definite
    s.push_back(std::move(s_new));
    y.push_back(std::move(y_new));
    rho.push_back(1.0 / sy);
    while (static_cast<int>(s.size()) > capacity) {
      s.pop_front();
      y.pop_front();
      rho.pop_front();
    }
  }

  // Standard two-loop recursion; returns the descent direction -H g.
  Vector direction(const Vector& grad) const {
    Vector q = grad;
    const int count = static_cast<int>(s.size());
    std::vector<double> alpha(count);
    for (int i = count - 1; i >= 0; --i) {
      alpha[i] = rho[i] * s[i].dot(q);
      q -= alpha[i] * y[i];
    }
    if (count > 0) {
      const double gamma = s.back().dot(y.back()) / y.back().squaredNorm();
      q *= gamma;
    }
    for (int i = 0; i < count; ++i) {
      const double beta = rho[i] * y[i].dot(q);
      q += (alpha[i] - beta) * s[i];
    }
    return -q;
  }
};

Vector flatten(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

}  // namespace

MinimizeResult minimize(const ObjectiveFn& objective, const Basis& start,
                        const OptimOptions& opts) {
  Basis w = project_rows_unit_norm(start);
  CostEval eval = objective(w);
  if (!std::isfinite(eval.value) || !eval.grad.allFinite())
    throw NonFiniteObjectiveError();
  Matrix tan_grad = tangent_gradient(w, eval.grad);

  LbfgsMemory memory;
  OptimTrace trace;
  trace.reason = TerminationReason::MaxIters;

  const auto record = [&] {
    trace.objective.push_back(eval.value);
    trace.grad_norm.push_back(tan_grad.cwiseAbs().maxCoeff());
    trace.min_angle_deg.push_back(min_pairwise_angle(w));
  };

  for (int iter = 0;; ++iter) {
    record();
    if (trace.grad_norm.back() <= opts.grad_tol) {
      trace.reason = TerminationReason::GradTol;
      break;
    }
    if (iter >= opts.max_iters) {
      trace.reason = TerminationReason::MaxIters;
      break;
    }

    Vector g = flatten(tan_grad);
    Vector d = memory.direction(g);
    double slope = d.dot(g);
    if (!(slope < 0.0)) {
      memory.clear();
      d = -g;
      slope = -g.squaredNorm();
    }

    Basis accepted_w;
    CostEval accepted_eval;
    bool accepted = false;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      const Eigen::Map<const Matrix> step(d.data(), w.rows(), w.dims());
      double alpha = opts.init_step;
      while (alpha > 1e-16) {
        bool projected = true;
        Basis trial;
        try {
          trial = project_rows_unit_norm(Basis(w.w + alpha * step));
        } catch (const ZeroRowError&) {
          projected = false;  // step annihilated a row; shrink and retry
        }
        if (projected) {
          CostEval trial_eval = objective(trial);
          if (std::isfinite(trial_eval.value) && trial_eval.grad.allFinite() &&
              trial_eval.value <=
                  eval.value + opts.sufficient_decrease * alpha * slope) {
            accepted_w = std::move(trial);
            accepted_eval = std::move(trial_eval);
            accepted = true;
            break;
          }
        }
        alpha *= opts.shrink;
      }
      if (!accepted && !memory.s.empty()) {
        // quasi-Newton direction failed; retry as plain projected descent
        memory.clear();
        d = -g;
        slope = -g.squaredNorm();
      } else {
        break;
      }
    }
    if (!accepted) {
      trace.reason = TerminationReason::LineSearchFail;
      break;
    }

    Matrix new_tan_grad = tangent_gradient(accepted_w, accepted_eval.grad);
    memory.push(flatten(accepted_w.w - w.w),
                flatten(new_tan_grad - tan_grad), opts.history);
    w = std::move(accepted_w);
    eval = std::move(accepted_eval);
    tan_grad = std::move(new_tan_grad);
  }

  return {std::move(w), std::move(trace)};
}

MinimizeResult run_quasi_orth(const Basis& start, int iters) {
  Basis w = start;
  OptimTrace trace;
  trace.reason = TerminationReason::MaxIters;
  for (int iter = 0; iter < iters; ++iter) {
    Basis next = quasi_orth_update(w);
    trace.objective.push_back(cost_l2(w).value);
    trace.grad_norm.push_back((next.w - w.w).cwiseAbs().maxCoeff());
    trace.min_angle_deg.push_back(min_pairwise_angle(w));
    w = std::move(next);
  }
  trace.objective.push_back(cost_l2(w).value);
  trace.grad_norm.push_back(0.0);
  trace.min_angle_deg.push_back(min_pairwise_angle(w));
  return {std::move(w), std::move(trace)};
}

Vector minimize_unconstrained(const std::function<double(const Vector&)>& f,
                              const Vector& start, const OptimOptions& opts,
                              double fd_h) {
  Vector x = start;
  double value = f(x);
  if (!std::isfinite(value)) throw NonFiniteObjectiveError();

  const auto fd_gradient = [&](const Vector& at) {
    Vector g(at.size());
    Vector probe = at;
    for (Eigen::Index i = 0; i < at.size(); ++i) {
      const double h = fd_h * std::max(1.0, std::abs(at[i]));
      const double saved = probe[i];
      probe[i] = saved + h;
      const double up = f(probe);
      probe[i] = saved - h;
      const double down = f(probe);
      probe[i] = saved;
      g[i] = (up - down) / (2.0 * h);
    }
    return g;
  };

  Vector grad = fd_gradient(x);
  LbfgsMemory memory;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    if (grad.cwiseAbs().maxCoeff() <= opts.grad_tol) break;
    Vector d = memory.direction(grad);
    double slope = d.dot(grad);
    if (!(slope < 0.0)) {
      memory.clear();
      d = -grad;
      slope = -grad.squaredNorm();
    }
    double alpha = opts.init_step;
    bool accepted = false;
    while (alpha > 1e-16) {
      const Vector trial = x + alpha * d;
      const double trial_value = f(trial);
      if (std::isfinite(trial_value) &&
          trial_value <= value + opts.sufficient_decrease * alpha * slope) {
        Vector new_grad = fd_gradient(trial);
        memory.push(trial - x, new_grad - grad, opts.history);
        x = trial;
        value = trial_value;
        grad = std::move(new_grad);
        accepted = true;
        break;
      }
      alpha *= opts.shrink;
    }
    if (!accepted) break;
  }
  return x;
}

}  // namespace oica
