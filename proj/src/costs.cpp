#include "oica/costs.hpp"

#include <cmath>

namespace oica {

CostEval cost_l2(const Basis& basis) {
  const Matrix g = gram(basis);
  Matrix e = g;
  e.diagonal().array() -= 1.0;
  CostEval out;
  out.value = e.squaredNorm();
  out.grad = 4.0 * e * basis.w;
  return out;
}

CostEval cost_l4(const Basis& basis) {
  const Matrix g = gram(basis);
  Matrix e = g;
  e.diagonal().array() -= 1.0;
  CostEval out;
  out.value = e.array().square().square().sum();
  out.grad = 8.0 * (e.array().cube().matrix()) * basis.w;
  return out;
}

namespace {

// Shared form for costs sum_{i != j} f(G_ij): the W-gradient is 2 F W
// with F_ij = f'(G_ij) off the diagonal and zero on it.
template <typename Value, typename Deriv>
CostEval off_diagonal_cost(const Basis& basis, Value f, Deriv df) {
  const Matrix g = gram(basis);
  const int k = basis.rows();
  Matrix fprime = Matrix::Zero(k, k);
  double value = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      value += f(g(i, j));
      fprime(i, j) = df(g(i, j));
    }
  }
  CostEval out;
  out.value = value;
  out.grad = 2.0 * fprime * basis.w;
  return out;
}

}  // namespace

CostEval cost_coulomb(const Basis& basis, double eps) {
  if (!(eps > 0.0)) throw InvalidEpsilonError();
  return off_diagonal_cost(
      basis,
      [eps](double c) { return 1.0 / std::sqrt(1.0 + eps - c * c); },
      [eps](double c) {
        const double u = 1.0 + eps - c * c;
        return c / (u * std::sqrt(u));
      });
}

CostEval cost_random_prior(const Basis& basis, double eps) {
  if (!(eps > 0.0)) throw InvalidEpsilonError();
  return off_diagonal_cost(
      basis, [eps](double c) { return -std::log(1.0 + eps - c * c); },
      [eps](double c) { return 2.0 * c / (1.0 + eps - c * c); });
}

CostEval eval_cost(CostKind kind, const Basis& basis, double eps) {
  switch (kind) {
    case CostKind::L2:
      return cost_l2(basis);
    case CostKind::L4:
      return cost_l4(basis);
    case CostKind::Coulomb:
      return cost_coulomb(basis, eps);
    case CostKind::RandomPrior:
      return cost_random_prior(basis, eps);
  }
  throw std::logic_error("unreachable cost kind");
}

Basis quasi_orth_update(const Basis& basis) {
  const Matrix wtw = basis.w.transpose() * basis.w;
  Basis out(1.5 * basis.w - 0.5 * (basis.w * wtw));
  return project_rows_unit_norm(out);
}

namespace {

// Value-only evaluation accumulated in long double. The oracle must be
// more accurate than what it checks: double-rounded cost values leave the
// central difference with an error floor around 1e-10 absolute, which on
// small gradient entries exceeds the 1e-5 relative tolerance.
long double cost_value_ld(CostKind kind, const Basis& basis, double eps) {
  const int k = basis.rows();
  const int n = basis.dims();
  long double total = 0.0L;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      long double dot = 0.0L;
      for (int c = 0; c < n; ++c)
        dot += static_cast<long double>(basis.w(i, c)) *
               static_cast<long double>(basis.w(j, c));
      const long double off = dot - (i == j ? 1.0L : 0.0L);
      switch (kind) {
        case CostKind::L2:
          total += off * off;
          break;
        case CostKind::L4:
          total += off * off * off * off;
          break;
        case CostKind::Coulomb:
          if (i != j) total += 1.0L / std::sqrt(1.0L + eps - dot * dot);
          break;
        case CostKind::RandomPrior:
          if (i != j) total -= std::log(1.0L + eps - dot * dot);
          break;
      }
    }
  }
  return total;
}

}  // namespace

double grad_check(CostKind kind, const Basis& basis, double h, double eps) {
  if (cost_uses_eps(kind) && !(eps > 0.0)) throw InvalidEpsilonError();
  const CostEval eval = eval_cost(kind, basis, eps);
  Basis probe = basis;
  double worst = 0.0;
  for (int r = 0; r < basis.rows(); ++r) {
    for (int c = 0; c < basis.dims(); ++c) {
      const double saved = probe.w(r, c);
      probe.w(r, c) = saved + h;
      const long double up = cost_value_ld(kind, probe, eps);
      probe.w(r, c) = saved - h;
      const long double down = cost_value_ld(kind, probe, eps);
      probe.w(r, c) = saved;
      const double numeric =
          static_cast<double>((up - down) / (2.0L * static_cast<long double>(h)));
      const double analytic = eval.grad(r, c);
      const double denom =
          std::max({std::abs(analytic), std::abs(numeric), 1e-8});
      worst = std::max(worst, std::abs(analytic - numeric) / denom);
    }
  }
  return worst;
}

CostKind parse_cost_kind(std::string_view name) {
  if (name == "l2") return CostKind::L2;
  if (name == "l4") return CostKind::L4;
  if (name == "coulomb") return CostKind::Coulomb;
  if (name == "rand_prior") return CostKind::RandomPrior;
  throw std::invalid_argument("unknown cost kind '" + std::string(name) +
                              "', expected l2|l4|coulomb|rand_prior");
}

std::string_view cost_kind_name(CostKind kind) {
  switch (kind) {
    case CostKind::L2:
      return "l2";
    case CostKind::L4:
      return "l4";
    case CostKind::Coulomb:
      return "coulomb";
    case CostKind::RandomPrior:
      return "rand_prior";
  }
  return "?";
}

bool cost_uses_eps(CostKind kind) {
  return kind == CostKind::Coulomb || kind == CostKind::RandomPrior;
}

}  // namespace oica
