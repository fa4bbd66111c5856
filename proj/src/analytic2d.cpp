#include "oica/analytic2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oica {

namespace {

void require_polynomial_kind(CostKind kind) {
  if (kind != CostKind::L2 && kind != CostKind::L4)
    throw std::invalid_argument("closed 2d forms exist for l2 and l4 only");
}

}  // namespace

Basis to_basis(const Config2D& config) {
  Matrix m(4, 2);
  m << 1.0, 0.0,  //
      std::cos(config.theta1), std::sin(config.theta1),
      std::cos(config.theta2), std::sin(config.theta2),
      std::cos(config.theta2 + config.theta3),
      std::sin(config.theta2 + config.theta3);
  return Basis(std::move(m));
}

double path_cost(CostKind kind, double theta2) {
  require_polynomial_kind(kind);
  if (kind == CostKind::L2) return 4.0;
  return 3.0 + std::cos(4.0 * theta2);
}

Eigen::Vector3d path_gradient(CostKind kind, double theta2) {
  require_polynomial_kind(kind);
  if (kind == CostKind::L2) return Eigen::Vector3d::Zero();
  const double s4 = std::sin(4.0 * theta2);
  return {2.0 * s4, -4.0 * s4, -2.0 * s4};
}

Eigen::Matrix3d path_hessian(CostKind kind, double theta2) {
  require_polynomial_kind(kind);
  Eigen::Matrix3d h;
  if (kind == CostKind::L2) {
    const double c2 = std::cos(2.0 * theta2);
    h << 4.0, 0.0, 4.0 * c2,  //
        0.0, 0.0, 0.0,        //
        4.0 * c2, 0.0, 4.0;
    return h;
  }
  const double c2 = std::cos(2.0 * theta2);
  const double c4 = std::cos(4.0 * theta2);
  h << -8.0 * c4, 8.0 * c4, 4.0 * (c2 + c4),  //
      8.0 * c4, -16.0 * c4, -8.0 * c4,        //
      4.0 * (c2 + c4), -8.0 * c4, -8.0 * c4;
  return h;
}

Eigen::Vector3d path_hessian_eigs(CostKind kind, double theta2) {
  require_polynomial_kind(kind);
  Eigen::Vector3d eigs;
  if (kind == CostKind::L2) {
    const double s = std::sin(theta2);
    const double c = std::cos(theta2);
    eigs << 0.0, 8.0 * s * s, 8.0 * c * c;
  } else {
    const double c2 = std::cos(2.0 * theta2);
    const double c4 = std::cos(4.0 * theta2);
    const double c6 = std::cos(6.0 * theta2);
    const double c8 = std::cos(8.0 * theta2);
    const double root = std::numbers::sqrt2 *
                        std::sqrt(34.0 - 2.0 * c2 + c4 - 2.0 * c6 + 33.0 * c8);
    eigs << 4.0 * (c2 - c4), -2.0 * c2 - 14.0 * c4 - root,
        -2.0 * c2 - 14.0 * c4 + root;
  }
  std::sort(eigs.data(), eigs.data() + 3);
  return eigs;
}

double theta_cost(CostKind kind, const Config2D& config) {
  require_polynomial_kind(kind);
  return eval_cost(kind, to_basis(config)).value;
}

Eigen::Vector3d fd_theta_gradient(CostKind kind, const Config2D& config,
                                  double h) {
  const auto at = [&](double d1, double d2, double d3) {
    return theta_cost(kind, {config.theta1 + d1, config.theta2 + d2,
                             config.theta3 + d3});
  };
  Eigen::Vector3d g;
  g[0] = (at(h, 0, 0) - at(-h, 0, 0)) / (2.0 * h);
  g[1] = (at(0, h, 0) - at(0, -h, 0)) / (2.0 * h);
  g[2] = (at(0, 0, h) - at(0, 0, -h)) / (2.0 * h);
  return g;
}

Eigen::Matrix3d fd_theta_hessian(CostKind kind, const Config2D& config,
                                 double h) {
  const auto at = [&](const Eigen::Vector3d& d) {
    return theta_cost(kind, {config.theta1 + d[0], config.theta2 + d[1],
                             config.theta3 + d[2]});
  };
  const double center = at(Eigen::Vector3d::Zero());
  Eigen::Matrix3d hess;
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d ei = Eigen::Vector3d::Zero();
    ei[i] = h;
    hess(i, i) = (at(ei) - 2.0 * center + at(-ei)) / (h * h);
    for (int j = i + 1; j < 3; ++j) {
      Eigen::Vector3d ej = Eigen::Vector3d::Zero();
      ej[j] = h;
      const double mixed = (at(ei + ej) - at(ei - ej) - at(-ei + ej) +
                            at(-ei - ej)) /
                           (4.0 * h * h);
      hess(i, j) = mixed;
      hess(j, i) = mixed;
    }
  }
  return hess;
}

}  // namespace oica
