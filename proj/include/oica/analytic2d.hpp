#pragma once

#include "oica/costs.hpp"

namespace oica {

// Four unit vectors in the plane at angles {0, theta1, theta2,
// theta2 + theta3}; the first element is pinned to x-hat. theta1 = theta3
// = pi/2 puts the configuration on the degenerate critical path, where
// the closed forms below hold.
struct Config2D {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
};

Basis to_basis(const Config2D& config);

// Closed forms along theta1 = theta3 = pi/2, valid for kind L2 or L4 only.
double path_cost(CostKind kind, double theta2);
Eigen::Vector3d path_gradient(CostKind kind, double theta2);
Eigen::Matrix3d path_hessian(CostKind kind, double theta2);
// Eigenvalues of the path Hessian, ascending.
Eigen::Vector3d path_hessian_eigs(CostKind kind, double theta2);

// Numeric route through to_basis and the costs module, for checking the
// closed forms independently.
double theta_cost(CostKind kind, const Config2D& config);
Eigen::Vector3d fd_theta_gradient(CostKind kind, const Config2D& config,
                                  double h = 1e-5);
Eigen::Matrix3d fd_theta_hessian(CostKind kind, const Config2D& config,
                                 double h = 1e-4);

}  // namespace oica
