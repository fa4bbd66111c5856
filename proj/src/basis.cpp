#include "oica/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oica {

Matrix gram(const Basis& basis) { return basis.w * basis.w.transpose(); }

double angle_deg(const Eigen::Ref<const Vector>& u,
                 const Eigen::Ref<const Vector>& v) {
  // 2 atan2(|u-v|, |u+v|) equals arccos(u.v) for unit vectors but does not
  // lose precision near 0 and 180 degrees.
  const double diff = (u - v).norm();
  const double sum = (u + v).norm();
  return 2.0 * std::atan2(diff, sum) * 180.0 / std::numbers::pi;
}

std::vector<double> pairwise_angles(const Basis& basis) {
  const int k = basis.rows();
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      angles.push_back(angle_deg(basis.w.row(i).transpose(),
                                 basis.w.row(j).transpose()));
    }
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

double min_pairwise_angle(const Basis& basis) {
  const int k = basis.rows();
  double best = 180.0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      best = std::min(best, angle_deg(basis.w.row(i).transpose(),
                                      basis.w.row(j).transpose()));
    }
  }
  return best;
}

Basis project_rows_unit_norm(const Basis& basis) {
  Basis out = basis;
  for (int i = 0; i < out.rows(); ++i) {
    const double norm = out.w.row(i).norm();
    if (norm <= 1e-14) throw ZeroRowError(i);
    out.w.row(i) /= norm;
  }
  return out;
}

Basis thin_rows_by_angle(const Basis& basis, double min_separation_deg) {
  std::vector<int> kept;
  for (int i = 0; i < basis.rows(); ++i) {
    bool fits = true;
    for (int j : kept) {
      const double angle = angle_deg(basis.w.row(i).transpose(),
                                     basis.w.row(j).transpose());
      if (std::min(angle, 180.0 - angle) <= min_separation_deg) {
        fits = false;
        break;
      }
    }
    if (fits) kept.push_back(i);
  }
  Matrix w(static_cast<Eigen::Index>(kept.size()), basis.dims());
  for (std::size_t i = 0; i < kept.size(); ++i)
    w.row(static_cast<Eigen::Index>(i)) = basis.w.row(kept[i]);
  return Basis(std::move(w));
}

}  // namespace oica
