#include "oica/highdim.hpp"

#include <cmath>
#include <limits>

namespace oica {

namespace {

Matrix gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = normal(rng);
  return m;
}

void require_pathological(const Basis& basis, int n, int tiles) {
  if (basis.rows() != n * tiles || basis.dims() != n)
    throw NotPathologicalError();
  for (int t = 0; t < tiles; ++t) {
    const Matrix sub = basis.w.middleRows(t * n, n);
    const Matrix g = sub * sub.transpose();
    if ((g - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-8)
      throw NotPathologicalError();
  }
}

}  // namespace

Matrix random_rotation(int n, std::mt19937_64& rng) {
  const Matrix raw = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(raw);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);  // fix the QR sign ambiguity
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

Basis pathological_init(const PathologicalInit& init) {
  std::mt19937_64 rng(init.seed);
  const Matrix subset = random_rotation(init.dims, rng);
  Matrix w(init.tiles * init.dims, init.dims);
  for (int t = 0; t < init.tiles; ++t)
    w.middleRows(t * init.dims, init.dims) = subset;
  if (init.noise_sigma > 0.0) {
    w += (init.noise_sigma / std::sqrt(static_cast<double>(init.dims))) *
         gaussian_matrix(init.tiles * init.dims, init.dims, rng);
  }
  return project_rows_unit_norm(Basis(std::move(w)));
}

Basis random_uniform_init(int k, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return project_rows_unit_norm(Basis(gaussian_matrix(k, n, rng)));
}

std::vector<double> rotation_cost_deltas(const Basis& basis, int n, int tiles,
                                         int trials, std::uint64_t seed,
                                         CostKind kind, double eps) {
  require_pathological(basis, n, tiles);
  std::mt19937_64 rng(seed);
  const double reference = eval_cost(kind, basis, eps).value;
  std::vector<double> deltas;
  deltas.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    Basis rotated = basis;
    rotated.w.topRows(n) = basis.w.topRows(n) * random_rotation(n, rng);
    deltas.push_back(std::abs(eval_cost(kind, rotated, eps).value - reference));
  }
  return deltas;
}

double rotation_cost_delta(const Basis& basis, int n, int tiles, int trials,
                           std::uint64_t seed, CostKind kind, double eps) {
  double worst = 0.0;
  for (double d : rotation_cost_deltas(basis, n, tiles, trials, seed, kind, eps))
    worst = std::max(worst, d);
  return worst;
}

double rotation_invariance_check(const Basis& basis, int n, int tiles,
                                 int trials, std::uint64_t seed) {
  return rotation_cost_delta(basis, n, tiles, trials, seed, CostKind::L2);
}

CriticalScan critical_point_scan(const Basis& basis, int row_index,
                                 std::uint64_t generator_seed,
                                 const std::vector<double>& eps_list,
                                 CostKind kind, double eps_reg) {
  std::mt19937_64 rng(generator_seed);
  const int n = basis.dims();
  const Vector row = basis.w.row(row_index).transpose();

  // random unit direction orthogonal to the chosen row
  Vector v;
  do {
    v = gaussian_matrix(n, 1, rng).col(0);
    v -= v.dot(row) * row;
  } while (v.norm() < 1e-8);
  v /= v.norm();

  const double reference = eval_cost(kind, basis, eps_reg).value;
  CriticalScan scan;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (double eps : eps_list) {
    Basis perturbed = basis;
    perturbed.w.row(row_index) =
        (std::cos(eps) * row + std::sin(eps) * v).transpose();
    const double delta =
        std::abs(eval_cost(kind, perturbed, eps_reg).value - reference);
    scan.deltas.emplace_back(eps, delta);
    if (eps > 0.0 && delta > 0.0) {
      const double x = std::log(eps);
      const double y = std::log(delta);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++count;
    }
  }
  if (count >= 2) {
    scan.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  } else {
    scan.slope = std::numeric_limits<double>::quiet_NaN();
  }
  return scan;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  const double step = (std::log(hi) - std::log(lo)) / (count - 1);
  for (int i = 0; i < count; ++i) out.push_back(std::exp(std::log(lo) + i * step));
  return out;
}

std::vector<ProfilePoint> gradient_profile(CostKind kind, ProfileRegion region,
                                           int samples, double eps,
                                           double near_one_delta) {
  double lo = 0.0, hi = 0.1;
  if (region == ProfileRegion::NearOne) {
    lo = 0.9;
    hi = 1.0 - near_one_delta;
  }
  std::vector<ProfilePoint> profile;
  profile.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double c = samples == 1 ? lo : lo + (hi - lo) * i / (samples - 1);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    Matrix w(2, 2);
    w << 1.0, 0.0, c, s;
    const CostEval eval = eval_cost(kind, Basis(std::move(w)), eps);
    // chain rule along the circle: d(row2)/dtheta = (-sin, cos)
    const double dtheta = eval.grad(1, 0) * (-s) + eval.grad(1, 1) * c;
    profile.push_back({c, dtheta});
  }
  return profile;
}

double fit_profile_exponent(const std::vector<ProfilePoint>& profile) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const ProfilePoint& p : profile) {
    if (p.cos_theta <= 0.0 || p.dcost_dtheta == 0.0) continue;
    const double x = std::log(p.cos_theta);
    const double y = std::log(std::abs(p.dcost_dtheta));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return std::numeric_limits<double>::quiet_NaN();
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace oica
