#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "oica/costs.hpp"

namespace oica {

struct NotPathologicalError : std::runtime_error {
  NotPathologicalError()
      : std::runtime_error(
            "basis is not an exact sigma=0 pathological configuration") {}
};

// M stacked copies of one random orthonormal basis of R^n, optionally
// perturbed by Gaussian noise and row-renormalized. noise_sigma is the
// expected noise norm per row (per-entry std is sigma / sqrt(n)), so the
// angle scale of the perturbation is independent of n.
struct PathologicalInit {
  int dims = 2;
  int tiles = 2;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

Basis pathological_init(const PathologicalInit& init);

// Rows i.i.d. uniform on the unit sphere S^{n-1}.
Basis random_uniform_init(int k, int n, std::uint64_t seed);

// Haar-distributed rotation (special orthogonal, det +1) via QR.
Matrix random_rotation(int n, std::mt19937_64& rng);

// Applies `trials` random rotations to the first orthonormal subset (rows
// 0..n-1) only and returns the largest |delta C_L2| observed. Throws
// NotPathologicalError unless every n-row subset is orthonormal to 1e-8.
double rotation_invariance_check(const Basis& basis, int n, int tiles,
                                 int trials, std::uint64_t seed);

// Per-trial |delta C| under subset rotations, for any cost (the
// invariance holds for L2 only).
std::vector<double> rotation_cost_deltas(const Basis& basis, int n, int tiles,
                                         int trials, std::uint64_t seed,
                                         CostKind kind,
                                         double eps = kDefaultEps);

double rotation_cost_delta(const Basis& basis, int n, int tiles, int trials,
                           std::uint64_t seed, CostKind kind,
                           double eps = kDefaultEps);

struct CriticalScan {
  std::vector<std::pair<double, double>> deltas;  // (eps, |C(eps) - C(0)|)
  double slope = 0.0;  // least-squares slope of log|delta C| vs log eps
};

// Rotates only row `row_index` by angle eps in the plane spanned by that
// row and a random orthogonal direction (an exact Givens rotation, so
// unit norms are preserved), and fits the log-log growth of the cost
// change. Slope ~2 flags a critical point, ~1 a generic point.
CriticalScan critical_point_scan(const Basis& basis, int row_index,
                                 std::uint64_t generator_seed,
                                 const std::vector<double>& eps_list,
                                 CostKind kind = CostKind::L2,
                                 double eps_reg = kDefaultEps);

std::vector<double> log_spaced(double lo, double hi, int count);

enum class ProfileRegion { NearZero, NearOne };

struct ProfilePoint {
  double cos_theta = 0.0;
  double dcost_dtheta = 0.0;
};

// Scalar gradient of the cost for a two-row planar basis parameterized by
// the angle theta between the rows, tabulated over cos(theta) in [0, 0.1]
// (NearZero) or [0.9, 1 - delta] (NearOne).
std::vector<ProfilePoint> gradient_profile(CostKind kind, ProfileRegion region,
                                           int samples,
                                           double eps = kDefaultEps,
                                           double near_one_delta = 1e-4);

// Least-squares exponent p of |dC/dtheta| ~ c * cos(theta)^p over the
// profile's positive entries.
double fit_profile_exponent(const std::vector<ProfilePoint>& profile);

}  // namespace oica
