#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oica/highdim.hpp"

using namespace oica;

namespace {

// coefficient of determination of the log-log power-law fit
double profile_r2(const std::vector<ProfilePoint>& profile) {
  std::vector<std::pair<double, double>> pts;
  for (const ProfilePoint& p : profile)
    if (p.cos_theta > 0.0 && p.dcost_dtheta != 0.0)
      pts.emplace_back(std::log(p.cos_theta),
                       std::log(std::abs(p.dcost_dtheta)));
  const double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double cov = n * sxy - sx * sy;
  const double vx = n * sxx - sx * sx;
  const double vy = n * syy - sy * sy;
  return cov * cov / (vx * vy);
}

}  // namespace

TEST_CASE("sigma=0 pathological init has only 0 and 90 degree angles") {
  const Basis b = pathological_init({2, 2, 0.0, 3});
  const auto angles = pairwise_angles(b);
  REQUIRE(angles.size() == 6);
  for (double a : angles)
    CHECK((std::abs(a) <= 1e-8 || std::abs(a - 90.0) <= 1e-8));

  const Basis big = pathological_init({6, 3, 0.0, 4});
  const auto all = pairwise_angles(big);
  CHECK(all.size() == 18 * 17 / 2);
  for (double a : all)
    CHECK((std::abs(a) <= 1e-8 || std::abs(a - 90.0) <= 1e-8));
}

TEST_CASE("single tile with no noise is an orthonormal basis with zero l2 cost") {
  const Basis b = pathological_init({3, 1, 0.0, 9});
  CHECK(cost_l2(b).value <= 1e-24);
}

TEST_CASE("noisy pathological init in high dimension is bimodal near 0 and 90") {
  const Basis b = pathological_init({64, 2, 0.1, 5});
  const auto angles = pairwise_angles(b);
  int near_zero = 0, near_ninety = 0;
  for (double a : angles) {
    if (a < 25.0) ++near_zero;
    if (std::abs(a - 90.0) < 25.0) ++near_ninety;
  }
  CHECK(near_zero == 64);  // one near-parallel partner per row
  CHECK(near_zero + near_ninety == static_cast<int>(angles.size()));
}

TEST_CASE("uniform random rows: pair cosines average to zero") {
  const Basis b = random_uniform_init(1000, 64, 12);
  const Matrix g = gram(b);
  double sum = 0.0;
  long count = 0;
  for (int i = 0; i < b.rows(); ++i)
    for (int j = i + 1; j < b.rows(); ++j) {
      sum += g(i, j);
      ++count;
    }
  const double mean = sum / static_cast<double>(count);
  const double stderr_bound = 3.0 / std::sqrt(64.0 * count);
  CHECK(std::abs(mean) <= stderr_bound);
}

TEST_CASE("two uniform rows in the plane: angle is uniform on [0, 180]") {
  const int trials = 10000;
  std::vector<double> angles;
  angles.reserve(trials);
  for (int seed = 0; seed < trials; ++seed)
    angles.push_back(pairwise_angles(random_uniform_init(2, 2, seed))[0]);
  std::sort(angles.begin(), angles.end());
  double ks = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double cdf = angles[i] / 180.0;
    const double hi = static_cast<double>(i + 1) / trials;
    const double lo = static_cast<double>(i) / trials;
    ks = std::max({ks, std::abs(cdf - hi), std::abs(cdf - lo)});
  }
  CHECK(ks < 0.02);  // ~1.63/sqrt(n) at the 1% level
}

TEST_CASE("fixed seeds reproduce initializations") {
  const Basis a = random_uniform_init(5, 3, 77);
  const Basis b = random_uniform_init(5, 3, 77);
  CHECK((a.w - b.w).cwiseAbs().maxCoeff() == 0.0);
  const Basis c = pathological_init({4, 2, 0.3, 13});
  const Basis d = pathological_init({4, 2, 0.3, 13});
  CHECK((c.w - d.w).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("l2 cost is invariant under rotations of the first subset") {
  const Basis small = pathological_init({2, 2, 0.0, 21});
  CHECK(rotation_invariance_check(small, 2, 2, 100, 5) < 1e-10);
  const Basis large = pathological_init({8, 3, 0.0, 22});
  CHECK(rotation_invariance_check(large, 8, 3, 100, 6) < 1e-9);
}

TEST_CASE("the invariance holds for every dimension and tiling in range") {
  for (int n = 2; n <= 8; ++n) {
    for (int tiles : {2, 3}) {
      const Basis basis = pathological_init(
          {n, tiles, 0.0, 600 + 10 * static_cast<std::uint64_t>(n) + tiles});
      CHECK(rotation_invariance_check(basis, n, tiles, 25, 7) < 1e-9);
    }
  }
}

TEST_CASE("the rotation invariance is specific to l2") {
  const Basis b = pathological_init({4, 2, 0.0, 31});
  const double l4_delta =
      rotation_cost_delta(b, 4, 2, 20, 7, CostKind::L4);
  CHECK(l4_delta > 1e-3);
}

TEST_CASE("non-pathological input is rejected") {
  const Basis b = random_uniform_init(8, 4, 3);
  CHECK_THROWS_AS(rotation_invariance_check(b, 4, 2, 1, 0),
                  NotPathologicalError);
}

TEST_CASE("cost change under single-row rotation is quadratic at criticality") {
  const Basis b = pathological_init({4, 2, 0.0, 41});
  const auto eps_list = log_spaced(1e-5, 1e-2, 10);
  for (std::uint64_t gen = 0; gen < 5; ++gen) {
    const CriticalScan scan = critical_point_scan(b, 2, gen, eps_list);
    CHECK(scan.slope > 1.9);
    CHECK(scan.slope < 2.1);
  }
}

TEST_CASE("cost change is linear at a generic non-stationary basis") {
  const auto eps_list = log_spaced(1e-5, 1e-2, 10);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Basis b = random_uniform_init(8, 4, 500 + seed);
    const CriticalScan scan = critical_point_scan(b, 1, seed, eps_list);
    CHECK(scan.slope > 0.9);
    CHECK(scan.slope < 1.1);
  }
}

TEST_CASE("zero rotation angle changes nothing") {
  const Basis b = pathological_init({4, 2, 0.0, 51});
  const CriticalScan scan = critical_point_scan(b, 0, 3, {0.0});
  CHECK(scan.deltas.at(0).second == 0.0);
}

TEST_CASE("gradient profiles near orthogonality have the expected exponents") {
  const int samples = 40;
  const double l2_p = fit_profile_exponent(
      gradient_profile(CostKind::L2, ProfileRegion::NearZero, samples));
  const double l4_p = fit_profile_exponent(
      gradient_profile(CostKind::L4, ProfileRegion::NearZero, samples));
  const double coulomb_p = fit_profile_exponent(
      gradient_profile(CostKind::Coulomb, ProfileRegion::NearZero, samples));
  const double prior_p = fit_profile_exponent(
      gradient_profile(CostKind::RandomPrior, ProfileRegion::NearZero, samples));
  CHECK(l2_p == doctest::Approx(1.0).epsilon(0.1));
  CHECK(coulomb_p == doctest::Approx(1.0).epsilon(0.1));
  CHECK(prior_p == doctest::Approx(1.0).epsilon(0.1));
  CHECK(l4_p == doctest::Approx(3.0).epsilon(0.07));

  CHECK(profile_r2(gradient_profile(CostKind::L2, ProfileRegion::NearZero,
                                    samples)) > 0.999);
  CHECK(profile_r2(gradient_profile(CostKind::L4, ProfileRegion::NearZero,
                                    samples)) > 0.999);
}

TEST_CASE("the coulomb gradient diverges monotonically toward cos = 1") {
  const auto profile =
      gradient_profile(CostKind::Coulomb, ProfileRegion::NearOne, 30);
  for (std::size_t i = 1; i < profile.size(); ++i)
    CHECK(std::abs(profile[i].dcost_dtheta) >
          std::abs(profile[i - 1].dcost_dtheta));
  CHECK(std::abs(profile.back().dcost_dtheta) > 1e3);
}

TEST_CASE("l4 has the smallest gradient among the costs for cos < 0.05") {
  const int samples = 20;
  const auto l2 = gradient_profile(CostKind::L2, ProfileRegion::NearZero, samples);
  const auto l4 = gradient_profile(CostKind::L4, ProfileRegion::NearZero, samples);
  const auto coulomb =
      gradient_profile(CostKind::Coulomb, ProfileRegion::NearZero, samples);
  const auto prior =
      gradient_profile(CostKind::RandomPrior, ProfileRegion::NearZero, samples);
  for (std::size_t i = 0; i < l4.size(); ++i) {
    if (l4[i].cos_theta <= 0.0 || l4[i].cos_theta >= 0.05) continue;
    const double l4_mag = std::abs(l4[i].dcost_dtheta);
    CHECK(l4_mag < std::abs(l2[i].dcost_dtheta));
    CHECK(l4_mag < std::abs(coulomb[i].dcost_dtheta));
    CHECK(l4_mag < std::abs(prior[i].dcost_dtheta));
  }
}
