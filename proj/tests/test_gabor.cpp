#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oica/gabor.hpp"

using namespace oica;

namespace {

// documented sampling ranges for synthetic round-trip checks (16x16)
GaborParams random_gabor(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GaborParams p;
  p.center_x = 5.5 + 4.0 * unit(rng);
  p.center_y = 5.5 + 4.0 * unit(rng);
  p.rotation = std::numbers::pi * unit(rng);
  p.phase = 2.0 * std::numbers::pi * unit(rng) - std::numbers::pi;
  p.frequency = 0.08 * std::pow(0.28 / 0.08, unit(rng));
  p.var_par = 2.0 + 6.0 * unit(rng);
  p.var_perp = 2.0 + 8.0 * unit(rng);
  p.amplitude = 1.0;
  return p;
}

double rotation_error_deg(double a, double b) {
  double d = std::abs(std::remainder(a - b, std::numbers::pi));
  return d * 180.0 / std::numbers::pi;
}

}  // namespace

TEST_CASE("odd-phase kernel vanishes at its center") {
  GaborParams p;
  p.center_x = 8.0;
  p.center_y = 8.0;
  p.phase = std::numbers::pi / 2.0;
  p.frequency = 0.15;
  const Matrix k = gabor_kernel(p, 17);
  CHECK(std::abs(k(8, 8)) <= 1e-15);
}

TEST_CASE("zero frequency with zero phase is a pure gaussian envelope") {
  GaborParams p;
  p.center_x = 8.0;
  p.center_y = 8.0;
  p.rotation = 0.7;
  p.frequency = 1e-12;
  p.var_par = 5.0;
  p.var_perp = 3.0;
  const Matrix k = gabor_kernel(p, 17);
  for (int r = 0; r < 17; ++r) {
    for (int c = 0; c < 17; ++c) {
      const double dx = c - 8.0, dy = r - 8.0;
      const double u = dx * std::cos(0.7) + dy * std::sin(0.7);
      const double v = -dx * std::sin(0.7) + dy * std::cos(0.7);
      const double expected = std::exp(-u * u / 10.0 - v * v / 6.0);
      CHECK(k(r, c) == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("rotating by pi with negated phase reproduces the kernel") {
  GaborParams p;
  p.center_x = 7.3;
  p.center_y = 8.9;
  p.rotation = 0.4;
  p.phase = 1.1;
  p.frequency = 0.2;
  p.var_par = 6.0;
  p.var_perp = 2.5;
  GaborParams q = p;
  q.rotation = p.rotation + std::numbers::pi;
  q.phase = -p.phase;
  CHECK((gabor_kernel(p, 16) - gabor_kernel(q, 16)).cwiseAbs().maxCoeff() <=
        1e-12);
}

TEST_CASE("gaussian blur preserves mass and smooths") {
  Matrix spike = Matrix::Zero(9, 9);
  spike(4, 4) = 1.0;
  const Matrix blurred = gaussian_blur(spike, 1.0);
  CHECK(blurred.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(blurred(4, 4) < 0.25);
  CHECK(blurred(4, 4) > blurred(4, 3));
  CHECK(blurred(4, 3) > blurred(4, 2));
}

TEST_CASE("noiseless round trip recovers frequency, rotation, center") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 8; ++trial) {
    const GaborParams truth = random_gabor(rng);
    const Matrix patch = gabor_kernel(truth, 16);
    const GaborFit fit = fit_gabor(patch);
    CHECK(std::abs(fit.params.frequency - truth.frequency) /
              truth.frequency <=
          0.05);
    CHECK(rotation_error_deg(fit.params.rotation, truth.rotation) <= 3.0);
    CHECK(std::abs(fit.params.center_x - truth.center_x) <= 0.5);
    CHECK(std::abs(fit.params.center_y - truth.center_y) <= 0.5);
    CHECK(fit.mse < 0.02);
  }
}

TEST_CASE("round trip with additive noise still recovers frequency") {
  std::mt19937_64 rng(55);
  std::normal_distribution<double> normal(0.0, 0.05);
  for (int trial = 0; trial < 5; ++trial) {
    const GaborParams truth = random_gabor(rng);
    Matrix patch = gabor_kernel(truth, 16);
    for (int r = 0; r < 16; ++r)
      for (int c = 0; c < 16; ++c) patch(r, c) += normal(rng);
    const GaborFit fit = fit_gabor(patch);
    CHECK(std::abs(fit.params.frequency - truth.frequency) /
              truth.frequency <=
          0.10);
  }
}

TEST_CASE("fit parameters ignore patch amplitude scaling") {
  std::mt19937_64 rng(91);
  const GaborParams truth = random_gabor(rng);
  const Matrix patch = gabor_kernel(truth, 16);
  const GaborFit a = fit_gabor(patch);
  const GaborFit b = fit_gabor(10.0 * patch);
  CHECK(std::abs(a.params.frequency - b.params.frequency) <= 1e-6);
  CHECK(rotation_error_deg(a.params.rotation, b.params.rotation) <= 1e-4);
  CHECK(std::abs(a.params.center_x - b.params.center_x) <= 1e-4);
  CHECK(b.params.amplitude ==
        doctest::Approx(10.0 * a.params.amplitude).epsilon(1e-6));
  CHECK(a.mse == doctest::Approx(b.mse).epsilon(1e-9));
}

TEST_CASE("constant patches are rejected") {
  CHECK_THROWS_AS(fit_gabor(Matrix::Zero(16, 16)), ConstantPatchError);
  CHECK_THROWS_AS(fit_gabor(Matrix::Constant(16, 16, 3.0)),
                  ConstantPatchError);
}

TEST_CASE("white noise patches do not fit well") {
  std::mt19937_64 rng(123);
  std::normal_distribution<double> normal;
  int poor = 0;
  const int trials = 5;
  for (int t = 0; t < trials; ++t) {
    Matrix patch(16, 16);
    for (int r = 0; r < 16; ++r)
      for (int c = 0; c < 16; ++c) patch(r, c) = normal(rng);
    try {
      const GaborFit fit = fit_gabor(patch);
      if (fit.mse >= 0.8) ++poor;
    } catch (const FitDivergedError&) {
      ++poor;
    }
  }
  CHECK(poor == trials);
}

TEST_CASE("basis-wide fitting preserves row order and tolerates junk rows") {
  std::mt19937_64 rng(7);
  const GaborParams g0 = random_gabor(rng);
  const GaborParams g1 = random_gabor(rng);
  Matrix w(3, 256);
  const Matrix k0 = gabor_kernel(g0, 16);
  const Matrix k1 = gabor_kernel(g1, 16);
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) {
      w(0, r * 16 + c) = k0(r, c);
      w(1, r * 16 + c) = 0.0;  // constant row: must not derail the others
      w(2, r * 16 + c) = k1(r, c);
    }
  }
  const auto fits = fit_gabor_basis(Basis(w), 16, {}, 2);
  REQUIRE(fits.size() == 3);
  CHECK(fits[0].mse < 0.02);
  CHECK(fits[1].mse == 2.0);
  CHECK(fits[2].mse < 0.02);
  CHECK(std::abs(fits[0].params.frequency - g0.frequency) / g0.frequency <=
        0.05);
  CHECK(std::abs(fits[2].params.frequency - g1.frequency) / g1.frequency <=
        0.05);
}
