#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oica/highdim.hpp"
#include "oica/objective.hpp"

using namespace oica;

TEST_CASE("rows orthogonal to every sample contribute nothing") {
  Matrix w(1, 2);
  w << 0, 1;
  Matrix data(2, 3);
  data << 1, 2, -3, 0, 0, 0;
  const CostEval eval = sparsity_prior(Basis(w), data);
  CHECK(eval.value == 0.0);
  CHECK(eval.grad.row(0).norm() == 0.0);
}

TEST_CASE("log cosh of a unit response") {
  Matrix w(1, 2);
  w << 1, 0;
  Matrix data(2, 1);
  data << 1, 0;
  CHECK(sparsity_prior(Basis(w), data).value ==
        doctest::Approx(std::log(std::cosh(1.0))).epsilon(1e-14));
}

TEST_CASE("sparsity gradient matches finite differences") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  Matrix data(2, 10);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 10; ++c) data(r, c) = normal(rng);
  Basis b = random_uniform_init(4, 2, 5);

  const CostEval eval = sparsity_prior(b, data);
  const double h = 1e-6;
  for (int r = 0; r < b.rows(); ++r) {
    for (int c = 0; c < b.dims(); ++c) {
      Basis probe = b;
      probe.w(r, c) += h;
      const double up = sparsity_prior(probe, data).value;
      probe.w(r, c) -= 2 * h;
      const double down = sparsity_prior(probe, data).value;
      const double numeric = (up - down) / (2 * h);
      const double denom = std::max(
          {std::abs(numeric), std::abs(eval.grad(r, c)), 1e-8});
      CHECK(std::abs(numeric - eval.grad(r, c)) / denom < 1e-5);
    }
  }
}

TEST_CASE("sparsity value does not depend on sample order") {
  Matrix data(3, 6);
  data.setRandom();
  const Basis b = random_uniform_init(5, 3, 9);
  Matrix shuffled = data;
  shuffled.col(0).swap(shuffled.col(4));
  shuffled.col(2).swap(shuffled.col(5));
  CHECK(sparsity_prior(b, data).value ==
        doctest::Approx(sparsity_prior(b, shuffled).value).epsilon(1e-14));
}

TEST_CASE("sample mean equals the weighted mean of partitions") {
  Matrix data(3, 8);
  data.setRandom();
  const Basis b = random_uniform_init(4, 3, 23);
  const double whole = sparsity_prior(b, data).value;
  const double left = sparsity_prior(b, data.leftCols(3)).value;
  const double right = sparsity_prior(b, data.rightCols(5)).value;
  CHECK(whole == doctest::Approx((3 * left + 5 * right) / 8).epsilon(1e-12));
}

TEST_CASE("total objective is the sum of its parts and linear in lambda") {
  Matrix data(3, 20);
  data.setRandom();
  const Basis b = random_uniform_init(6, 3, 31);

  IcaObjective obj;
  obj.kind = CostKind::L4;
  obj.lambda = 0.7;
  obj.data = data;

  const CostEval total = total_objective(b, obj);
  const CostEval degeneracy = cost_l4(b);
  const CostEval prior = sparsity_prior(b, data);
  CHECK(total.value ==
        doctest::Approx(degeneracy.value + 0.7 * prior.value).epsilon(1e-12));
  CHECK((total.grad - degeneracy.grad - 0.7 * prior.grad)
            .cwiseAbs()
            .maxCoeff() <= 1e-12);

  obj.lambda = 1.4;
  const CostEval doubled = total_objective(b, obj);
  CHECK(doubled.value - degeneracy.value ==
        doctest::Approx(2.0 * (total.value - degeneracy.value))
            .epsilon(1e-12));
}

TEST_CASE("lambda zero and empty data reduce to the degeneracy cost") {
  const Basis b = random_uniform_init(4, 3, 77);

  IcaObjective without_data;
  without_data.kind = CostKind::L2;
  without_data.lambda = 0.9;
  without_data.data = Matrix(3, 0);
  CHECK(total_objective(b, without_data).value == cost_l2(b).value);

  IcaObjective zero_lambda;
  zero_lambda.kind = CostKind::L2;
  zero_lambda.lambda = 0.0;
  zero_lambda.data = Matrix::Random(3, 5);
  CHECK(total_objective(b, zero_lambda).value == cost_l2(b).value);
}

TEST_CASE("dimension mismatch is rejected") {
  const Basis b = random_uniform_init(4, 3, 1);
  CHECK_THROWS_AS(sparsity_prior(b, Matrix::Random(2, 5)),
                  ShapeMismatchError);
}
