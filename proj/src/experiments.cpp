#include "oica/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace oica {

AngleStats angle_stats(const Basis& basis) {
  AngleStats stats;
  stats.angles = pairwise_angles(basis);
  const std::size_t count = stats.angles.size();
  if (count == 0) return stats;
  for (double a : stats.angles) {
    int bin = static_cast<int>(a);
    bin = std::clamp(bin, 0, 179);
    ++stats.histogram[bin];
  }
  std::vector<double> folded = stats.angles;
  for (double& a : folded) a = std::min(a, 180.0 - a);
  std::sort(folded.begin(), folded.end());
  stats.min = folded.front();
  stats.median = count % 2 == 1
                     ? folded[count / 2]
                     : 0.5 * (folded[count / 2 - 1] + folded[count / 2]);
  double mean = 0.0;
  for (double a : folded) mean += a;
  mean /= static_cast<double>(count);
  double var = 0.0;
  for (double a : folded) var += (a - mean) * (a - mean);
  stats.stddev = std::sqrt(var / static_cast<double>(count));
  const std::size_t p01 =
      std::min(count - 1, static_cast<std::size_t>(0.01 * count));
  stats.percentile01 = folded[p01];
  return stats;
}

Mechanism parse_mechanism(std::string_view name) {
  if (name == "quasi_orth") return Mechanism::QuasiOrth;
  switch (parse_cost_kind(name)) {
    case CostKind::L2:
      return Mechanism::L2;
    case CostKind::L4:
      return Mechanism::L4;
    case CostKind::Coulomb:
      return Mechanism::Coulomb;
    case CostKind::RandomPrior:
      return Mechanism::RandomPrior;
  }
  throw std::invalid_argument("unknown mechanism");
}

std::string_view mechanism_name(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::L2:
      return "l2";
    case Mechanism::L4:
      return "l4";
    case Mechanism::Coulomb:
      return "coulomb";
    case Mechanism::RandomPrior:
      return "rand_prior";
    case Mechanism::QuasiOrth:
      return "quasi_orth";
  }
  return "?";
}

DistributionResult run_distribution(const DistributionConfig& config) {
  DistributionResult result;
  if (config.init == InitKind::Random) {
    result.initial = random_uniform_init(config.k, config.dims, config.seed);
  } else {
    result.initial = pathological_init(
        {config.dims, config.tiles, config.sigma, config.seed});
  }
  result.initial_stats = angle_stats(result.initial);

  if (config.mechanism == Mechanism::QuasiOrth) {
    MinimizeResult run =
        run_quasi_orth(result.initial, config.quasi_orth_iters);
    result.final = std::move(run.basis);
    result.trace = std::move(run.trace);
  } else {
    CostKind kind = CostKind::L2;
    switch (config.mechanism) {
      case Mechanism::L2:
        kind = CostKind::L2;
        break;
      case Mechanism::L4:
        kind = CostKind::L4;
        break;
      case Mechanism::Coulomb:
        kind = CostKind::Coulomb;
        break;
      case Mechanism::RandomPrior:
        kind = CostKind::RandomPrior;
        break;
      case Mechanism::QuasiOrth:
        break;
    }
    const double eps = config.eps;
    MinimizeResult run = minimize(
        [kind, eps](const Basis& b) { return eval_cost(kind, b, eps); },
        result.initial, config.optim);
    result.final = std::move(run.basis);
    result.trace = std::move(run.trace);
  }
  result.final_stats = angle_stats(result.final);
  return result;
}

TrainResult run_train(const TrainConfig& config) {
  const Image image = config.image_path
                          ? load_pgm(*config.image_path)
                          : synth_texture(config.texture_size, config.seed);
  const DataMatrix patches =
      extract_patches(image, config.patch_size, config.num_patches,
                      config.seed + 1);

  TrainResult result;
  result.whitening = fit_whitening(patches, config.whiten, config.floor_rel);
  DataMatrix white = result.whitening.apply(patches);

  const int n = config.patch_size * config.patch_size;
  const int k = config.k > 0 ? config.k : 4 * n;
  const Basis start = random_uniform_init(k, n, config.seed + 2);

  IcaObjective objective;
  objective.kind = config.cost;
  objective.eps = config.eps;
  objective.lambda = config.lambda;
  objective.data = std::move(white);

  MinimizeResult run = minimize(
      [&objective](const Basis& b) { return total_objective(b, objective); },
      start, config.optim);
  result.basis = std::move(run.basis);
  result.trace = std::move(run.trace);
  result.image_filters = result.basis.w * result.whitening.matrix;
  result.min_angle_deg = min_pairwise_angle(result.basis);

  const Matrix& x = objective.data;
  const Matrix residual =
      x - result.basis.w.transpose() * (result.basis.w * x);
  result.reconstruction_error =
      residual.colwise().squaredNorm().mean();
  return result;
}

RecoverResult run_recover(const RecoverConfig& config) {
  const SynthSources sources = synth_sources(config.n, config.m, config.seed);
  const WhiteningTransform whitening =
      fit_whitening(sources.mixed, WhitenKind::ZCA, 0.0);
  DataMatrix white = whitening.apply(sources.mixed);

  IcaObjective objective;
  objective.kind = config.cost;
  objective.eps = config.eps;
  objective.lambda = config.lambda;
  objective.data = std::move(white);

  const Basis start = random_uniform_init(config.n, config.n, config.seed + 1);
  MinimizeResult run = minimize(
      [&objective](const Basis& b) { return total_objective(b, objective); },
      start, config.optim);

  RecoverResult result;
  result.trace = std::move(run.trace);
  result.amari = amari_index(run.basis.w, whitening.matrix * sources.mixing);
  return result;
}

}  // namespace oica
