#pragma once

#include <array>
#include <optional>

#include "oica/data.hpp"
#include "oica/highdim.hpp"
#include "oica/objective.hpp"
#include "oica/optimizer.hpp"

namespace oica {

// Sorted pairwise angles with a 1-degree histogram and summary statistics.
// The summary fields treat theta and 180 - theta as the same pair
// orientation (a sign-flipped duplicate is still a degenerate pair), so
// they are computed on angles folded into [0, 90].
struct AngleStats {
  std::vector<double> angles;          // sorted, degrees, in [0, 180]
  std::array<int, 180> histogram{};    // bin b counts angles in [b, b+1)
  double min = 0.0;                    // folded
  double median = 0.0;                 // folded
  double stddev = 0.0;                 // folded
  double percentile01 = 0.0;           // folded
};

AngleStats angle_stats(const Basis& basis);

// The four costs plus the quasi-orthogonality fixed-point iteration.
enum class Mechanism { L2, L4, Coulomb, RandomPrior, QuasiOrth };

Mechanism parse_mechanism(std::string_view name);  // cost names | "quasi_orth"
std::string_view mechanism_name(Mechanism mechanism);

enum class InitKind { Random, Pathological };

struct DistributionConfig {
  Mechanism mechanism = Mechanism::L4;
  InitKind init = InitKind::Random;
  int k = 128;  // random init only; pathological uses tiles * dims
  int dims = 64;
  int tiles = 2;
  double sigma = 0.05;
  double eps = kDefaultEps;
  std::uint64_t seed = 0;
  OptimOptions optim;
  int quasi_orth_iters = 500;
};

struct DistributionResult {
  Basis initial;
  Basis final;
  OptimTrace trace;
  AngleStats initial_stats;
  AngleStats final_stats;
};

// Optimizes the pure degeneracy mechanism (lambda = 0) from the chosen
// initialization.
DistributionResult run_distribution(const DistributionConfig& config);

struct TrainConfig {
  std::optional<std::filesystem::path> image_path;  // bundled texture if unset
  int texture_size = 256;
  int patch_size = 8;
  int num_patches = 5000;
  int k = 0;  // 0 means four times overcomplete
  WhitenKind whiten = WhitenKind::ZCA;
  double floor_rel = 1e-4;
  CostKind cost = CostKind::L4;
  double eps = kDefaultEps;
  double lambda = 0.5;
  std::uint64_t seed = 0;
  OptimOptions optim;
};

struct TrainResult {
  Basis basis;           // learned rows in whitened space, unit norm
  Matrix image_filters;  // rows composed with the whitening matrix
  WhiteningTransform whitening;
  OptimTrace trace;
  double reconstruction_error = 0.0;  // mean |x - W^T W x|^2, informational
  double min_angle_deg = 0.0;
};

TrainResult run_train(const TrainConfig& config);

struct RecoverConfig {
  int n = 8;
  int m = 50000;
  std::uint64_t seed = 0;
  CostKind cost = CostKind::L2;
  double eps = kDefaultEps;
  double lambda = 0.5;
  // a few hundred steps separate the sources; the data term makes further
  // iterations expensive
  OptimOptions optim = {.max_iters = 300};
};

struct RecoverResult {
  double amari = 1.0;
  OptimTrace trace;
};

// Synthetic sources -> whiten -> complete ICA -> Amari index against the
// effective (whitened) mixing matrix.
RecoverResult run_recover(const RecoverConfig& config);

}  // namespace oica
