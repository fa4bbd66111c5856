// oica: overcomplete ICA with pluggable degeneracy control.
// Every experiment is a subcommand; outputs are CSV series plus JSON
// summaries, written atomically under --out.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oica/analytic2d.hpp"
#include "oica/experiments.hpp"
#include "oica/gabor.hpp"
#include "oica/matrix_io.hpp"

using json = nlohmann::json;
using namespace oica;

namespace {

struct CommonFlags {
  std::uint64_t seed = 0;
  std::filesystem::path out = ".";
  std::string cost = "l4";
  double eps = kDefaultEps;
  double lambda = 0.5;
  int max_iters = 2000;
  double grad_tol = 1e-7;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "random seed");
  cmd->add_option("--out", flags.out, "output directory");
  cmd->add_option("--cost", flags.cost,
                  "degeneracy cost: l2|l4|coulomb|rand_prior");
  cmd->add_option("--eps", flags.eps, "regularizer for singular costs");
  cmd->add_option("--lambda", flags.lambda, "sparsity weight");
  cmd->add_option("--max-iters", flags.max_iters, "optimizer iteration cap");
  cmd->add_option("--grad-tol", flags.grad_tol,
                  "projected-gradient infinity norm tolerance");
}

OptimOptions optim_from(const CommonFlags& flags) {
  OptimOptions opts;
  opts.max_iters = flags.max_iters;
  opts.grad_tol = flags.grad_tol;
  opts.seed = flags.seed;
  return opts;
}

int env_thread_cap() {
  const char* env = std::getenv("OICA_THREADS");
  if (!env) return 0;
  const int value = std::atoi(env);
  return value > 0 ? value : 0;
}

std::string format(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

int fail_count = 0;

void check(bool ok, const std::string& what) {
  if (!ok) {
    std::cerr << "TOLERANCE VIOLATION: " << what << "\n";
    ++fail_count;
  }
}

void write_histogram_csv(const std::filesystem::path& path,
                         const AngleStats& stats) {
  std::ostringstream out;
  out << "bin_deg,count\n";
  for (int b = 0; b < 180; ++b) out << b << "," << stats.histogram[b] << "\n";
  atomic_write_text(path, out.str());
}

json stats_json(const AngleStats& stats) {
  return json{{"min_deg", stats.min},
              {"median_deg", stats.median},
              {"stddev_deg", stats.stddev},
              {"percentile01_deg", stats.percentile01},
              {"pairs", stats.angles.size()}};
}

// ---------------------------------------------------------------- check2d

int cmd_check2d(int grid_points, bool inject_error, const CommonFlags& flags) {
  std::ostringstream csv;
  csv << "theta2,kind,cost_closed,cost_numeric,grad_err,hess_err,eig_err\n";
  double worst_cost = 0, worst_grad = 0, worst_hess = 0, worst_eig = 0;
  for (int i = 0; i < grid_points; ++i) {
    const double theta2 = 2.0 * std::numbers::pi * i / std::max(1, grid_points);
    const Config2D config{std::numbers::pi / 2.0, theta2,
                          std::numbers::pi / 2.0};
    for (CostKind kind : {CostKind::L2, CostKind::L4}) {
      const double closed =
          path_cost(kind, theta2) + (inject_error ? 1e-3 : 0.0);
      const double numeric = theta_cost(kind, config);
      const double cost_err = std::abs(numeric - closed);

      const Eigen::Vector3d grad_fd = fd_theta_gradient(kind, config);
      const double grad_err =
          (grad_fd - path_gradient(kind, theta2)).cwiseAbs().maxCoeff();

      const Eigen::Matrix3d hess_fd = fd_theta_hessian(kind, config);
      const double hess_err =
          (hess_fd - path_hessian(kind, theta2)).cwiseAbs().maxCoeff();

      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(hess_fd);
      const double eig_err =
          (solver.eigenvalues() - path_hessian_eigs(kind, theta2))
              .cwiseAbs()
              .maxCoeff();

      worst_cost = std::max(worst_cost, cost_err);
      worst_grad = std::max(worst_grad, grad_err);
      worst_hess = std::max(worst_hess, hess_err);
      worst_eig = std::max(worst_eig, eig_err);
      csv << format(theta2) << "," << cost_kind_name(kind) << ","
          << format(closed) << "," << format(numeric) << ","
          << format(grad_err) << "," << format(hess_err) << ","
          << format(eig_err) << "\n";
    }
  }
  atomic_write_text(flags.out / "check2d.csv", csv.str());
  check(worst_cost <= 1e-10, "closed vs numeric cost: " + format(worst_cost));
  check(worst_grad <= 1e-6, "closed vs fd gradient: " + format(worst_grad));
  check(worst_hess <= 1e-5, "closed vs fd hessian: " + format(worst_hess));
  check(worst_eig <= 1e-5, "closed vs fd eigenvalues: " + format(worst_eig));
  std::cout << "check2d over " << grid_points << " grid points: max cost err "
            << worst_cost << ", grad err " << worst_grad << ", hessian err "
            << worst_hess << ", eig err " << worst_eig << "\n";
  return fail_count == 0 ? 0 : 1;
}

// --------------------------------------------------------------- gradcheck

int cmd_gradcheck(int trials, int kmax, int nmax, const CommonFlags& flags) {
  std::mt19937_64 rng(flags.seed);
  std::ostringstream csv;
  csv << "kind,trial,k,n,err\n";
  for (CostKind kind : {CostKind::L2, CostKind::L4, CostKind::Coulomb,
                        CostKind::RandomPrior}) {
    const bool regularized = cost_uses_eps(kind);
    const double tol = regularized ? 1e-4 : 1e-5;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      std::uniform_int_distribution<int> pick_n(2, nmax);
      const int n = pick_n(rng);
      std::uniform_int_distribution<int> pick_k(2, kmax);
      const int k = pick_k(rng);
      Basis basis = random_uniform_init(k, n, rng());
      // thinning keeps the singular costs away from their poles
      if (regularized) basis = thin_rows_by_angle(basis, 10.0);
      if (basis.rows() < 2) continue;
      const double err = grad_check(kind, basis, 1e-5, flags.eps);
      worst = std::max(worst, err);
      csv << cost_kind_name(kind) << "," << t << "," << k << "," << n << ","
          << format(err) << "\n";
    }
    check(worst < tol, std::string(cost_kind_name(kind)) +
                           " grad check: " + format(worst) + " (tol " +
                           format(tol) + ")");
    std::cout << "gradcheck " << cost_kind_name(kind) << ": max rel err "
              << worst << " over " << trials << " bases\n";
  }
  atomic_write_text(flags.out / "gradcheck.csv", csv.str());
  return fail_count == 0 ? 0 : 1;
}

// -------------------------------------------------------------- invariance

int cmd_invariance(int n_arg, int tiles_arg, int trials,
                   const CommonFlags& flags) {
  const std::vector<int> dims =
      n_arg > 0 ? std::vector<int>{n_arg} : std::vector<int>{2, 4, 8};
  const std::vector<int> tiling =
      tiles_arg > 0 ? std::vector<int>{tiles_arg} : std::vector<int>{2, 3};
  std::ostringstream csv;
  csv << "n,tiles,trial,delta_l2\n";
  double worst = 0.0;
  for (int n : dims) {
    for (int tiles : tiling) {
      const Basis basis = pathological_init(
          {n, tiles, 0.0,
           flags.seed + 97 * static_cast<std::uint64_t>(n) + tiles});
      const auto deltas = rotation_cost_deltas(basis, n, tiles, trials,
                                               flags.seed, CostKind::L2);
      for (int t = 0; t < trials; ++t) {
        worst = std::max(worst, deltas[t]);
        csv << n << "," << tiles << "," << t << "," << format(deltas[t])
            << "\n";
      }
    }
  }
  atomic_write_text(flags.out / "invariance.csv", csv.str());
  check(worst < 1e-9,
        "subset-rotation invariance: max delta " + format(worst));
  std::cout << "invariance: max |delta C_L2| = " << worst << "\n";
  return fail_count == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- critical

int cmd_critical(int n, int tiles, int trials, const CommonFlags& flags) {
  const auto eps_list = log_spaced(1e-5, 1e-2, 10);
  std::ostringstream csv;
  csv << "mode,trial,eps,delta\n";
  std::ostringstream slopes_csv;
  slopes_csv << "mode,trial,slope\n";

  double path_lo = 1e9, path_hi = -1e9, rand_lo = 1e9, rand_hi = -1e9;
  for (int t = 0; t < trials; ++t) {
    const Basis pathological =
        pathological_init({n, tiles, 0.0, flags.seed + 13 * t});
    const int row = static_cast<int>((flags.seed + t) % pathological.rows());
    const CriticalScan at_critical = critical_point_scan(
        pathological, row, flags.seed + 1000 + t, eps_list);
    for (auto [eps, delta] : at_critical.deltas)
      csv << "pathological," << t << "," << format(eps) << ","
          << format(delta) << "\n";
    slopes_csv << "pathological," << t << "," << format(at_critical.slope)
               << "\n";
    path_lo = std::min(path_lo, at_critical.slope);
    path_hi = std::max(path_hi, at_critical.slope);

    const Basis generic =
        random_uniform_init(n * tiles, n, flags.seed + 11000 + t);
    const CriticalScan at_generic =
        critical_point_scan(generic, row, flags.seed + 900 + t, eps_list);
    for (auto [eps, delta] : at_generic.deltas)
      csv << "random," << t << "," << format(eps) << "," << format(delta)
          << "\n";
    slopes_csv << "random," << t << "," << format(at_generic.slope) << "\n";
    rand_lo = std::min(rand_lo, at_generic.slope);
    rand_hi = std::max(rand_hi, at_generic.slope);
  }
  atomic_write_text(flags.out / "critical.csv", csv.str());
  atomic_write_text(flags.out / "critical_slopes.csv", slopes_csv.str());
  check(path_lo >= 1.9 && path_hi <= 2.1,
        "pathological slopes in [" + format(path_lo) + ", " +
            format(path_hi) + "], expected 2.0 +- 0.1");
  check(rand_lo >= 0.9 && rand_hi <= 1.1,
        "random-basis slopes in [" + format(rand_lo) + ", " +
            format(rand_hi) + "], expected 1.0 +- 0.1");
  std::cout << "critical: pathological slopes [" << path_lo << ", " << path_hi
            << "], random slopes [" << rand_lo << ", " << rand_hi << "]\n";
  return fail_count == 0 ? 0 : 1;
}

// ------------------------------------------------------------- gradprofile

int cmd_gradprofile(int samples, const CommonFlags& flags) {
  std::ostringstream csv;
  csv << "kind,region,cos_theta,dcost_dtheta\n";
  json exponents;
  for (CostKind kind : {CostKind::L2, CostKind::L4, CostKind::Coulomb,
                        CostKind::RandomPrior}) {
    for (ProfileRegion region :
         {ProfileRegion::NearZero, ProfileRegion::NearOne}) {
      const auto profile = gradient_profile(kind, region, samples, flags.eps);
      const char* region_name =
          region == ProfileRegion::NearZero ? "near_zero" : "near_one";
      for (const ProfilePoint& p : profile)
        csv << cost_kind_name(kind) << "," << region_name << ","
            << format(p.cos_theta) << "," << format(p.dcost_dtheta) << "\n";
      if (region == ProfileRegion::NearZero) {
        const double exponent = fit_profile_exponent(profile);
        exponents[std::string(cost_kind_name(kind))] = exponent;
        const double lo = kind == CostKind::L4 ? 2.8 : 0.9;
        const double hi = kind == CostKind::L4 ? 3.2 : 1.1;
        check(exponent >= lo && exponent <= hi,
              std::string(cost_kind_name(kind)) + " near-zero exponent " +
                  format(exponent));
        std::cout << "gradprofile " << cost_kind_name(kind)
                  << ": near-zero exponent " << exponent << "\n";
      }
    }
  }
  atomic_write_text(flags.out / "gradprofile.csv", csv.str());
  atomic_write_text(flags.out / "gradprofile_exponents.json",
                    exponents.dump(2) + "\n");
  return fail_count == 0 ? 0 : 1;
}

// ------------------------------------------------------------ distribution

int cmd_distribution(const std::string& mechanism, const std::string& init,
                     int k, int n, int tiles, double sigma, int quasi_iters,
                     const CommonFlags& flags) {
  DistributionConfig config;
  config.mechanism = parse_mechanism(mechanism);
  config.init =
      init == "pathological" ? InitKind::Pathological : InitKind::Random;
  config.k = k;
  config.dims = n;
  config.tiles = tiles;
  config.sigma = sigma;
  config.eps = flags.eps;
  config.seed = flags.seed;
  config.optim = optim_from(flags);
  config.quasi_orth_iters = quasi_iters;

  const DistributionResult result = run_distribution(config);
  write_histogram_csv(flags.out / "hist_initial.csv", result.initial_stats);
  write_histogram_csv(flags.out / "hist_final.csv", result.final_stats);
  write_trace_csv(flags.out / "trace.csv", result.trace);
  write_matrix_csv(flags.out / "basis_final.csv", result.final.w);

  json summary{{"mechanism", mechanism},
               {"init", init},
               {"k", result.final.rows()},
               {"n", result.final.dims()},
               {"sigma", sigma},
               {"seed", flags.seed},
               {"initial", stats_json(result.initial_stats)},
               {"final", stats_json(result.final_stats)},
               {"final_cost", result.trace.objective.back()},
               {"iterations", result.trace.iterations()},
               {"termination",
                std::string(termination_name(result.trace.reason))}};
  atomic_write_text(flags.out / "summary.json", summary.dump(2) + "\n");
  std::cout << "distribution " << mechanism << " from " << init
            << " init: min angle " << result.initial_stats.min << " -> "
            << result.final_stats.min << " deg, stddev "
            << result.final_stats.stddev << " deg\n";
  return 0;
}

// ------------------------------------------------------------------- train

int cmd_train(const std::string& image, int texture_size, int patch_size,
              int num_patches, int k, const std::string& whiten, double floor,
              const CommonFlags& flags) {
  TrainConfig config;
  if (!image.empty()) config.image_path = image;
  config.texture_size = texture_size;
  config.patch_size = patch_size;
  config.num_patches = num_patches;
  config.k = k;
  config.whiten = parse_whiten_kind(whiten);
  config.floor_rel = floor;
  config.cost = parse_cost_kind(flags.cost);
  config.eps = flags.eps;
  config.lambda = flags.lambda;
  config.seed = flags.seed;
  config.optim = optim_from(flags);

  const TrainResult result = run_train(config);
  write_matrix_csv(flags.out / "basis.csv", result.basis.w);
  write_matrix_csv(flags.out / "basis_image.csv", result.image_filters);
  write_matrix_csv(flags.out / "whitening.csv", result.whitening.matrix);
  write_trace_csv(flags.out / "trace.csv", result.trace);

  const AngleStats stats = angle_stats(result.basis);
  json summary{{"cost", flags.cost},
               {"lambda", flags.lambda},
               {"k", result.basis.rows()},
               {"n", result.basis.dims()},
               {"patch_size", patch_size},
               {"num_patches", num_patches},
               {"seed", flags.seed},
               {"reconstruction_error", result.reconstruction_error},
               {"angles", stats_json(stats)},
               {"iterations", result.trace.iterations()},
               {"termination",
                std::string(termination_name(result.trace.reason))}};
  atomic_write_text(flags.out / "summary.json", summary.dump(2) + "\n");
  std::cout << "train: k=" << result.basis.rows()
            << " n=" << result.basis.dims() << ", min pairwise angle "
            << stats.min << " deg, reconstruction error "
            << result.reconstruction_error << " ("
            << termination_name(result.trace.reason) << ")\n";
  return 0;
}

// ----------------------------------------------------------------- recover

int cmd_recover(int n, int m, double amari_tol, const CommonFlags& flags) {
  RecoverConfig config;
  config.n = n;
  config.m = m;
  config.seed = flags.seed;
  config.cost = parse_cost_kind(flags.cost);
  config.eps = flags.eps;
  config.lambda = flags.lambda;
  config.optim = optim_from(flags);

  const RecoverResult result = run_recover(config);
  json summary{{"n", n},
               {"m", m},
               {"seed", flags.seed},
               {"lambda", flags.lambda},
               {"amari_index", result.amari},
               {"iterations", result.trace.iterations()}};
  atomic_write_text(flags.out / "recover.json", summary.dump(2) + "\n");
  check(result.amari < amari_tol, "amari index " + format(result.amari) +
                                      " (tol " + format(amari_tol) + ")");
  std::cout << "recover: amari index " << result.amari << "\n";
  return fail_count == 0 ? 0 : 1;
}

// ------------------------------------------------------------------ gabors

int cmd_gabors(const std::string& basis_path, int patch_size, int threads,
               const CommonFlags& flags) {
  const Matrix w = read_matrix_csv(basis_path);
  if (patch_size == 0) {
    patch_size = static_cast<int>(
        std::lround(std::sqrt(static_cast<double>(w.cols()))));
  }
  if (patch_size * patch_size != w.cols())
    throw std::invalid_argument("basis columns are not a square patch");

  const int cap = env_thread_cap();
  if (cap > 0) threads = std::min(threads, cap);
  const auto fits = fit_gabor_basis(Basis(w), patch_size, {}, threads);

  std::ostringstream csv;
  csv << "index,mse,center_x,center_y,phi_deg,phase_deg,freq,var_par,"
         "var_perp\n";
  int good = 0;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const GaborParams& p = fits[i].params;
    csv << i << "," << format(fits[i].mse) << "," << format(p.center_x) << ","
        << format(p.center_y) << ","
        << format(p.rotation * 180.0 / std::numbers::pi) << ","
        << format(p.phase * 180.0 / std::numbers::pi) << ","
        << format(p.frequency) << "," << format(p.var_par) << ","
        << format(p.var_perp) << "\n";
    if (fits[i].mse < 0.5) ++good;
  }
  atomic_write_text(flags.out / "gabors.csv", csv.str());
  std::cout << "gabors: " << good << "/" << fits.size()
            << " elements fit with normalized mse < 0.5\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"overcomplete ICA with pluggable degeneracy control"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* check2d = app.add_subcommand(
      "check2d", "verify the closed-form 2d results on a theta2 grid");
  int grid_points = 720;
  bool inject_error = false;
  check2d->add_option("--grid", grid_points, "number of theta2 grid points");
  check2d->add_flag("--inject-error", inject_error,
                    "perturb the closed form (negative control)");
  add_common(check2d, flags);

  auto* gradcheck = app.add_subcommand(
      "gradcheck", "finite-difference oracle for all cost gradients");
  int gc_trials = 50, gc_kmax = 32, gc_nmax = 16;
  gradcheck->add_option("--trials", gc_trials, "random bases per cost");
  gradcheck->add_option("--kmax", gc_kmax, "max rows");
  gradcheck->add_option("--nmax", gc_nmax, "max dims");
  add_common(gradcheck, flags);

  auto* invariance = app.add_subcommand(
      "invariance",
      "L2 invariance under rotations of one orthonormal subset");
  int inv_n = 0, inv_tiles = 0, inv_trials = 100;
  invariance->add_option("--n", inv_n, "dimension (0 = sweep 2,4,8)");
  invariance->add_option("--tiles", inv_tiles,
                         "overcompleteness (0 = sweep 2,3)");
  invariance->add_option("--trials", inv_trials, "rotations per config");
  add_common(invariance, flags);

  auto* critical = app.add_subcommand(
      "critical", "log-log slope of |delta C| under single-row rotations");
  int crit_n = 4, crit_tiles = 2, crit_trials = 20;
  critical->add_option("--n", crit_n, "dimension");
  critical->add_option("--tiles", crit_tiles, "overcompleteness");
  critical->add_option("--trials", crit_trials, "random generators");
  add_common(critical, flags);

  auto* gradprofile = app.add_subcommand(
      "gradprofile", "two-row cost gradients near cos = 0 and cos = 1");
  int gp_samples = 60;
  gradprofile->add_option("--samples", gp_samples, "grid points per region");
  add_common(gradprofile, flags);

  auto* distribution = app.add_subcommand(
      "distribution",
      "optimize a pure degeneracy mechanism, emit angle stats");
  std::string dist_mechanism = "l4", dist_init = "random";
  int dist_k = 128, dist_n = 64, dist_tiles = 2, dist_quasi_iters = 500;
  double dist_sigma = 0.05;
  distribution->add_option("--mechanism", dist_mechanism,
                           "l2|l4|coulomb|rand_prior|quasi_orth");
  distribution->add_option("--init", dist_init, "random|pathological")
      ->check(CLI::IsMember({"random", "pathological"}));
  distribution->add_option("--k", dist_k, "rows for random init");
  distribution->add_option("--n", dist_n, "dimension");
  distribution->add_option("--tiles", dist_tiles,
                           "overcompleteness for pathological init");
  distribution->add_option("--sigma", dist_sigma,
                           "noise norm per row for pathological init");
  distribution->add_option("--quasi-iters", dist_quasi_iters,
                           "iterations for quasi_orth");
  add_common(distribution, flags);

  auto* train = app.add_subcommand(
      "train", "overcomplete ICA on whitened image patches");
  std::string train_image, train_whiten = "zca";
  int train_texture = 256, train_patch = 8, train_count = 5000, train_k = 0;
  double train_floor = 1e-4;
  train->add_option("--image", train_image,
                    "PGM image (bundled synthetic texture if omitted)");
  train->add_option("--texture-size", train_texture,
                    "synthetic texture side length");
  train->add_option("--patch-size", train_patch, "patch side length");
  train->add_option("--num-patches", train_count, "training patches");
  train->add_option("--k", train_k, "basis rows (0 = 4x overcomplete)");
  train->add_option("--whiten", train_whiten, "pca|zca")
      ->check(CLI::IsMember({"pca", "zca"}));
  train->add_option("--floor", train_floor,
                    "eigenvalue floor relative to the largest");
  add_common(train, flags);

  auto* recover = app.add_subcommand(
      "recover", "complete ICA recovery of synthetic Laplacian sources");
  int rec_n = 8, rec_m = 50000;
  double rec_tol = 0.1;
  recover->add_option("--n", rec_n, "sources");
  recover->add_option("--m", rec_m, "samples");
  recover->add_option("--amari-tol", rec_tol, "pass threshold");
  add_common(recover, flags);

  auto* gabors = app.add_subcommand(
      "gabors", "fit Gabor parameters to every row of a basis CSV");
  std::string gb_basis;
  int gb_patch = 0, gb_threads = 1;
  gabors->add_option("--basis", gb_basis, "basis CSV path")->required();
  gabors->add_option("--patch-size", gb_patch, "patch side (0 = sqrt(n))");
  gabors->add_option("--threads", gb_threads,
                     "parallel fits (capped by OICA_THREADS)");
  add_common(gabors, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(flags.out);
    if (check2d->parsed())
      return cmd_check2d(grid_points, inject_error, flags);
    if (gradcheck->parsed())
      return cmd_gradcheck(gc_trials, gc_kmax, gc_nmax, flags);
    if (invariance->parsed())
      return cmd_invariance(inv_n, inv_tiles, inv_trials, flags);
    if (critical->parsed())
      return cmd_critical(crit_n, crit_tiles, crit_trials, flags);
    if (gradprofile->parsed()) return cmd_gradprofile(gp_samples, flags);
    if (distribution->parsed())
      return cmd_distribution(dist_mechanism, dist_init, dist_k, dist_n,
                              dist_tiles, dist_sigma, dist_quasi_iters, flags);
    if (train->parsed())
      return cmd_train(train_image, train_texture, train_patch, train_count,
                       train_k, train_whiten, train_floor, flags);
    if (recover->parsed()) {
      CommonFlags rec_flags = flags;
      if (!recover->get_option("--cost")->count()) rec_flags.cost = "l2";
      if (!recover->get_option("--max-iters")->count())
        rec_flags.max_iters = 300;
      return cmd_recover(rec_n, rec_m, rec_tol, rec_flags);
    }
    if (gabors->parsed())
      return cmd_gabors(gb_basis, gb_patch, gb_threads, flags);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
  return 0;
}
