#include "oica/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "oica/optimizer.hpp"

namespace oica {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int reflect_index(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - i - 1;
  }
  return i;
}

}  // namespace

Matrix gabor_kernel(const GaborParams& p, int size) {
  Matrix out(size, size);
  const double cos_rot = std::cos(p.rotation);
  const double sin_rot = std::sin(p.rotation);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const double dx = c - p.center_x;
      const double dy = r - p.center_y;
      const double u = dx * cos_rot + dy * sin_rot;
      const double v = -dx * sin_rot + dy * cos_rot;
      out(r, c) = p.amplitude *
                  std::exp(-u * u / (2.0 * p.var_par) -
                           v * v / (2.0 * p.var_perp)) *
                  std::cos(kTwoPi * p.frequency * u + p.phase);
    }
  }
  return out;
}

Matrix gaussian_blur(const Matrix& image, double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  Vector weights(2 * radius + 1);
  for (int i = -radius; i <= radius; ++i)
    weights[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
  weights /= weights.sum();

  const int rows = static_cast<int>(image.rows());
  const int cols = static_cast<int>(image.cols());
  Matrix horizontal(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += weights[i + radius] * image(r, reflect_index(c + i, cols));
      horizontal(r, c) = acc;
    }
  }
  Matrix out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += weights[i + radius] * horizontal(reflect_index(r + i, rows), c);
      out(r, c) = acc;
    }
  }
  return out;
}

namespace {

struct EnvelopeGuess {
  double center_x = 0.0;
  double center_y = 0.0;
  double m_xx = 1.0;
  double m_xy = 0.0;
  double m_yy = 1.0;

  // envelope variance along direction (cos a, sin a)
  double variance_along(double angle) const {
    const double ca = std::cos(angle);
    const double sa = std::sin(angle);
    return ca * ca * m_xx + 2.0 * ca * sa * m_xy + sa * sa * m_yy;
  }
};

EnvelopeGuess envelope_from_blur(const Matrix& patch, double blur_sigma) {
  const Matrix blurred = gaussian_blur(patch.cwiseAbs(), blur_sigma);
  const double total = blurred.sum();
  EnvelopeGuess guess;
  const int size = static_cast<int>(patch.rows());
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      guess.center_x += blurred(r, c) * c;
      guess.center_y += blurred(r, c) * r;
    }
  }
  guess.center_x /= total;
  guess.center_y /= total;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const double dx = c - guess.center_x;
      const double dy = r - guess.center_y;
      guess.m_xx += blurred(r, c) * dx * dx / total;
      guess.m_xy += blurred(r, c) * dx * dy / total;
      guess.m_yy += blurred(r, c) * dy * dy / total;
    }
  }
  // the blur inflates the second moments by its own variance
  guess.m_xx = std::max(guess.m_xx - blur_sigma * blur_sigma, 0.25);
  guess.m_yy = std::max(guess.m_yy - blur_sigma * blur_sigma, 0.25);
  return guess;
}

// squared distance between the unit patch and the best unit-normalized
// kernel of the given shape, with phase and amplitude solved linearly
// from the two quadratures.
double quadrature_mse(const Matrix& unit_patch, GaborParams p, double* phase) {
  p.amplitude = 1.0;
  p.phase = 0.0;
  const Matrix quad_cos = gabor_kernel(p, static_cast<int>(unit_patch.rows()));
  p.phase = -std::numbers::pi / 2.0;
  const Matrix quad_sin = gabor_kernel(p, static_cast<int>(unit_patch.rows()));
  const double cc = quad_cos.squaredNorm();
  const double ss = quad_sin.squaredNorm();
  const double cs = quad_cos.cwiseProduct(quad_sin).sum();
  const double cp = quad_cos.cwiseProduct(unit_patch).sum();
  const double sp = quad_sin.cwiseProduct(unit_patch).sum();
  const double det = cc * ss - cs * cs;
  double a = 0.0, b = 0.0;
  if (std::abs(det) > 1e-12 * std::max(cc * ss, 1e-300)) {
    a = (ss * cp - cs * sp) / det;
    b = (cc * sp - cs * cp) / det;
  } else if (cc > 1e-300) {
    a = cp / cc;
  }
  const double fit_norm2 = a * a * cc + 2.0 * a * b * cs + b * b * ss;
  if (fit_norm2 <= 1e-300 || !std::isfinite(fit_norm2)) return 2.0;
  const double corr = (a * cp + b * sp) / std::sqrt(fit_norm2);
  if (phase) *phase = std::atan2(-b, a);
  return 2.0 - 2.0 * std::abs(corr);
}

double plain_mse(const Matrix& unit_patch, const GaborParams& p) {
  const Matrix kernel = gabor_kernel(p, static_cast<int>(unit_patch.rows()));
  const double norm = kernel.norm();
  if (norm <= 1e-300 || !std::isfinite(norm)) return 2.0;
  return (unit_patch - kernel / norm).squaredNorm();
}

struct Candidate {
  GaborParams params;
  double mse = 2.0;
};

}  // namespace

GaborFit fit_gabor(const Matrix& patch, const GaborFitConfig& config) {
  const int size = static_cast<int>(patch.rows());
  const double norm = patch.norm();
  const double spread = patch.maxCoeff() - patch.minCoeff();
  if (norm <= 1e-12 || spread <= 1e-12 * std::max(1.0, patch.cwiseAbs().maxCoeff()))
    throw ConstantPatchError();
  const Matrix unit_patch = patch / norm;

  // stage 1: envelope centers and second moments at several blur widths
  std::vector<EnvelopeGuess> envelopes;
  const double width_lo = 0.5, width_hi = size / 2.0;
  for (int i = 0; i < config.widths; ++i) {
    const double t = config.widths == 1 ? 0.0 : double(i) / (config.widths - 1);
    envelopes.push_back(
        envelope_from_blur(patch, width_lo * std::pow(width_hi / width_lo, t)));
  }

  // stage 2: rotation x frequency grid, scored with the phase solved in
  // closed form, then local optimization of (rotation, phase, frequency)
  // for the most promising cells
  std::vector<Candidate> grid;
  for (const EnvelopeGuess& env : envelopes) {
    for (int ri = 0; ri < config.rotations; ++ri) {
      const double rotation = std::numbers::pi * ri / config.rotations;
      const double var_par =
          std::clamp(env.variance_along(rotation), 0.25, 4.0 * size * size);
      const double var_perp = std::clamp(
          env.variance_along(rotation + std::numbers::pi / 2.0), 0.25,
          4.0 * size * size);
      for (int fi = 0; fi < config.frequencies; ++fi) {
        const double f_lo = 1.0 / size, f_hi = 0.5;
        const double frequency =
            f_lo * std::pow(f_hi / f_lo,
                            config.frequencies == 1
                                ? 0.0
                                : double(fi) / (config.frequencies - 1));
        Candidate cand;
        cand.params.center_x = env.center_x;
        cand.params.center_y = env.center_y;
        cand.params.rotation = rotation;
        cand.params.frequency = frequency;
        cand.params.var_par = var_par;
        cand.params.var_perp = var_perp;
        cand.mse = quadrature_mse(unit_patch, cand.params, &cand.params.phase);
        grid.push_back(cand);
      }
    }
  }
  std::sort(grid.begin(), grid.end(),
            [](const Candidate& a, const Candidate& b) { return a.mse < b.mse; });

  OptimOptions refine_opts;
  refine_opts.max_iters = config.refine_iters;
  refine_opts.grad_tol = 1e-7;

  const auto decode_ok = [size](double log_var, double frequency) {
    return std::isfinite(log_var) && std::exp(log_var) >= 0.04 &&
           std::exp(log_var) <= 16.0 * size * size && frequency > 0.005 &&
           frequency < 0.75;
  };

  const auto refine_wave = [&](Candidate cand) {
    // stage-2 parameters: rotation, phase, frequency
    const GaborParams base = cand.params;
    const auto objective = [&](const Vector& x) {
      GaborParams p = base;
      p.rotation = x[0];
      p.phase = x[1];
      p.frequency = std::exp(x[2]);
      if (!decode_ok(std::log(p.var_par), p.frequency)) return 2.0;
      return plain_mse(unit_patch, p);
    };
    Vector x0(3);
    x0 << base.rotation, base.phase, std::log(base.frequency);
    const Vector x = minimize_unconstrained(objective, x0, refine_opts, 1e-5);
    cand.params.rotation = x[0];
    cand.params.phase = x[1];
    cand.params.frequency = std::exp(x[2]);
    cand.mse = plain_mse(unit_patch, cand.params);
    return cand;
  };

  const auto refine_envelope = [&](Candidate cand) {
    // stage-3 parameters: center, widths, phase
    const GaborParams base = cand.params;
    const auto objective = [&](const Vector& x) {
      GaborParams p = base;
      p.center_x = x[0];
      p.center_y = x[1];
      p.var_par = std::exp(x[2]);
      p.var_perp = std::exp(x[3]);
      p.phase = x[4];
      if (!decode_ok(x[2], p.frequency) || !decode_ok(x[3], p.frequency))
        return 2.0;
      if (p.center_x < -size || p.center_x > 2.0 * size ||
          p.center_y < -size || p.center_y > 2.0 * size)
        return 2.0;
      return plain_mse(unit_patch, p);
    };
    Vector x0(5);
    x0 << base.center_x, base.center_y, std::log(base.var_par),
        std::log(base.var_perp), base.phase;
    const Vector x = minimize_unconstrained(objective, x0, refine_opts, 1e-5);
    cand.params.center_x = x[0];
    cand.params.center_y = x[1];
    cand.params.var_par = std::exp(x[2]);
    cand.params.var_perp = std::exp(x[3]);
    cand.params.phase = x[4];
    cand.mse = plain_mse(unit_patch, cand.params);
    return cand;
  };

  const int refine_count = std::min<int>(24, static_cast<int>(grid.size()));
  std::vector<Candidate> refined;
  for (int i = 0; i < refine_count; ++i)
    refined.push_back(refine_wave(grid[i]));
  std::sort(refined.begin(), refined.end(),
            [](const Candidate& a, const Candidate& b) { return a.mse < b.mse; });

  // stage 3: joint re-optimization of center, widths, and phase for the
  // best candidates
  const int joint_count =
      std::min<int>(config.top_candidates, static_cast<int>(refined.size()));
  Candidate best;
  for (int i = 0; i < joint_count; ++i) {
    const Candidate cand = refine_envelope(refined[i]);
    if (cand.mse < best.mse) best = cand;
  }
  // coordinate alternation zig-zags along the frequency/width valley, so
  // finish with one joint refinement of all parameters
  best = refine_envelope(refine_wave(best));
  {
    const auto objective = [&](const Vector& x) {
      GaborParams p;
      p.center_x = x[0];
      p.center_y = x[1];
      p.rotation = x[2];
      p.phase = x[3];
      p.frequency = std::exp(x[4]);
      p.var_par = std::exp(x[5]);
      p.var_perp = std::exp(x[6]);
      if (!decode_ok(x[5], p.frequency) || !decode_ok(x[6], p.frequency))
        return 2.0;
      if (p.center_x < -size || p.center_x > 2.0 * size ||
          p.center_y < -size || p.center_y > 2.0 * size)
        return 2.0;
      return plain_mse(unit_patch, p);
    };
    Vector x0(7);
    x0 << best.params.center_x, best.params.center_y, best.params.rotation,
        best.params.phase, std::log(best.params.frequency),
        std::log(best.params.var_par), std::log(best.params.var_perp);
    OptimOptions polish_opts = refine_opts;
    polish_opts.max_iters = 4 * config.refine_iters;
    const Vector x = minimize_unconstrained(objective, x0, polish_opts, 1e-5);
    Candidate polished;
    polished.params.center_x = x[0];
    polished.params.center_y = x[1];
    polished.params.rotation = x[2];
    polished.params.phase = x[3];
    polished.params.frequency = std::exp(x[4]);
    polished.params.var_par = std::exp(x[5]);
    polished.params.var_perp = std::exp(x[6]);
    polished.mse = plain_mse(unit_patch, polished.params);
    if (polished.mse < best.mse) best = polished;
  }

  if (!(best.mse < 1.0)) throw FitDivergedError();

  // canonical ranges and the amplitude of the unnormalized patch
  GaborParams& p = best.params;
  p.rotation = std::fmod(p.rotation, std::numbers::pi);
  if (p.rotation < 0.0) p.rotation += std::numbers::pi;
  p.amplitude = 1.0;
  const Matrix kernel = gabor_kernel(p, size);
  double scale = kernel.cwiseProduct(patch).sum() / kernel.squaredNorm();
  if (scale < 0.0) {
    scale = -scale;
    p.phase += std::numbers::pi;
  }
  p.phase = std::remainder(p.phase, kTwoPi);
  p.amplitude = scale;
  return {p, best.mse};
}

std::vector<GaborFit> fit_gabor_basis(const Basis& basis, int patch_size,
                                      const GaborFitConfig& config,
                                      int threads) {
  if (basis.dims() != patch_size * patch_size)
    throw std::invalid_argument("basis dims do not form a square patch");
  const int count = basis.rows();
  std::vector<GaborFit> fits(count);
  const auto worker = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      Matrix patch(patch_size, patch_size);
      for (int r = 0; r < patch_size; ++r)
        for (int c = 0; c < patch_size; ++c)
          patch(r, c) = basis.w(i, r * patch_size + c);
      try {
        fits[i] = fit_gabor(patch, config);
      } catch (const std::runtime_error&) {
        fits[i].mse = 2.0;  // marks non-Gabor elements
      }
    }
  };
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    worker(0, count);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(count, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }
  return fits;
}

}  // namespace oica
