#pragma once

#include <vector>

#include "oica/basis.hpp"

namespace oica {

struct ConstantPatchError : std::runtime_error {
  ConstantPatchError() : std::runtime_error("patch is constant") {}
};

// All fit candidates scored worse than predicting zero; the patch is not
// usefully Gabor-shaped.
struct FitDivergedError : std::runtime_error {
  FitDivergedError() : std::runtime_error("no Gabor candidate beat the zero baseline") {}
};

// Oriented sinusoid under a Gaussian envelope. center is in pixel
// coordinates (x = column, y = row); u runs along the oscillation axis,
// so var_par is the envelope variance parallel to the oscillations.
struct GaborParams {
  double center_x = 0.0;
  double center_y = 0.0;
  double rotation = 0.0;   // radians
  double phase = 0.0;      // radians
  double frequency = 0.1;  // cycles per pixel
  double var_par = 4.0;    // pixels^2
  double var_perp = 4.0;   // pixels^2
  double amplitude = 1.0;
};

// value(x, y) = A exp(-u^2/(2 var_par) - v^2/(2 var_perp))
//                 * cos(2 pi f u + phase),
// with (u, v) the offset from center rotated by `rotation`.
Matrix gabor_kernel(const GaborParams& params, int size);

// Separable Gaussian convolution with reflect padding.
Matrix gaussian_blur(const Matrix& image, double sigma);

struct GaborFitConfig {
  int widths = 8;          // stage 1: initial blur widths, log-spaced
  int rotations = 12;      // stage 2 grid over [0, pi)
  int frequencies = 8;     // stage 2 grid, log-spaced in [1/size, 0.5]
  int top_candidates = 5;  // stage 3 joint refinements
  int refine_iters = 60;
};

struct GaborFit {
  GaborParams params;
  // squared error between the unit-normalized patch and unit-normalized
  // kernel; 1.0 is the zero-prediction baseline.
  double mse = 0.0;
};

// Three stages: envelope center from blurred |patch| centroids at several
// widths; a rotation x frequency grid refined over (rotation, phase,
// frequency); joint re-optimization of center, variances, and phase for
// the best candidates.
GaborFit fit_gabor(const Matrix& patch, const GaborFitConfig& config = {});

// Fits every basis row reshaped row-major to size x size patches.
// Runs up to `threads` fits concurrently; output order follows row order.
std::vector<GaborFit> fit_gabor_basis(const Basis& basis, int patch_size,
                                      const GaborFitConfig& config = {},
                                      int threads = 1);

}  // namespace oica
