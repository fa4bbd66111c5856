#pragma once

#include <cstdint>
#include <filesystem>

#include "oica/basis.hpp"

namespace oica {

// n x m matrix whose columns are samples.
using DataMatrix = Matrix;

struct RankDeficientError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ImageTooSmallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grayscale image with values in [0, 1]; pix(row, col).
struct Image {
  Matrix pix;
  int width() const { return static_cast<int>(pix.cols()); }
  int height() const { return static_cast<int>(pix.rows()); }
};

// Plain (P2) or raw (P5) PGM, 8 or 16 bit.
Image load_pgm(const std::filesystem::path& path);

// Sum of random-orientation sinusoids with 1/f amplitudes; lets the full
// training pipeline run without any external dataset.
Image synth_texture(int size, std::uint64_t seed);

// `count` square patches at uniform random positions, flattened row-major
// into columns of a patch_size^2 x count matrix.
DataMatrix extract_patches(const Image& image, int patch_size, int count,
                           std::uint64_t seed);

enum class WhitenKind { PCA, ZCA };

WhitenKind parse_whiten_kind(std::string_view name);  // "pca" | "zca"

struct WhiteningTransform {
  Vector mean;
  Matrix matrix;
  WhitenKind kind = WhitenKind::ZCA;
  double floor_rel = 0.0;

  DataMatrix apply(const DataMatrix& x) const {
    return matrix * (x.colwise() - mean);
  }
};

// Centers, eigendecomposes the covariance (normalized by m), and scales
// by 1/sqrt(eig + floor) where floor = floor_rel * max eigenvalue; ZCA
// rotates back to the input coordinates. Throws RankDeficientError when
// more than n/2 eigenvalues fall below the floor (or m < n).
WhiteningTransform fit_whitening(const DataMatrix& x, WhitenKind kind,
                                 double floor_rel = 1e-4);

struct SynthSources {
  Matrix sources;  // n x m, i.i.d. Laplacian(0,1)
  Matrix mixing;   // n x n, condition number < 20
  Matrix mixed;    // mixing * sources
};

SynthSources synth_sources(int n, int m, std::uint64_t seed);

// Normalized Amari permutation error of P = W * A; zero iff P is a scaled
// permutation, at most 1. Throws SingularError if P is not invertible.
double amari_index(const Matrix& w, const Matrix& a);

}  // namespace oica
