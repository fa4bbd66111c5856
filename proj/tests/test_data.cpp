#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "oica/data.hpp"
#include "oica/highdim.hpp"

using namespace oica;

TEST_CASE("patches from a constant image are constant columns") {
  Image image;
  image.pix = Matrix::Constant(16, 16, 0.25);
  const DataMatrix patches = extract_patches(image, 4, 10, 1);
  CHECK(patches.rows() == 16);
  CHECK(patches.cols() == 10);
  CHECK((patches.array() - 0.25).abs().maxCoeff() == 0.0);
}

TEST_CASE("a patch the size of the image is the image") {
  Image image;
  image.pix = Matrix::Random(8, 8);
  const DataMatrix patches = extract_patches(image, 8, 3, 7);
  for (int p = 0; p < 3; ++p) {
    int idx = 0;
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c)
        CHECK(patches(idx++, p) == image.pix(r, c));
  }
}

TEST_CASE("patch extraction is deterministic in the seed") {
  const Image image = synth_texture(64, 5);
  const DataMatrix a = extract_patches(image, 8, 50, 99);
  const DataMatrix b = extract_patches(image, 8, 50, 99);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("too-small images are rejected") {
  Image image;
  image.pix = Matrix::Zero(4, 4);
  CHECK_THROWS_AS(extract_patches(image, 8, 1, 0), ImageTooSmallError);
}

TEST_CASE("zca whitening of diagonal covariance has the closed form") {
  // four points with empirical covariance exactly diag(4, 1)
  Matrix x(2, 4);
  x << 2, 2, -2, -2, 1, -1, -1, 1;
  const WhiteningTransform t = fit_whitening(x, WhitenKind::ZCA, 0.0);
  Matrix expected(2, 2);
  expected << 0.5, 0, 0, 1;
  CHECK((t.matrix - expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("refitting on exactly-white data gives the identity") {
  const SynthSources s = synth_sources(5, 400, 3);
  const WhiteningTransform first = fit_whitening(s.mixed, WhitenKind::ZCA, 0.0);
  const DataMatrix white = first.apply(s.mixed);
  const WhiteningTransform second = fit_whitening(white, WhitenKind::ZCA, 0.0);
  CHECK((second.matrix - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() <=
        1e-6);
}

TEST_CASE("refit with the default floor stays near the identity") {
  const SynthSources s = synth_sources(6, 2000, 4);
  const WhiteningTransform first = fit_whitening(s.mixed, WhitenKind::ZCA);
  const DataMatrix white = first.apply(s.mixed);
  const WhiteningTransform second = fit_whitening(white, WhitenKind::ZCA);
  const double deviation =
      (second.matrix - Matrix::Identity(6, 6)).norm() / std::sqrt(6.0);
  CHECK(deviation <= 0.05);
}

TEST_CASE("whitened covariance is near the identity for both kinds") {
  const SynthSources s = synth_sources(4, 5000, 8);
  for (WhitenKind kind : {WhitenKind::PCA, WhitenKind::ZCA}) {
    const WhiteningTransform t = fit_whitening(s.mixed, kind, 0.0);
    const DataMatrix white = t.apply(s.mixed);
    const Matrix cov = (white * white.transpose()) / 5000.0;
    CHECK((cov - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("rank-deficient data is reported") {
  // 6-dimensional samples confined to a 2-dimensional subspace
  Matrix coords = Matrix::Random(2, 100);
  Matrix lift = Matrix::Random(6, 2);
  const DataMatrix x = lift * coords;
  CHECK_THROWS_AS(fit_whitening(x, WhitenKind::ZCA, 1e-4), RankDeficientError);
  CHECK_THROWS_AS(fit_whitening(Matrix::Random(8, 4), WhitenKind::ZCA),
                  RankDeficientError);  // fewer samples than dimensions
  CHECK_THROWS_AS(fit_whitening(Matrix::Random(8, 8), WhitenKind::ZCA),
                  RankDeficientError);  // m = n: centering leaves rank n - 1
}

TEST_CASE("whitened texture patches have near-identity covariance") {
  const Image image = synth_texture(128, 3);
  const DataMatrix patches = extract_patches(image, 8, 3500, 4);  // m >= 50 n
  const WhiteningTransform t = fit_whitening(patches, WhitenKind::ZCA);
  const DataMatrix white = t.apply(patches);
  const Matrix cov = (white * white.transpose()) / 3500.0;
  double worst_off = 0.0;
  for (int r = 0; r < 64; ++r)
    for (int c = 0; c < 64; ++c)
      if (r != c) worst_off = std::max(worst_off, std::abs(cov(r, c)));
  CHECK(worst_off < 0.05);
}

TEST_CASE("synthetic sources satisfy the generative identity") {
  const SynthSources s = synth_sources(6, 500, 11);
  CHECK((s.mixed - s.mixing * s.sources).cwiseAbs().maxCoeff() == 0.0);
  Eigen::JacobiSVD<Matrix> svd(s.mixing);
  const double cond =
      svd.singularValues()(0) / svd.singularValues()(5);
  CHECK(cond < 20.0);
  const SynthSources again = synth_sources(6, 500, 11);
  CHECK((s.mixed - again.mixed).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("amari index is zero exactly for scaled permutations") {
  Matrix p(3, 3);
  p << 0, 2, 0, 0, 0, -0.5, 7, 0, 0;
  CHECK(amari_index(p, Matrix::Identity(3, 3)) == 0.0);
}

TEST_CASE("amari index of the all-ones product is maximal") {
  Matrix w = Matrix::Ones(2, 2);
  CHECK(amari_index(w, Matrix::Identity(2, 2)) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("amari index ignores row scaling") {
  const SynthSources s = synth_sources(4, 50, 2);
  Matrix w = s.mixing.inverse();
  Matrix scaled = w;
  scaled.row(1) *= 13.0;
  scaled.row(3) *= -0.03;
  CHECK(amari_index(w, s.mixing) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(amari_index(scaled, s.mixing) ==
        doctest::Approx(amari_index(w, s.mixing)).epsilon(1e-9));
}

TEST_CASE("singular products are rejected") {
  Matrix w = Matrix::Zero(3, 3);
  w(0, 0) = 1.0;
  CHECK_THROWS_AS(amari_index(w, Matrix::Identity(3, 3)), SingularError);
}

TEST_CASE("pgm loading handles plain and raw flavors") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto plain_path = dir / "oica_plain.pgm";
  {
    std::ofstream out(plain_path);
    out << "P2\n# a comment\n3 2\n255\n0 128 255\n64 32 16\n";
  }
  const Image plain = load_pgm(plain_path);
  CHECK(plain.width() == 3);
  CHECK(plain.height() == 2);
  CHECK(plain.pix(0, 1) == doctest::Approx(128.0 / 255.0));
  CHECK(plain.pix(1, 2) == doctest::Approx(16.0 / 255.0));

  const auto raw_path = dir / "oica_raw.pgm";
  {
    std::ofstream out(raw_path, std::ios::binary);
    out << "P5\n2 2\n255\n";
    const unsigned char bytes[4] = {0, 255, 10, 200};
    out.write(reinterpret_cast<const char*>(bytes), 4);
  }
  const Image raw = load_pgm(raw_path);
  CHECK(raw.pix(0, 0) == 0.0);
  CHECK(raw.pix(0, 1) == 1.0);
  CHECK(raw.pix(1, 1) == doctest::Approx(200.0 / 255.0));
  std::filesystem::remove(plain_path);
  std::filesystem::remove(raw_path);
}

TEST_CASE("synthetic texture is deterministic and in range") {
  const Image a = synth_texture(64, 9);
  const Image b = synth_texture(64, 9);
  CHECK((a.pix - b.pix).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.pix.minCoeff() >= 0.0);
  CHECK(a.pix.maxCoeff() <= 1.0);
  CHECK(a.pix.maxCoeff() - a.pix.minCoeff() > 0.5);
}
