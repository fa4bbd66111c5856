#include "oica/data.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

namespace oica {

namespace {

int next_pgm_token(std::istream& in) {
  // skips whitespace and '#' comments per the netpbm grammar
  for (;;) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int value = 0;
  if (!(in >> value)) throw std::runtime_error("truncated PGM header");
  return value;
}

}  // namespace

Image load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char p = 0, kind = 0;
  in >> p >> kind;
  if (p != 'P' || (kind != '2' && kind != '5'))
    throw std::runtime_error(path.string() + " is not a P2/P5 PGM");
  const int width = next_pgm_token(in);
  const int height = next_pgm_token(in);
  const int maxval = next_pgm_token(in);
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535)
    throw std::runtime_error("bad PGM dimensions in " + path.string());

  Image image;
  image.pix.resize(height, width);
  if (kind == '2') {
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c)
        image.pix(r, c) = static_cast<double>(next_pgm_token(in)) / maxval;
  } else {
    in.get();  // single whitespace byte after maxval
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(static_cast<std::size_t>(width) * height *
                                   bytes);
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size()))
      throw std::runtime_error("truncated PGM payload in " + path.string());
    std::size_t idx = 0;
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        int value = raw[idx++];
        if (bytes == 2) value = (value << 8) | raw[idx++];  // big-endian
        image.pix(r, c) = static_cast<double>(value) / maxval;
      }
    }
  }
  return image;
}

Image synth_texture(int size, std::uint64_t seed) {
  // Sparse field of localized oriented wavelets plus broadband noise.
  // Patches see a few oriented features at a time, the structure a
  // sparsity prior rewards; the noise keeps the patch covariance clear of
  // the whitening floor.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;

  Image image;
  image.pix = Matrix::Zero(size, size);
  const int wavelets = size * size / 48;
  for (int w = 0; w < wavelets; ++w) {
    const double cx = size * unit(rng);
    const double cy = size * unit(rng);
    const double orient = std::numbers::pi * unit(rng);
    const double freq = 0.1 * std::pow(4.0, unit(rng));  // 0.1 .. 0.4 cy/px
    const double sig_par = 1.0 + 2.0 * unit(rng);
    const double sig_perp = 1.0 + 2.0 * unit(rng);
    const double phase = 2.0 * std::numbers::pi * unit(rng);
    const double amp = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + unit(rng));
    const double cos_o = std::cos(orient);
    const double sin_o = std::sin(orient);
    const int radius =
        static_cast<int>(std::ceil(3.0 * std::max(sig_par, sig_perp)));
    const int r0 = std::max(0, static_cast<int>(cy) - radius);
    const int r1 = std::min(size - 1, static_cast<int>(cy) + radius);
    const int c0 = std::max(0, static_cast<int>(cx) - radius);
    const int c1 = std::min(size - 1, static_cast<int>(cx) + radius);
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        const double dx = c - cx;
        const double dy = r - cy;
        const double u = dx * cos_o + dy * sin_o;
        const double v = -dx * sin_o + dy * cos_o;
        image.pix(r, c) +=
            amp *
            std::exp(-u * u / (2.0 * sig_par * sig_par) -
                     v * v / (2.0 * sig_perp * sig_perp)) *
            std::cos(2.0 * std::numbers::pi * freq * u + phase);
      }
    }
  }
  const double rms = std::sqrt(image.pix.array().square().mean());
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c)
      image.pix(r, c) += 0.12 * rms * normal(rng);
  const double lo = image.pix.minCoeff();
  const double hi = image.pix.maxCoeff();
  image.pix = (image.pix.array() - lo) / std::max(hi - lo, 1e-12);
  return image;
}

DataMatrix extract_patches(const Image& image, int patch_size, int count,
                           std::uint64_t seed) {
  if (image.width() < patch_size || image.height() < patch_size)
    throw ImageTooSmallError("image " + std::to_string(image.width()) + "x" +
                             std::to_string(image.height()) +
                             " smaller than patch size " +
                             std::to_string(patch_size));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> row_at(0, image.height() - patch_size);
  std::uniform_int_distribution<int> col_at(0, image.width() - patch_size);
  DataMatrix out(patch_size * patch_size, count);
  for (int p = 0; p < count; ++p) {
    const int r0 = row_at(rng);
    const int c0 = col_at(rng);
    int idx = 0;
    for (int r = 0; r < patch_size; ++r)
      for (int c = 0; c < patch_size; ++c)
        out(idx++, p) = image.pix(r0 + r, c0 + c);
  }
  return out;
}

WhitenKind parse_whiten_kind(std::string_view name) {
  if (name == "pca") return WhitenKind::PCA;
  if (name == "zca") return WhitenKind::ZCA;
  throw std::invalid_argument("unknown whitening kind '" + std::string(name) +
                              "', expected pca|zca");
}

WhiteningTransform fit_whitening(const DataMatrix& x, WhitenKind kind,
                                 double floor_rel) {
  const Eigen::Index n = x.rows();
  const Eigen::Index m = x.cols();
  // centering consumes one sample, so m = n data is already rank deficient
  if (m <= n)
    throw RankDeficientError("need more than n samples, got " +
                             std::to_string(m) + " for n = " +
                             std::to_string(n));
  WhiteningTransform transform;
  transform.kind = kind;
  transform.floor_rel = floor_rel;
  transform.mean = x.rowwise().mean();
  const DataMatrix centered = x.colwise() - transform.mean;
  const Matrix cov =
      (centered * centered.transpose()) / static_cast<double>(m);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  const Vector eigenvalues = eig.eigenvalues();
  const double floor_abs = floor_rel * eigenvalues.maxCoeff();
  Eigen::Index below = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (eigenvalues[i] < floor_abs) ++below;
  if (2 * below > n)
    throw RankDeficientError(std::to_string(below) + " of " +
                             std::to_string(n) + " eigenvalues below floor");
  const Vector scale =
      (eigenvalues.array() + floor_abs).cwiseMax(1e-300).rsqrt();
  if (kind == WhitenKind::PCA) {
    transform.matrix = scale.asDiagonal() * eig.eigenvectors().transpose();
  } else {
    transform.matrix = eig.eigenvectors() * scale.asDiagonal() *
                       eig.eigenvectors().transpose();
  }
  return transform;
}

SynthSources synth_sources(int n, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SynthSources out;
  out.sources.resize(n, m);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < m; ++c) {
      // inverse-CDF Laplacian(0,1)
      const double u = unit(rng) - 0.5;
      out.sources(r, c) =
          (u < 0.0 ? 1.0 : -1.0) * std::log1p(-2.0 * std::abs(u));
    }
  }
  // controlled condition number: singular values on [1, 3]
  std::normal_distribution<double> normal;
  const auto haar = [&](int dim) {
    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) g(r, c) = normal(rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i)
      if (r(i, i) < 0.0) q.col(i) = -q.col(i);
    return q;
  };
  Vector singular(n);
  for (int i = 0; i < n; ++i)
    singular[i] = n == 1 ? 1.0 : 1.0 + 2.0 * i / (n - 1);
  const Matrix left = haar(n);
  const Matrix right = haar(n);
  out.mixing = left * singular.asDiagonal() * right.transpose();
  out.mixed = out.mixing * out.sources;
  return out;
}

double amari_index(const Matrix& w, const Matrix& a) {
  if (w.rows() != w.cols() || a.rows() != a.cols() || w.rows() != a.rows())
    throw std::invalid_argument("amari_index expects square matrices");
  const Matrix p = (w * a).cwiseAbs();
  const Eigen::Index n = p.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    // the index divides by these maxima; an empty row or column means the
    // product lost a source direction entirely
    if (p.row(i).maxCoeff() <= 0.0 || p.col(i).maxCoeff() <= 0.0)
      throw SingularError("product matrix has a zero row or column");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    total += p.row(i).sum() / p.row(i).maxCoeff() - 1.0;
    total += p.col(i).sum() / p.col(i).maxCoeff() - 1.0;
  }
  return total / (2.0 * n * (n - 1));
}

}  // namespace oica
