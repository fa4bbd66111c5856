#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oica {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Thrown when a row that must be normalized has (near-)zero norm.
struct ZeroRowError : std::runtime_error {
  explicit ZeroRowError(int row)
      : std::runtime_error("row " + std::to_string(row) + " has zero norm") {}
};

// k basis elements stored as the rows of a k x n matrix. k may exceed n
// (overcomplete). Rows are kept unit-norm by project_rows_unit_norm.
struct Basis {
  Matrix w;

  Basis() = default;
  explicit Basis(Matrix m) : w(std::move(m)) {}

  int rows() const { return static_cast<int>(w.rows()); }
  int dims() const { return static_cast<int>(w.cols()); }
};

// Gram matrix W W^T. Diagonal entries are the squared row norms.
Matrix gram(const Basis& basis);

// Angle between two unit vectors in degrees, exact at 0 and 180.
double angle_deg(const Eigen::Ref<const Vector>& u,
                 const Eigen::Ref<const Vector>& v);

// Sorted angles in degrees, one per unordered row pair i < j.
std::vector<double> pairwise_angles(const Basis& basis);

double min_pairwise_angle(const Basis& basis);

// Each row divided by its Euclidean norm. Throws ZeroRowError if a row
// norm is at or below 1e-14.
Basis project_rows_unit_norm(const Basis& basis);

// Greedily keeps rows whose folded angle (theta vs 180 - theta) to every
// kept predecessor exceeds min_separation_deg. Used to hold singular
// costs away from their poles.
Basis thin_rows_by_angle(const Basis& basis, double min_separation_deg);

}  // namespace oica
