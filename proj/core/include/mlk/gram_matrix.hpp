#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace mlk {

using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Largest accepted ratio between the extreme eigenvalues of a Gram matrix.
inline constexpr double kMaxConditionNumber = 1e12;

// A symmetric positive-definite matrix Y defining the norm ‖x‖_Y = √(xᵀYx)
// on ℝ^g, together with the data every lattice routine needs:
//   * the Cholesky factor of Y,
//   * an LLL-reduced basis U of ℤ^g for this form (Y' = UᵀYU),
//   * the upper-triangular factor R of Y' (Y' = RᵀR), used for enumeration,
//   * the first minimum and one minimizing vector.
// Immutable after construction.
class GramMatrix {
 public:
  // Throws std::invalid_argument if `entries` is not square, not exactly
  // symmetric, not positive definite or has condition number above
  // kMaxConditionNumber.
  explicit GramMatrix(Eigen::MatrixXd entries);

  // Averages `entries` with its transpose first.  Use for matrices obtained
  // by floating-point computation (inverses, products).
  static GramMatrix Symmetrized(Eigen::MatrixXd const& entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  Eigen::MatrixXd const& entries() const { return entries_; }
  // Lower-triangular L with Y = LLᵀ.
  Eigen::MatrixXd const& cholesky() const { return cholesky_; }
  double determinant() const { return determinant_; }
  double condition_number() const { return condition_number_; }

  // Columns of the reduced basis, and its inverse (both unimodular).
  IntMatrix const& reduced_basis() const { return basis_; }
  IntMatrix const& reduced_basis_inverse() const { return basis_inverse_; }
  Eigen::MatrixXd const& reduced_gram() const { return reduced_gram_; }
  Eigen::MatrixXd const& reduced_factor() const { return reduced_factor_; }

  double first_minimum() const { return first_minimum_; }
  IntVector const& shortest_vector() const { return shortest_vector_; }

  GramMatrix Inverse() const;
  GramMatrix Scaled(double factor) const;

 private:
  Eigen::MatrixXd entries_;
  Eigen::MatrixXd cholesky_;
  double determinant_ = 0;
  double condition_number_ = 0;
  IntMatrix basis_;
  IntMatrix basis_inverse_;
  Eigen::MatrixXd reduced_gram_;
  Eigen::MatrixXd reduced_factor_;
  double first_minimum_ = 0;
  IntVector shortest_vector_;
};

// LLL reduction of the integer lattice ℤ^g under the form `gram`, with Lovász
// parameter `delta`.  Returns the unimodular change of basis U (columns are
// the new basis vectors).
IntMatrix LllReduce(Eigen::MatrixXd const& gram, double delta = 0.99);

}  // namespace mlk
