#include "mlk/gram_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mlk/enumeration.hpp"

namespace mlk {

namespace {

// Size reduction threshold; the slack keeps rounding from ping-ponging
// between μ ≈ ±½.
constexpr double kSizeReductionBound = 0.5 + 1e-9;

Eigen::MatrixXd UpperFactor(Eigen::MatrixXd const& gram, IntMatrix const& u) {
  Eigen::MatrixXd const ud = u.cast<double>();
  Eigen::MatrixXd g = ud.transpose() * gram * ud;
  g = (0.5 * (g + g.transpose())).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("LLL: Gram matrix lost positive definiteness");
  }
  return llt.matrixU();
}

}  // namespace

IntMatrix LllReduce(Eigen::MatrixXd const& gram, double delta) {
  int const n = static_cast<int>(gram.rows());
  IntMatrix u = IntMatrix::Identity(n, n);
  if (n <= 1) return u;
  Eigen::MatrixXd r = UpperFactor(gram, u);

  int k = 1;
  for (int iterations = 0; k < n; ++iterations) {
    if (iterations > 1'000'000) {
      throw std::runtime_error("LLL: no convergence");
    }
    bool changed = false;
    for (int j = k - 1; j >= 0; --j) {
      double const mu = r(j, k) / r(j, j);
      if (std::abs(mu) > kSizeReductionBound) {
        std::int64_t const q = std::llround(mu);
        u.col(k) -= q * u.col(j);
        r.col(k) -= static_cast<double>(q) * r.col(j);
        changed = true;
      }
    }
    if (changed) r = UpperFactor(gram, u);
    double const mu = r(k - 1, k) / r(k - 1, k - 1);
    double const lhs = r(k, k) * r(k, k) + mu * mu * r(k - 1, k - 1) * r(k - 1, k - 1);
    if (lhs >= delta * r(k - 1, k - 1) * r(k - 1, k - 1)) {
      ++k;
    } else {
      u.col(k).swap(u.col(k - 1));
      r = UpperFactor(gram, u);
      k = std::max(k - 1, 1);
    }
  }
  return u;
}

GramMatrix::GramMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  int const n = static_cast<int>(entries_.rows());
  if (n == 0 || entries_.cols() != n) {
    throw std::invalid_argument("Gram matrix must be square and non-empty");
  }
  if (!entries_.allFinite()) {
    throw std::invalid_argument("Gram matrix has non-finite entries");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (entries_(i, j) != entries_(j, i)) {
        throw std::invalid_argument("Gram matrix is not symmetric");
      }
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(entries_);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("Gram matrix is not positive definite");
  }
  cholesky_ = llt.matrixL();
  determinant_ = 1;
  for (int i = 0; i < n; ++i) {
    if (!(cholesky_(i, i) > 0)) {
      throw std::invalid_argument("Gram matrix is not positive definite");
    }
    determinant_ *= cholesky_(i, i) * cholesky_(i, i);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(entries_, Eigen::EigenvaluesOnly);
  double const lo = eigen.eigenvalues().minCoeff();
  double const hi = eigen.eigenvalues().maxCoeff();
  if (!(lo > 0)) {
    throw std::invalid_argument("Gram matrix is not positive definite");
  }
  condition_number_ = hi / lo;
  if (condition_number_ > kMaxConditionNumber) {
    throw std::invalid_argument("Gram matrix is ill-conditioned (condition number " +
                                std::to_string(condition_number_) + ")");
  }

  basis_ = LllReduce(entries_);
  Eigen::MatrixXd const inverse = basis_.cast<double>().inverse();
  basis_inverse_ = inverse.array().round().cast<std::int64_t>().matrix();
  if (basis_ * basis_inverse_ != IntMatrix::Identity(n, n)) {
    throw std::runtime_error("reduced basis is not unimodular");
  }
  Eigen::MatrixXd const ud = basis_.cast<double>();
  reduced_gram_ = ud.transpose() * entries_ * ud;
  reduced_gram_ = (0.5 * (reduced_gram_ + reduced_gram_.transpose())).eval();
  Eigen::LLT<Eigen::MatrixXd> reduced_llt(reduced_gram_);
  if (reduced_llt.info() != Eigen::Success) {
    throw std::invalid_argument("reduced Gram matrix is not positive definite");
  }
  reduced_factor_ = reduced_llt.matrixU();

  // The shortest reduced basis vector seeds the radius; enumeration then
  // finds the exact minimum.
  int best_index = 0;
  for (int i = 1; i < n; ++i) {
    if (reduced_gram_(i, i) < reduced_gram_(best_index, best_index)) best_index = i;
  }
  Eigen::VectorXd best_k = Eigen::VectorXd::Zero(n);
  best_k[best_index] = 1;
  double best = reduced_gram_(best_index, best_index);
  EnumerateEllipsoid(reduced_factor_, Eigen::VectorXd::Zero(n), best * (1 + 1e-10),
                     [&](std::span<const std::int64_t> k, double dist_sq) {
                       if (std::all_of(k.begin(), k.end(), [](auto v) { return v == 0; })) {
                         return best * (1 + 1e-10);
                       }
                       if (dist_sq < best) {
                         best = dist_sq;
                         for (int i = 0; i < n; ++i) best_k[i] = static_cast<double>(k[i]);
                       }
                       return best * (1 + 1e-10);
                     });
  shortest_vector_ = basis_ * best_k.array().round().cast<std::int64_t>().matrix();
  Eigen::VectorXd const s = shortest_vector_.cast<double>();
  first_minimum_ = std::sqrt(s.dot(entries_ * s));
}

GramMatrix GramMatrix::Symmetrized(Eigen::MatrixXd const& entries) {
  if (entries.rows() != entries.cols()) {
    throw std::invalid_argument("Gram matrix must be square");
  }
  Eigen::MatrixXd sym = 0.5 * (entries + entries.transpose());
  return GramMatrix(std::move(sym));
}

GramMatrix GramMatrix::Inverse() const {
  Eigen::MatrixXd const identity = Eigen::MatrixXd::Identity(dim(), dim());
  Eigen::LLT<Eigen::MatrixXd> llt(entries_);
  return Symmetrized(llt.solve(identity));
}

GramMatrix GramMatrix::Scaled(double factor) const {
  if (!(factor > 0) || !std::isfinite(factor)) {
    throw std::invalid_argument("scale factor must be positive");
  }
  return GramMatrix(factor * entries_);
}

}  // namespace mlk
