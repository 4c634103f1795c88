#include "mlk/siegel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mlk {

namespace {

constexpr double kReNormalizedSlack = 1e-12;
constexpr double kLambda1Slack = 1e-10;

Eigen::MatrixXd CheckedSymmetric(Eigen::MatrixXd const& a, char const* name) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument(std::string(name) + " must be a non-empty square matrix");
  }
  if (!a.allFinite()) {
    throw std::invalid_argument(std::string(name) + " has non-finite entries");
  }
  double const scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  double const asymmetry = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > kSymmetryTolerance * scale) {
    throw std::invalid_argument(std::string(name) + " is not symmetric");
  }
  return 0.5 * (a + a.transpose());
}

}  // namespace

PeriodMatrix::PeriodMatrix(Eigen::MatrixXd re, GramMatrix im)
    : re_(std::move(re)), im_(std::move(im)), im_inverse_(im_.Inverse()) {
  int const g = im_.dim();
  if (re_.rows() != g || re_.cols() != g) {
    throw std::invalid_argument("Re Ω and Im Ω have different sizes");
  }
  if (!re_.allFinite() || re_ != re_.transpose()) {
    throw std::invalid_argument("Re Ω must be finite and symmetric");
  }
  flags_.re_normalized = re_.cwiseAbs().maxCoeff() <= 0.5 + kReNormalizedSlack;
  flags_.im_lll = im_.reduced_basis() == IntMatrix::Identity(g, g);
  double const l1 = im_.first_minimum();
  flags_.lambda1_ok = l1 * l1 >= std::sqrt(3.0) / 2 - kLambda1Slack;
}

Eigen::MatrixXcd PeriodMatrix::omega() const {
  Eigen::MatrixXcd o(dim(), dim());
  o.real() = re_;
  o.imag() = im_.entries();
  return o;
}

bool PeriodMatrix::IsReduced() const {
  if (!flags_.re_normalized || !flags_.lambda1_ok) return false;
  if (dim() == 1) {
    double const x = re_(0, 0);
    double const y = im_.entries()(0, 0);
    return x * x + y * y >= 1 - 1e-12;
  }
  return true;
}

PeriodMatrix ValidatePeriodMatrix(Eigen::MatrixXd const& re, Eigen::MatrixXd const& im) {
  if (re.rows() != im.rows() || re.cols() != im.cols()) {
    throw std::invalid_argument("Re Ω and Im Ω have different sizes");
  }
  Eigen::MatrixXd x = CheckedSymmetric(re, "Re Ω");
  Eigen::MatrixXd y = CheckedSymmetric(im, "Im Ω");
  return PeriodMatrix(std::move(x), GramMatrix(std::move(y)));
}

PeriodMatrix PeriodMatrixFromTau(std::complex<double> tau) {
  return ValidatePeriodMatrix(Eigen::MatrixXd::Constant(1, 1, tau.real()),
                              Eigen::MatrixXd::Constant(1, 1, tau.imag()));
}

PeriodMatrix Reduce(PeriodMatrix const& omega) {
  if (omega.dim() == 1) {
    std::complex<double> tau(omega.re()(0, 0), omega.im().entries()(0, 0));
    for (int iteration = 0; iteration < 10'000; ++iteration) {
      if (std::abs(tau.real()) > 0.5) {
        tau -= std::floor(tau.real() + 0.5);
      }
      if (std::norm(tau) < 1 - 1e-15) {
        tau = -1.0 / tau;
        continue;
      }
      return PeriodMatrixFromTau(tau);
    }
    throw std::runtime_error("reduction of τ did not terminate");
  }

  GramMatrix const& y = omega.im();
  Eigen::MatrixXd const u = y.reduced_basis().cast<double>();
  Eigen::MatrixXd x = u.transpose() * omega.re() * u;
  x = (0.5 * (x + x.transpose())).eval();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = i; j < x.cols(); ++j) {
      if (std::abs(x(i, j)) > 0.5) {
        x(i, j) -= std::round(x(i, j));
        x(j, i) = x(i, j);
      }
    }
  }
  return PeriodMatrix(std::move(x), GramMatrix(y.reduced_gram()));
}

double RiemannFormNorm(PeriodMatrix const& omega, IntVector const& m, IntVector const& n) {
  int const g = omega.dim();
  if (m.size() != g || n.size() != g) {
    throw std::invalid_argument("RiemannFormNorm: dimension mismatch");
  }
  Eigen::VectorXd const nd = n.cast<double>();
  Eigen::VectorXd const v = m.cast<double>() + omega.re() * nd;
  Eigen::VectorXd const w = omega.im().cholesky().triangularView<Eigen::Lower>().solve(v);
  return w.squaredNorm() + nd.dot(omega.im().entries() * nd);
}

GramMatrix RiemannFormGram(PeriodMatrix const& omega) {
  int const g = omega.dim();
  Eigen::MatrixXd const& x = omega.re();
  Eigen::MatrixXd const& y_inv = omega.im_inverse().entries();
  Eigen::MatrixXd h(2 * g, 2 * g);
  h.topLeftCorner(g, g) = y_inv;
  h.topRightCorner(g, g) = y_inv * x;
  h.bottomLeftCorner(g, g) = x * y_inv;
  h.bottomRightCorner(g, g) = x * y_inv * x + omega.im().entries();
  return GramMatrix::Symmetrized(h);
}

double InjectivityDiameter(PeriodMatrix const& omega) {
  return RiemannFormGram(omega).first_minimum();
}

double ClampRadius(int g) {
  if (g < 1) throw std::invalid_argument("dimension must be ≥ 1");
  return std::sqrt(std::numbers::pi / (3.0 * g));
}

ClampedMinimum LambdaClamped(PeriodMatrix const& omega) {
  double const clamp = ClampRadius(omega.dim());
  ClampedMinimum c;
  c.lambda = std::min(omega.im_inverse().first_minimum(), clamp);
  c.rho = InjectivityDiameter(omega);
  c.rho_clamped = std::min(c.rho, clamp);
  c.lambda_equals_rho = std::abs(c.lambda - c.rho_clamped) <= 1e-9;
  return c;
}

}  // namespace mlk
