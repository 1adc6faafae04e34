#include "bellscope/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <random>

#include "bellscope/errors.hpp"

namespace bellscope::linalg {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (m.size() == 0) {
    throw PreconditionError(std::string(what) + ": empty matrix");
  }
  if (!m.allFinite()) {
    throw PreconditionError(std::string(what) + ": non-finite entries");
  }
}

}  // namespace

SingularDecomposition svd(const Eigen::MatrixXd& g) {
  require_finite(g, "svd");
  // The Jacobi kernel is the more accurate choice at the matrix sizes this
  // library sees; fall back to divide-and-conquer only for large inputs.
  SingularDecomposition dec;
  if (std::min(g.rows(), g.cols()) <= 32) {
    Eigen::JacobiSVD<Eigen::MatrixXd> s(g,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (s.info() != Eigen::Success) {
      throw NumericalError("svd: Jacobi decomposition did not converge");
    }
    dec.v = s.matrixU();
    dec.singular_values = s.singularValues();
    dec.w = s.matrixV();
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> s(g,
                                     Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (s.info() != Eigen::Success) {
      throw NumericalError("svd: decomposition did not converge");
    }
    dec.v = s.matrixU();
    dec.singular_values = s.singularValues();
    dec.w = s.matrixV();
  }
  return dec;
}

double spectral_norm(const Eigen::MatrixXd& g) {
  require_finite(g, "spectral_norm");
  if (g.rows() == 1 || g.cols() == 1) {
    return g.norm();
  }
  if (g.rows() == 2 && g.cols() == 2) {
    // Closed form via the Gram matrix. Exact for signed permutation
    // matrices, where the iterative kernel drifts by an ulp.
    const double a = g(0, 0) * g(0, 0) + g(1, 0) * g(1, 0);
    const double c = g(0, 1) * g(0, 1) + g(1, 1) * g(1, 1);
    const double b = g(0, 0) * g(0, 1) + g(1, 0) * g(1, 1);
    const double mean = 0.5 * (a + c);
    const double disc = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    return std::sqrt(mean + disc);
  }
  return svd(g).singular_values(0);
}

int degeneracy(const Eigen::VectorXd& sv, double rel_tol) {
  if (sv.size() == 0) {
    throw PreconditionError("degeneracy: empty singular value list");
  }
  if (!(rel_tol > 0)) {
    throw PreconditionError("degeneracy: rel_tol must be positive");
  }
  for (Eigen::Index i = 1; i < sv.size(); ++i) {
    if (sv(i) > sv(i - 1)) {
      throw PreconditionError("degeneracy: values not nonincreasing");
    }
  }
  const double cutoff = sv(0) * (1.0 - rel_tol);
  int d = 0;
  while (d < sv.size() && sv(d) >= cutoff) {
    ++d;
  }
  return std::max(d, 1);
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> truncate(
    const SingularDecomposition& dec, int d) {
  const auto max_d = std::min(dec.v.cols(), dec.w.cols());
  if (d < 1 || d > max_d) {
    throw PreconditionError("truncate: d out of range");
  }
  return {dec.v.leftCols(d), dec.w.leftCols(d)};
}

Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& q) {
  require_finite(q, "pseudoinverse");
  Eigen::JacobiSVD<Eigen::MatrixXd> s(q,
                                      Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (s.info() != Eigen::Success) {
    throw NumericalError("pseudoinverse: decomposition did not converge");
  }
  const Eigen::VectorXd& sv = s.singularValues();
  const double cutoff = sv.size() > 0 ? sv(0) * 1e-10 : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > 0.0) {
      inv(i) = 1.0 / sv(i);
    }
  }
  return s.matrixV() * inv.asDiagonal() * s.matrixU().transpose();
}

std::optional<Eigen::MatrixXd> psd_sqrt(const Eigen::MatrixXd& x, double tol) {
  require_finite(x, "psd_sqrt");
  if (x.rows() != x.cols()) {
    throw PreconditionError("psd_sqrt: matrix not square");
  }
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if ((x - x.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw PreconditionError("psd_sqrt: matrix not symmetric");
  }
  const Eigen::MatrixXd sym = 0.5 * (x + x.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) {
    throw NumericalError("psd_sqrt: eigendecomposition did not converge");
  }
  Eigen::VectorXd lambda = es.eigenvalues();
  const double lambda_max = lambda.maxCoeff();
  const double clamp_band = tol * std::max(1.0, lambda_max);
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -clamp_band) {
      return std::nullopt;  // genuinely indefinite
    }
    if (lambda(i) < 0.0) {
      lambda(i) = 0.0;
    }
  }
  const Eigen::VectorXd root = lambda.cwiseSqrt();
  return Eigen::MatrixXd(es.eigenvectors() * root.asDiagonal() *
                         es.eigenvectors().transpose());
}

int numeric_rank(const Eigen::MatrixXd& a, double rel_tol) {
  require_finite(a, "numeric_rank");
  Eigen::JacobiSVD<Eigen::MatrixXd> s(a);
  const Eigen::VectorXd& sv = s.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) {
    return 0;
  }
  const double cutoff = sv(0) * rel_tol;
  int rank = 0;
  while (rank < sv.size() && sv(rank) >= cutoff) {
    ++rank;
  }
  return rank;
}

Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed) {
  if (n < 1) {
    throw PreconditionError("random_orthogonal: n must be >= 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a(i, j) = gauss(rng);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Sign correction makes the distribution Haar instead of QR-convention
  // dependent.
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) {
      q.col(i) = -q.col(i);
    }
  }
  return q;
}

}  // namespace bellscope::linalg
