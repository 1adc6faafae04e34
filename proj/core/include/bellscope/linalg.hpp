#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>

namespace bellscope::linalg {

/// Full singular value decomposition g = V * S * W^T with V, W orthogonal
/// and the singular values in nonincreasing order.
struct SingularDecomposition {
  Eigen::MatrixXd v;                // rows(g) x rows(g)
  Eigen::VectorXd singular_values;  // min(rows, cols), nonincreasing
  Eigen::MatrixXd w;                // cols(g) x cols(g)
};

/// Decompose a finite real matrix. Throws NumericalError if the backend
/// does not converge and PreconditionError on non-finite input.
SingularDecomposition svd(const Eigen::MatrixXd& g);

/// Spectral norm, i.e. the largest singular value.
double spectral_norm(const Eigen::MatrixXd& g);

/// Multiplicity of the leading singular value: the number of entries with
/// sv[i] >= sv[0] * (1 - rel_tol). sv must be nonempty and nonincreasing.
int degeneracy(const Eigen::VectorXd& sv, double rel_tol = 1e-9);

/// First d columns of V and W of a decomposition.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> truncate(
    const SingularDecomposition& dec, int d);

/// Moore-Penrose pseudoinverse; singular values below sigma_max * 1e-10
/// are treated as zero.
Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& q);

/// Symmetric square root of a symmetric PSD matrix. Eigenvalues in
/// [-tol * max(1, lambda_max), 0) are clamped to zero; anything more
/// negative means the matrix is not PSD and nullopt is returned.
std::optional<Eigen::MatrixXd> psd_sqrt(const Eigen::MatrixXd& x,
                                        double tol = 1e-8);

/// Number of singular values >= sigma_max * rel_tol; 0 for the zero matrix.
int numeric_rank(const Eigen::MatrixXd& a, double rel_tol = 1e-10);

/// Haar-distributed random orthogonal n x n matrix: QR of a seeded
/// standard-Gaussian matrix with the R-diagonal sign correction.
/// Deterministic for a fixed seed.
Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed);

}  // namespace bellscope::linalg
