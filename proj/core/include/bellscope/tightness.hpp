#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "bellscope/bell.hpp"

namespace bellscope {

enum class TightnessFailure { system_unsolvable, x_not_psd };

/// Why a bound was found unreachable, as a stable report token.
std::string to_string(TightnessFailure f);

/// Outcome of the ellipsoid solve deciding whether T is attained.
struct TightnessResult {
  bool tight = false;
  int degeneracy = 0;                       // d, multiplicity of sigma_max
  std::optional<int> min_dimension;         // d', rank of alpha
  std::optional<Eigen::MatrixXd> alpha;     // d x d symmetric PSD root
  std::optional<Eigen::MatrixXd> x;         // alpha * alpha
  std::optional<VectorStrategy> vectors;    // optimal vectors in R^{d'}
  /// Max deviation over the solvability and unit-norm conditions:
  /// ||Qc - 1||_inf plus, when vectors exist, max | ||v|| - 1 |.
  double residual = 0.0;
  std::optional<TightnessFailure> failure_reason;
};

/// Stacked truncated singular-vector rows and, when the bound is tight,
/// the quadric X with p^T X p = 1 for every listed point.
struct EllipsoidData {
  Eigen::MatrixXd points_v;                 // M1 rows of V^d
  Eigen::MatrixXd points_w;                 // M2 rows of sqrt(M2/M1) W^d
  std::optional<Eigen::MatrixXd> quadric;   // X
};

struct TightnessOptions {
  double solve_tol = 1e-7;       // accept ||Qc - 1||_inf up to this
  double degeneracy_tol = 1e-9;  // relative band defining d
  double psd_tol = 1e-8;         // negative-eigenvalue clamp for sqrt(X)
  double rank_tol = 1e-6;        // relative singular-value cutoff for d'
};

/// Sufficient condition: every row of V^d has norm sqrt(d/M1) and every
/// row of W^d has norm sqrt(d/M2), each within 1e-8.
bool has_balanced_row_norms(const BellMatrix& bm,
                      const TightnessOptions& opt = {});

/// Sufficient condition: d = M1 = M2.
bool is_fully_degenerate_square(const BellMatrix& bm,
                      const TightnessOptions& opt = {});

/// Decide whether T is attained. Builds A = [V^d ; sqrt(M2/M1) W^d],
/// P = A A^T, Q = P .* P, solves Q c = 1 by pseudoinverse, forms
/// X = A^T diag(c) A and takes its PSD square root. On success fills
/// alpha, d', and the optimal vectors rotated into R^{d'}.
TightnessResult solve_alpha(const BellMatrix& bm,
                            const TightnessOptions& opt = {});

/// Same solve, starting from an explicit truncated decomposition. Exposed
/// so the gauge invariance of X under re-mixing of degenerate singular
/// vectors can be exercised directly. Without g the achieved value cannot
/// be computed, so vectors.value is left at zero.
TightnessResult solve_alpha_from_truncated(const Eigen::MatrixXd& v_d,
                                           const Eigen::MatrixXd& w_d,
                                           const TightnessOptions& opt = {});

struct ExtractedVectors {
  Eigen::MatrixXd v;      // M1 x d
  Eigen::MatrixXd w;      // M2 x d
  double max_residual;    // max over vectors of | ||.|| - 1 |
};

/// v_i = alpha^T V^d_{i,*}, w_j = sqrt(M2/M1) alpha^T W^d_{j,*}.
ExtractedVectors extract_vectors(const Eigen::MatrixXd& alpha,
                                 const Eigen::MatrixXd& v_d,
                                 const Eigen::MatrixXd& w_d);

/// Rotate a family of row vectors so their span aligns with the leading
/// coordinates, then drop the trailing zero coordinates. Preserves all
/// pairwise inner products. Returns the reduced (v, w) and d'.
struct ReducedVectors {
  Eigen::MatrixXd v;
  Eigen::MatrixXd w;
  int dim;
};
ReducedVectors reduce_dimension(const Eigen::MatrixXd& v,
                                const Eigen::MatrixXd& w,
                                double rel_tol = 1e-6);

/// Points for the ellipsoid picture plus the quadric when solve_alpha
/// succeeds.
EllipsoidData ellipsoid_data(const BellMatrix& bm,
                             const TightnessOptions& opt = {});

}  // namespace bellscope
