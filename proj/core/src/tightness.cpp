#include "bellscope/tightness.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "bellscope/errors.hpp"
#include "bellscope/linalg.hpp"

namespace bellscope {

namespace {

struct Truncated {
  Eigen::MatrixXd v_d;
  Eigen::MatrixXd w_d;
  int d;
};

Truncated truncated_top_space(const BellMatrix& bm, const TightnessOptions& opt) {
  const auto dec = linalg::svd(bm.g);
  const int d = linalg::degeneracy(dec.singular_values, opt.degeneracy_tol);
  auto [v_d, w_d] = linalg::truncate(dec, d);
  return {std::move(v_d), std::move(w_d), d};
}

}  // namespace

std::string to_string(TightnessFailure f) {
  switch (f) {
    case TightnessFailure::system_unsolvable:
      return "system-unsolvable";
    case TightnessFailure::x_not_psd:
      return "X-not-psd";
  }
  return "unknown";
}

bool has_balanced_row_norms(const BellMatrix& bm, const TightnessOptions& opt) {
  const auto top = truncated_top_space(bm, opt);
  const int m1 = bm.settings_1();
  const int m2 = bm.settings_2();
  const double want_v = std::sqrt(static_cast<double>(top.d) / m1);
  const double want_w = std::sqrt(static_cast<double>(top.d) / m2);
  for (int i = 0; i < m1; ++i) {
    if (std::abs(top.v_d.row(i).norm() - want_v) > 1e-8) return false;
  }
  for (int j = 0; j < m2; ++j) {
    if (std::abs(top.w_d.row(j).norm() - want_w) > 1e-8) return false;
  }
  return true;
}

bool is_fully_degenerate_square(const BellMatrix& bm, const TightnessOptions& opt) {
  if (bm.settings_1() != bm.settings_2()) return false;
  const auto dec = linalg::svd(bm.g);
  return linalg::degeneracy(dec.singular_values, opt.degeneracy_tol) ==
         bm.settings_1();
}

ExtractedVectors extract_vectors(const Eigen::MatrixXd& alpha,
                                 const Eigen::MatrixXd& v_d,
                                 const Eigen::MatrixXd& w_d) {
  if (alpha.rows() != v_d.cols() || alpha.rows() != w_d.cols() ||
      alpha.rows() != alpha.cols()) {
    throw PreconditionError("extract_vectors: alpha must be d x d");
  }
  const double ratio = std::sqrt(static_cast<double>(w_d.rows()) /
                                 static_cast<double>(v_d.rows()));
  ExtractedVectors out;
  out.v = v_d * alpha;            // row i equals alpha^T V^d_{i,*}
  out.w = ratio * (w_d * alpha);  // row j equals sqrt(M2/M1) alpha^T W^d_{j,*}
  double worst = 0.0;
  for (Eigen::Index i = 0; i < out.v.rows(); ++i) {
    worst = std::max(worst, std::abs(out.v.row(i).norm() - 1.0));
  }
  for (Eigen::Index j = 0; j < out.w.rows(); ++j) {
    worst = std::max(worst, std::abs(out.w.row(j).norm() - 1.0));
  }
  out.max_residual = worst;
  return out;
}

ReducedVectors reduce_dimension(const Eigen::MatrixXd& v,
                                const Eigen::MatrixXd& w, double rel_tol) {
  if (v.cols() != w.cols()) {
    throw PreconditionError("reduce_dimension: mismatched ambient dimension");
  }
  Eigen::MatrixXd stack(v.rows() + w.rows(), v.cols());
  stack << v, w;
  Eigen::JacobiSVD<Eigen::MatrixXd> s(stack, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = s.singularValues();
  int rank = 0;
  if (sv.size() > 0 && sv(0) > 0.0) {
    const double cutoff = sv(0) * rel_tol;
    while (rank < sv.size() && sv(rank) >= cutoff) ++rank;
  }
  const Eigen::MatrixXd rotated = stack * s.matrixV();
  ReducedVectors out;
  out.dim = rank;
  out.v = rotated.topRows(v.rows()).leftCols(rank);
  out.w = rotated.bottomRows(w.rows()).leftCols(rank);
  return out;
}

TightnessResult solve_alpha_from_truncated(const Eigen::MatrixXd& v_d,
                                           const Eigen::MatrixXd& w_d,
                                           const TightnessOptions& opt) {
  if (v_d.cols() != w_d.cols() || v_d.cols() < 1) {
    throw PreconditionError("solve_alpha: truncated factors disagree on d");
  }
  const int d = static_cast<int>(v_d.cols());
  const auto m1 = v_d.rows();
  const auto m2 = w_d.rows();
  const double ratio = std::sqrt(static_cast<double>(m2) /
                                 static_cast<double>(m1));

  TightnessResult result;
  result.degeneracy = d;

  // Stack the points that must land on one origin-centered quadric.
  Eigen::MatrixXd a(m1 + m2, d);
  a << v_d, ratio * w_d;

  const Eigen::MatrixXd p = a * a.transpose();
  const Eigen::MatrixXd q = p.cwiseProduct(p);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m1 + m2);
  const Eigen::VectorXd c = linalg::pseudoinverse(q) * ones;

  const double solve_residual = (q * c - ones).cwiseAbs().maxCoeff();
  result.residual = solve_residual;
  if (solve_residual > opt.solve_tol) {
    result.failure_reason = TightnessFailure::system_unsolvable;
    return result;
  }

  Eigen::MatrixXd x = a.transpose() * c.asDiagonal() * a;
  x = 0.5 * (x + x.transpose());
  result.x = x;

  auto alpha = linalg::psd_sqrt(x, opt.psd_tol);
  if (!alpha) {
    result.failure_reason = TightnessFailure::x_not_psd;
    return result;
  }
  result.alpha = *alpha;
  result.min_dimension = linalg::numeric_rank(*alpha, opt.rank_tol);

  const ExtractedVectors extracted = extract_vectors(*alpha, v_d, w_d);
  result.residual = std::max(solve_residual, extracted.max_residual);
  if (result.residual > opt.solve_tol) {
    result.failure_reason = TightnessFailure::system_unsolvable;
    return result;
  }

  const ReducedVectors reduced =
      reduce_dimension(extracted.v, extracted.w, opt.rank_tol);
  VectorStrategy vectors;
  vectors.v = reduced.v;
  vectors.w = reduced.w;
  vectors.value = 0.0;  // filled by solve_alpha, which knows g
  result.vectors = std::move(vectors);
  result.tight = true;
  return result;
}

TightnessResult solve_alpha(const BellMatrix& bm, const TightnessOptions& opt) {
  const auto top = truncated_top_space(bm, opt);
  TightnessResult result = solve_alpha_from_truncated(top.v_d, top.w_d, opt);
  if (result.vectors) {
    result.vectors->value =
        (bm.g.array() *
         (result.vectors->v * result.vectors->w.transpose()).array())
            .sum();
  }
  return result;
}

EllipsoidData ellipsoid_data(const BellMatrix& bm, const TightnessOptions& opt) {
  const auto top = truncated_top_space(bm, opt);
  const double ratio = std::sqrt(static_cast<double>(bm.settings_2()) /
                                 static_cast<double>(bm.settings_1()));
  EllipsoidData data;
  data.points_v = top.v_d;
  data.points_w = ratio * top.w_d;
  const TightnessResult result =
      solve_alpha_from_truncated(top.v_d, top.w_d, opt);
  if (result.tight) {
    data.quadric = result.x;
  }
  return data;
}

}  // namespace bellscope
