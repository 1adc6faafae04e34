#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "bellscope/bell.hpp"
#include "bellscope/tightness.hpp"

namespace bellscope::realization {

/// Explicit quantum certificate for a tight bound.
struct RealizationReport {
  int local_dimension = 0;        // D, per-party Hilbert space dimension
  Eigen::MatrixXd correlations;   // E(x1, x2), M1 x M2
  double bell_value = 0.0;        // sum_ij g_ij E(i, j)
  double max_corr_error = 0.0;    // max |E(i,j) - <v_i, w_j>|
};

/// d pairwise anticommuting Hermitian involutions of dimension
/// D = 2^floor(d/2), built from tensor products of 2x2 generators.
/// d <= 12.
std::vector<Eigen::MatrixXcd> gamma_matrices(int d);

/// A(v) = sum_k v_k gamma_k for a unit vector v; squares to the identity.
Eigen::MatrixXcd observable_from_vector(
    const Eigen::VectorXd& v, const std::vector<Eigen::MatrixXcd>& gammas);

/// One observable per row of `vectors`. Throws PreconditionError if a row
/// is not a unit vector (within 1e-9).
std::vector<Eigen::MatrixXcd> observables_from_vectors(
    const Eigen::MatrixXd& vectors);

/// Evaluate the optimal vectors of a tight result as observables on the
/// maximally entangled state and reproduce the correlations E = <v, w>.
/// Requires tr.tight and d' <= 12; throws NumericalError if the achieved
/// value misses T by more than 1e-8 * max(1, T).
RealizationReport verify_realization(const BellMatrix& bm,
                                     const TightnessResult& tr);

/// (D_lower, D_upper) = (ceil((d+1)/2), 2^floor(d/2)): the Hilbert space
/// dimensions necessary and sufficient for vectors of dimension d.
std::pair<int, int> dimension_bounds(int d);

}  // namespace bellscope::realization
