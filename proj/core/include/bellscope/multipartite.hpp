#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "bellscope/bell.hpp"

namespace bellscope {

/// Coefficients of an n-party correlation inequality, stored row-major
/// with the first party's index slowest.
struct BellTensor {
  std::vector<int> shape;       // (M1, ..., Mn), n >= 2
  std::vector<double> coeffs;   // product(shape) finite reals

  BellTensor() = default;
  /// Throws PreconditionError on bad shape, length mismatch or
  /// non-finite coefficients.
  BellTensor(std::vector<int> shape, std::vector<double> coeffs);

  int parties() const { return static_cast<int>(shape.size()); }
  std::int64_t size() const { return static_cast<std::int64_t>(coeffs.size()); }

  /// The M_p x M_q matrix obtained by fixing all other indices. Party
  /// indices are 1-based; `rest` holds the fixed 0-based values of the
  /// remaining indices in party order.
  Eigen::MatrixXd slice(int p, int q, const std::vector<int>& rest) const;
};

/// Spectral norms of all M_p x M_q slices, in row-major order of the
/// remaining indices. Party indices are 1-based with p < q.
std::vector<double> slice_norms(const BellTensor& t, int p, int q);

/// T = sqrt(M_p M_q) * sum of slice spectral norms.
double multipartite_bound(const BellTensor& t, int p, int q);

/// Minimizes multipartite_bound over all pairs p < q; ties go to the
/// lexicographically smallest pair.
std::tuple<int, int, double> best_pair_bound(const BellTensor& t);

/// Exact n-party local bound: enumerate sign assignments of parties
/// 2..n, align party 1 by taking absolute values.
double multipartite_local_bound(
    const BellTensor& t,
    std::uint64_t max_evaluations = kDefaultMaxEnumeration);

/// View a bipartite tensor as a BellMatrix (n must be 2).
BellMatrix as_bell_matrix(const BellTensor& t);

}  // namespace bellscope
