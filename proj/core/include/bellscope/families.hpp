#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "bellscope/bell.hpp"
#include "bellscope/multipartite.hpp"

namespace bellscope::families {

/// A generated inequality together with its analytic reference values.
struct FamilyInstance {
  std::variant<BellMatrix, BellTensor> instance;
  std::optional<double> analytic_quantum_bound;  // T
  std::optional<double> analytic_local_bound;    // B
  std::optional<int> analytic_degeneracy;        // d
  std::string provenance;

  bool is_matrix() const {
    return std::holds_alternative<BellMatrix>(instance);
  }
  const BellMatrix& matrix() const { return std::get<BellMatrix>(instance); }
  const BellTensor& tensor() const { return std::get<BellTensor>(instance); }
};

/// g = [[1,1],[1,-1]]^(tensor k); T = 2^(3k/2). k <= 6.
FamilyInstance chsh_power(int k);

/// Chained inequality on M settings per party; T = 2M cos(pi/(2M)), d = 2.
FamilyInstance braunstein_caves(int m);

/// g = +1 if x1 >= x2 else -1; T = M csc(pi/(2M)), B = ceil(M^2/2), d = 2.
FamilyInstance greater_equal(int m);

/// Rows list the binary digits of 0..M1-1 as signs, M1 = 2^(M2-1);
/// T = M1 sqrt(M2), d = M2. M2 <= 20.
FamilyInstance binary_digits(int m2);

/// g = F_k F_k^T - (4/3) I with F_k the k(k-1) x k matrix whose rows are
/// all vectors -e_i + e_j and e_i + e_j for i < j, in lexicographic (i,j)
/// order with the -1 row first. T = (2(k-1) - 4/3) k(k-1), d = k. k <= 8.
FamilyInstance fishburn_reeds(int k);
/// The underlying k(k-1) x k sign pattern.
Eigen::MatrixXd fishburn_reeds_f(int k);

/// n-party tensor with coefficient cos(pi/2 (x1+...+xn)) snapped to
/// {-1, 0, 1}; T = 2^(n-1). n <= 12.
FamilyInstance mermin(int n);

/// 4x4 inequality built from an explicit decomposition with singular
/// values (2,2,2,s44); attains its bound with three-dimensional vectors.
/// T = 8, B = 4 sqrt(2), d = 3 for the default s44 = 1. s44 in [0, 2).
FamilyInstance qubit_inequality(double s44 = 1.0);

/// Stack of k = floor((d-1)/2) + 1 seeded random orthogonal d x d blocks;
/// T = k d, d' = d with probability one. d <= 32.
FamilyInstance random_dimension_witness(int d, std::uint64_t seed);

}  // namespace bellscope::families
