#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

namespace bellscope {

/// Coefficients of a bipartite correlation inequality. Rows index the
/// settings of party 1, columns the settings of party 2.
struct BellMatrix {
  Eigen::MatrixXd g;
  std::string label;

  BellMatrix() = default;
  /// Throws PreconditionError if g is empty or has non-finite entries.
  explicit BellMatrix(Eigen::MatrixXd coefficients, std::string name = "");

  int settings_1() const { return static_cast<int>(g.rows()); }
  int settings_2() const { return static_cast<int>(g.cols()); }
};

/// A pair of unit-vector families (rows of v and w) together with the
/// value sum_ij g_ij <v_i, w_j> they achieve.
struct VectorStrategy {
  Eigen::MatrixXd v;  // settings_1 x dim, unit rows
  Eigen::MatrixXd w;  // settings_2 x dim, unit rows
  double value = 0.0;
};

/// Quantum and classical bounds for one inequality.
struct BoundsReport {
  double quantum_bound = 0.0;              // T
  double local_bound = 0.0;                // B
  std::optional<double> seesaw_lb;         // vector-model lower bound on Q
  std::optional<double> ratio;             // T / B, when B > 0
  bool bell_candidate = false;             // T > B beyond tolerance
};

/// Default cap on exhaustive enumeration, counted in evaluations of the
/// inner objective (one per sign assignment).
inline constexpr std::uint64_t kDefaultMaxEnumeration = std::uint64_t{1} << 26;

/// Upper bound on the quantum value: sqrt(M1 * M2) * sigma_max(g).
double quantum_bound(const BellMatrix& bm);

/// Exact local-hidden-variable bound, computed by enumerating sign
/// assignments of the party with fewer settings and aligning the other
/// party's signs. Throws EnumerationLimitError when 2^min(M1,M2) exceeds
/// max_evaluations.
double local_bound(const BellMatrix& bm,
                   std::uint64_t max_evaluations = kDefaultMaxEnumeration);

/// Alternating maximization of sum_ij g_ij <v_i, w_j> over unit vectors in
/// R^dim, restarted from seeded random configurations. Best-effort lower
/// bound on the vector-model optimum; deterministic for a fixed seed.
VectorStrategy seesaw_lower_bound(const BellMatrix& bm, int dim, int restarts,
                                  int iters, std::uint64_t seed);

struct SeesawDefaults {
  static int dim(const BellMatrix& bm) {
    return std::min(bm.settings_1() + bm.settings_2(), 16);
  }
  static constexpr int restarts = 16;
  static constexpr int iters = 500;
};

/// Combined report: T, B, optional see-saw lower bound, violation ratio
/// and the Bell-candidate flag (T - B > 1e-9 * max(1, T)). The flag is
/// necessary-side only; pair it with a tightness certificate to decide.
BoundsReport violation_report(const BellMatrix& bm, bool with_seesaw = false,
                              std::uint64_t seed = 0);

}  // namespace bellscope
