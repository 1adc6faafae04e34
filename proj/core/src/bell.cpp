#include "bellscope/bell.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>
#include <vector>

#include "bellscope/errors.hpp"
#include "bellscope/linalg.hpp"

namespace bellscope {

namespace {

// Chunks are aligned to fixed boundaries and each starts from a fresh
// g * a2 product, so the result is bit-identical for any thread count and
// incremental rounding cannot accumulate across more than one chunk.
constexpr std::uint64_t kEnumerationChunk = 4096;

int thread_budget(std::uint64_t chunks) {
  unsigned budget = std::thread::hardware_concurrency();
  if (budget == 0) budget = 1;
  if (const char* env = std::getenv("BELLSCOPE_THREADS")) {
    const long requested = std::strtol(env, nullptr, 10);
    if (requested > 0) budget = static_cast<unsigned>(requested);
  }
  return static_cast<int>(std::min<std::uint64_t>(budget, chunks));
}

// Max over a2 in {-1,+1}^cols of sum_i |(g a2)_i|, visiting assignments in
// Gray-code order within each chunk.
double enumerate_sign_assignments(const Eigen::MatrixXd& g) {
  const int cols = static_cast<int>(g.cols());
  const std::uint64_t total = std::uint64_t{1} << cols;

  auto scan_chunk = [&g, cols](std::uint64_t begin, std::uint64_t end) {
    const std::uint64_t start_code = begin ^ (begin >> 1);
    Eigen::VectorXd signs(cols);
    for (int j = 0; j < cols; ++j) {
      signs(j) = (start_code >> j) & 1 ? -1.0 : 1.0;
    }
    Eigen::VectorXd y = g * signs;
    double best = y.cwiseAbs().sum();
    for (std::uint64_t t = begin + 1; t < end; ++t) {
      const int j = std::countr_zero(t);
      signs(j) = -signs(j);
      y += 2.0 * signs(j) * g.col(j);
      best = std::max(best, y.cwiseAbs().sum());
    }
    return best;
  };

  const std::uint64_t chunks = (total + kEnumerationChunk - 1) / kEnumerationChunk;
  const int threads = total >= (std::uint64_t{1} << 16) ? thread_budget(chunks) : 1;

  if (threads <= 1) {
    double best = 0.0;
    for (std::uint64_t c = 0; c < chunks; ++c) {
      const std::uint64_t begin = c * kEnumerationChunk;
      best = std::max(best, scan_chunk(begin, std::min(begin + kEnumerationChunk, total)));
    }
    return best;
  }

  std::vector<double> partial(threads, 0.0);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      double best = 0.0;
      for (std::uint64_t c = t; c < chunks; c += threads) {
        const std::uint64_t begin = c * kEnumerationChunk;
        best = std::max(best, scan_chunk(begin, std::min(begin + kEnumerationChunk, total)));
      }
      partial[t] = best;
    });
  }
  for (auto& th : pool) th.join();
  return *std::max_element(partial.begin(), partial.end());
}

Eigen::MatrixXd random_unit_rows(int rows, int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(rows, dim);
  for (int i = 0; i < rows; ++i) {
    double norm2 = 0.0;
    do {
      for (int j = 0; j < dim; ++j) {
        m(i, j) = gauss(rng);
      }
      norm2 = m.row(i).squaredNorm();
    } while (norm2 == 0.0);
    m.row(i) /= std::sqrt(norm2);
  }
  return m;
}

// Rows become the normalized rows of `update`; zero rows keep the previous
// unit vector.
void normalize_into(const Eigen::MatrixXd& update, Eigen::MatrixXd& target) {
  for (Eigen::Index i = 0; i < update.rows(); ++i) {
    const double n = update.row(i).norm();
    if (n > 0.0) {
      target.row(i) = update.row(i) / n;
    }
  }
}

}  // namespace

BellMatrix::BellMatrix(Eigen::MatrixXd coefficients, std::string name)
    : g(std::move(coefficients)), label(std::move(name)) {
  if (g.rows() < 1 || g.cols() < 1) {
    throw PreconditionError("BellMatrix: needs at least one setting per party");
  }
  if (!g.allFinite()) {
    throw PreconditionError("BellMatrix: non-finite coefficients");
  }
}

double quantum_bound(const BellMatrix& bm) {
  const double sigma_max = linalg::spectral_norm(bm.g);
  return std::sqrt(static_cast<double>(bm.settings_1()) *
                   static_cast<double>(bm.settings_2())) *
         sigma_max;
}

double local_bound(const BellMatrix& bm, std::uint64_t max_evaluations) {
  // Enumerate the party with fewer settings; the other side is solved by
  // sign alignment, max_a1 a1^T (g a2) = sum_i |(g a2)_i|.
  const bool transpose = bm.settings_1() < bm.settings_2();
  const Eigen::MatrixXd g = transpose ? bm.g.transpose() : bm.g;
  const int m = static_cast<int>(g.cols());
  if (m >= 63 || (std::uint64_t{1} << m) > max_evaluations) {
    throw EnumerationLimitError(
        "local_bound: 2^" + std::to_string(m) +
        " assignments exceed the enumeration guard (" +
        std::to_string(max_evaluations) + ")");
  }
  return enumerate_sign_assignments(g);
}

VectorStrategy seesaw_lower_bound(const BellMatrix& bm, int dim, int restarts,
                                  int iters, std::uint64_t seed) {
  if (dim < 1 || restarts < 1 || iters < 1) {
    throw PreconditionError("seesaw_lower_bound: dim, restarts, iters must be >= 1");
  }
  const Eigen::MatrixXd& g = bm.g;
  const int m1 = bm.settings_1();
  const int m2 = bm.settings_2();

  std::mt19937_64 rng(seed);
  VectorStrategy best;
  best.value = -std::numeric_limits<double>::infinity();

  for (int r = 0; r < restarts; ++r) {
    Eigen::MatrixXd v = random_unit_rows(m1, dim, rng);
    Eigen::MatrixXd w = random_unit_rows(m2, dim, rng);
    double value = (g.array() * (v * w.transpose()).array()).sum();
    for (int it = 0; it < iters; ++it) {
      normalize_into(g * w, v);
      normalize_into(g.transpose() * v, w);
      const double next = (g.array() * (v * w.transpose()).array()).sum();
      if (next - value < 1e-12) {
        value = std::max(value, next);
        break;
      }
      value = next;
    }
    if (value > best.value) {
      best.v = v;
      best.w = w;
      best.value = value;
    }
  }
  return best;
}

BoundsReport violation_report(const BellMatrix& bm, bool with_seesaw,
                              std::uint64_t seed) {
  BoundsReport report;
  report.quantum_bound = quantum_bound(bm);
  report.local_bound = local_bound(bm);
  if (with_seesaw) {
    report.seesaw_lb = seesaw_lower_bound(bm, SeesawDefaults::dim(bm),
                                          SeesawDefaults::restarts,
                                          SeesawDefaults::iters, seed)
                           .value;
  }
  if (report.local_bound > 0.0) {
    report.ratio = report.quantum_bound / report.local_bound;
  }
  report.bell_candidate = report.quantum_bound - report.local_bound >
                          1e-9 * std::max(1.0, report.quantum_bound);
  return report;
}

}  // namespace bellscope
