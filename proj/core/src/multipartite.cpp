#include "bellscope/multipartite.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "bellscope/errors.hpp"
#include "bellscope/linalg.hpp"

namespace bellscope {

namespace {

void check_pair(const BellTensor& t, int p, int q) {
  if (p < 1 || q <= p || q > t.parties()) {
    throw PreconditionError("party pair must satisfy 1 <= p < q <= n");
  }
}

std::vector<std::int64_t> strides(const std::vector<int>& shape) {
  std::vector<std::int64_t> s(shape.size());
  std::int64_t acc = 1;
  for (int i = static_cast<int>(shape.size()) - 1; i >= 0; --i) {
    s[i] = acc;
    acc *= shape[i];
  }
  return s;
}

}  // namespace

BellTensor::BellTensor(std::vector<int> shape_in, std::vector<double> coeffs_in)
    : shape(std::move(shape_in)), coeffs(std::move(coeffs_in)) {
  if (shape.size() < 2) {
    throw PreconditionError("BellTensor: needs at least two parties");
  }
  std::int64_t expected = 1;
  for (int m : shape) {
    if (m < 1) {
      throw PreconditionError("BellTensor: every party needs >= 1 setting");
    }
    if (expected > std::numeric_limits<std::int64_t>::max() / m) {
      throw PreconditionError("BellTensor: shape overflows");
    }
    expected *= m;
  }
  if (static_cast<std::int64_t>(coeffs.size()) != expected) {
    throw PreconditionError("BellTensor: coefficient count does not match shape");
  }
  for (double c : coeffs) {
    if (!std::isfinite(c)) {
      throw PreconditionError("BellTensor: non-finite coefficient");
    }
  }
}

Eigen::MatrixXd BellTensor::slice(int p, int q,
                                  const std::vector<int>& rest) const {
  check_pair(*this, p, q);
  const auto st = strides(shape);
  std::int64_t base = 0;
  int r = 0;
  for (int i = 0; i < parties(); ++i) {
    if (i == p - 1 || i == q - 1) continue;
    base += static_cast<std::int64_t>(rest.at(r++)) * st[i];
  }
  Eigen::MatrixXd out(shape[p - 1], shape[q - 1]);
  for (int a = 0; a < shape[p - 1]; ++a) {
    for (int b = 0; b < shape[q - 1]; ++b) {
      out(a, b) = coeffs[base + a * st[p - 1] + b * st[q - 1]];
    }
  }
  return out;
}

std::vector<double> slice_norms(const BellTensor& t, int p, int q) {
  check_pair(t, p, q);
  std::vector<int> rest_shape;
  for (int i = 0; i < t.parties(); ++i) {
    if (i != p - 1 && i != q - 1) rest_shape.push_back(t.shape[i]);
  }
  std::int64_t count = 1;
  for (int m : rest_shape) count *= m;

  std::vector<double> norms;
  norms.reserve(count);
  std::vector<int> rest(rest_shape.size(), 0);
  for (std::int64_t it = 0; it < count; ++it) {
    norms.push_back(linalg::spectral_norm(t.slice(p, q, rest)));
    for (int i = static_cast<int>(rest.size()) - 1; i >= 0; --i) {
      if (++rest[i] < rest_shape[i]) break;
      rest[i] = 0;
    }
  }
  return norms;
}

double multipartite_bound(const BellTensor& t, int p, int q) {
  const auto norms = slice_norms(t, p, q);
  const double sum = std::accumulate(norms.begin(), norms.end(), 0.0);
  return std::sqrt(static_cast<double>(t.shape[p - 1]) *
                   static_cast<double>(t.shape[q - 1])) *
         sum;
}

std::tuple<int, int, double> best_pair_bound(const BellTensor& t) {
  int best_p = 1;
  int best_q = 2;
  double best = std::numeric_limits<double>::infinity();
  for (int p = 1; p <= t.parties(); ++p) {
    for (int q = p + 1; q <= t.parties(); ++q) {
      const double bound = multipartite_bound(t, p, q);
      if (bound < best) {
        best = bound;
        best_p = p;
        best_q = q;
      }
    }
  }
  return {best_p, best_q, best};
}

double multipartite_local_bound(const BellTensor& t,
                                std::uint64_t max_evaluations) {
  const int n = t.parties();
  int sign_bits = 0;
  std::vector<int> offset(n, 0);
  for (int i = 1; i < n; ++i) {
    offset[i] = sign_bits;
    sign_bits += t.shape[i];
  }
  if (sign_bits >= 63 ||
      (std::uint64_t{1} << sign_bits) > max_evaluations) {
    throw EnumerationLimitError(
        "multipartite_local_bound: 2^" + std::to_string(sign_bits) +
        " assignments exceed the enumeration guard");
  }

  // For every flat coefficient index, which assignment bits flip its sign.
  const auto st = strides(t.shape);
  const std::int64_t size = t.size();
  std::vector<std::uint64_t> mask(size, 0);
  for (std::int64_t f = 0; f < size; ++f) {
    for (int i = 1; i < n; ++i) {
      const int xi = static_cast<int>((f / st[i]) % t.shape[i]);
      mask[f] |= std::uint64_t{1} << (offset[i] + xi);
    }
  }

  const int m1 = t.shape[0];
  std::vector<double> row(m1);
  double best = 0.0;
  const std::uint64_t total = std::uint64_t{1} << sign_bits;
  for (std::uint64_t assign = 0; assign < total; ++assign) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::int64_t f = 0; f < size; ++f) {
      const double sign = std::popcount(assign & mask[f]) & 1 ? -1.0 : 1.0;
      row[f / st[0]] += sign * t.coeffs[f];
    }
    double value = 0.0;
    for (double y : row) value += std::abs(y);
    best = std::max(best, value);
  }
  return best;
}

BellMatrix as_bell_matrix(const BellTensor& t) {
  if (t.parties() != 2) {
    throw PreconditionError("as_bell_matrix: tensor is not bipartite");
  }
  Eigen::MatrixXd g(t.shape[0], t.shape[1]);
  for (int i = 0; i < t.shape[0]; ++i) {
    for (int j = 0; j < t.shape[1]; ++j) {
      g(i, j) = t.coeffs[static_cast<std::size_t>(i) * t.shape[1] + j];
    }
  }
  return BellMatrix(std::move(g));
}

}  // namespace bellscope
