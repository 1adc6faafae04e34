#include "bellscope/families.hpp"

#include <cmath>
#include <random>

#include "bellscope/errors.hpp"
#include "bellscope/linalg.hpp"

namespace bellscope::families {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::string tag(const std::string& family, const std::string& params) {
  return params.empty() ? family : family + "(" + params + ")";
}

}  // namespace

FamilyInstance chsh_power(int k) {
  if (k < 1 || k > 6) {
    throw PreconditionError("chsh_power: k must be in [1, 6]");
  }
  Eigen::MatrixXd chsh(2, 2);
  chsh << 1, 1, 1, -1;
  Eigen::MatrixXd g = chsh;
  for (int i = 1; i < k; ++i) {
    g = kron(g, chsh);
  }
  FamilyInstance fi;
  fi.provenance = tag("chsh-power", "k=" + std::to_string(k));
  fi.instance = BellMatrix(std::move(g), fi.provenance);
  fi.analytic_quantum_bound = std::pow(2.0, 1.5 * k);
  if (k == 1) {
    fi.analytic_local_bound = 2.0;
  } else if (k % 2 == 0) {
    // for even powers the classical and quantum values coincide
    fi.analytic_local_bound = std::pow(2.0, 1.5 * k);
  }
  fi.analytic_degeneracy = 1 << k;
  return fi;
}

FamilyInstance braunstein_caves(int m) {
  if (m < 2) {
    throw PreconditionError("braunstein_caves: M must be >= 2");
  }
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
  for (int x1 = 1; x1 <= m; ++x1) {
    for (int x2 = 1; x2 <= m; ++x2) {
      if (x1 - x2 >= 0 && x1 - x2 <= 1) {
        g(x1 - 1, x2 - 1) = 1.0;
      } else if (x1 == 1 && x2 == m) {
        g(x1 - 1, x2 - 1) = -1.0;
      }
    }
  }
  FamilyInstance fi;
  fi.provenance = tag("braunstein-caves", "M=" + std::to_string(m));
  fi.instance = BellMatrix(std::move(g), fi.provenance);
  fi.analytic_quantum_bound = 2.0 * m * std::cos(kPi / (2.0 * m));
  fi.analytic_degeneracy = 2;
  return fi;
}

FamilyInstance greater_equal(int m) {
  if (m < 2) {
    throw PreconditionError("greater_equal: M must be >= 2");
  }
  Eigen::MatrixXd g(m, m);
  for (int x1 = 1; x1 <= m; ++x1) {
    for (int x2 = 1; x2 <= m; ++x2) {
      g(x1 - 1, x2 - 1) = x1 >= x2 ? 1.0 : -1.0;
    }
  }
  FamilyInstance fi;
  fi.provenance = tag("greater-equal", "M=" + std::to_string(m));
  fi.instance = BellMatrix(std::move(g), fi.provenance);
  fi.analytic_quantum_bound = m / std::sin(kPi / (2.0 * m));
  fi.analytic_local_bound = static_cast<double>((m * m + 1) / 2);
  fi.analytic_degeneracy = 2;
  return fi;
}

FamilyInstance binary_digits(int m2) {
  if (m2 < 1 || m2 > 20) {
    throw PreconditionError("binary_digits: M2 must be in [1, 20]");
  }
  const int m1 = 1 << (m2 - 1);
  Eigen::MatrixXd g(m1, m2);
  for (int x1 = 1; x1 <= m1; ++x1) {
    for (int x2 = 1; x2 <= m2; ++x2) {
      const int digit = ((x1 - 1) >> (x2 - 1)) & 1;
      g(x1 - 1, x2 - 1) = 1.0 - 2.0 * digit;
    }
  }
  FamilyInstance fi;
  fi.provenance = tag("binary-digits", "M2=" + std::to_string(m2));
  fi.instance = BellMatrix(std::move(g), fi.provenance);
  fi.analytic_quantum_bound = m1 * std::sqrt(static_cast<double>(m2));
  fi.analytic_degeneracy = m2;
  return fi;
}

Eigen::MatrixXd fishburn_reeds_f(int k) {
  if (k < 2 || k > 8) {
    throw PreconditionError("fishburn_reeds: k must be in [2, 8]");
  }
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(k * (k - 1), k);
  int row = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      f(row, i) = -1.0;
      f(row, j) = 1.0;
      ++row;
      f(row, i) = 1.0;
      f(row, j) = 1.0;
      ++row;
    }
  }
  return f;
}

FamilyInstance fishburn_reeds(int k) {
  const Eigen::MatrixXd f = fishburn_reeds_f(k);
  const int n = k * (k - 1);
  Eigen::MatrixXd g =
      f * f.transpose() - (4.0 / 3.0) * Eigen::MatrixXd::Identity(n, n);
  FamilyInstance fi;
  fi.provenance = tag("fishburn-reeds", "k=" + std::to_string(k));
  fi.instance = BellMatrix(std::move(g), fi.provenance);
  fi.analytic_quantum_bound = (2.0 * (k - 1) - 4.0 / 3.0) * n;
  fi.analytic_degeneracy = k;
  if (k == 5) {
    fi.analytic_local_bound = 280.0 / 3.0;  // quantum-to-classical ratio 10/7
  }
  return fi;
}

FamilyInstance mermin(int n) {
  if (n < 2 || n > 12) {
    throw PreconditionError("mermin: n must be in [2, 12]");
  }
  std::vector<int> shape(n, 2);
  std::vector<double> coeffs;
  coeffs.reserve(std::size_t{1} << n);
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    // settings are 1 or 2 per party; the first party varies slowest
    int sum = n;
    for (int i = 0; i < n; ++i) {
      sum += (b >> (n - 1 - i)) & 1;
    }
    // cos(pi/2 * sum) snapped to exact values
    static constexpr double kTable[4] = {1.0, 0.0, -1.0, 0.0};
    coeffs.push_back(kTable[sum % 4]);
  }
  FamilyInstance fi;
  fi.provenance = tag("mermin", "n=" + std::to_string(n));
  fi.instance = BellTensor(std::move(shape), std::move(coeffs));
  fi.analytic_quantum_bound = std::pow(2.0, n - 1);
  return fi;
}

FamilyInstance qubit_inequality(double s44) {
  if (!(s44 >= 0.0) || s44 >= 2.0) {
    throw PreconditionError("qubit_inequality: s44 must be in [0, 2)");
  }
  Eigen::MatrixXd h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Eigen::MatrixXd z(2, 2);
  z << 1, 0, 0, -1;
  const Eigen::MatrixXd v = kron(h, h);
  const Eigen::MatrixXd w = kron(z, h);
  Eigen::Vector4d s(2.0, 2.0, 2.0, s44);
  Eigen::MatrixXd g = v * s.asDiagonal() * w.transpose();
  FamilyInstance fi;
  fi.provenance = "qubit";
  fi.instance = BellMatrix(std::move(g), fi.provenance);
  fi.analytic_quantum_bound = 8.0;
  if (s44 == 1.0) {
    fi.analytic_local_bound = 4.0 * std::sqrt(2.0);
  }
  fi.analytic_degeneracy = 3;
  return fi;
}

FamilyInstance random_dimension_witness(int d, std::uint64_t seed) {
  if (d < 2 || d > 32) {
    throw PreconditionError("random_dimension_witness: d must be in [2, 32]");
  }
  const int k = (d - 1) / 2 + 1;
  std::mt19937_64 sub(seed);
  Eigen::MatrixXd g(k * d, d);
  for (int block = 0; block < k; ++block) {
    g.middleRows(block * d, d) = linalg::random_orthogonal(d, sub());
  }
  FamilyInstance fi;
  fi.provenance = tag("witness", "d=" + std::to_string(d) +
                                     ",seed=" + std::to_string(seed));
  fi.instance = BellMatrix(std::move(g), fi.provenance);
  fi.analytic_quantum_bound = static_cast<double>(k) * d;
  fi.analytic_degeneracy = d;
  return fi;
}

}  // namespace bellscope::families
