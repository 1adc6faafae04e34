#include "bellscope/realization.hpp"

#include <cmath>
#include <complex>

#include "bellscope/errors.hpp"

namespace bellscope::realization {

namespace {

using Cplx = std::complex<double>;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::MatrixXcd pauli_x() {
  Eigen::MatrixXcd m(2, 2);
  m << Cplx(0, 0), Cplx(1, 0), Cplx(1, 0), Cplx(0, 0);
  return m;
}

Eigen::MatrixXcd pauli_y() {
  Eigen::MatrixXcd m(2, 2);
  m << Cplx(0, 0), Cplx(0, -1), Cplx(0, 1), Cplx(0, 0);
  return m;
}

Eigen::MatrixXcd pauli_z() {
  Eigen::MatrixXcd m(2, 2);
  m << Cplx(1, 0), Cplx(0, 0), Cplx(0, 0), Cplx(-1, 0);
  return m;
}

// Z ... Z (factor at slot) I ... I over `qubits` tensor slots.
Eigen::MatrixXcd jordan_wigner(int qubits, int slot,
                               const Eigen::MatrixXcd& factor) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int s = 0; s < qubits; ++s) {
    if (s < slot) {
      out = kron(out, pauli_z());
    } else if (s == slot) {
      out = kron(out, factor);
    } else {
      out = kron(out, Eigen::MatrixXcd::Identity(2, 2));
    }
  }
  return out;
}

}  // namespace

std::vector<Eigen::MatrixXcd> gamma_matrices(int d) {
  if (d < 1 || d > 12) {
    throw PreconditionError("gamma_matrices: d must be in [1, 12]");
  }
  const int qubits = d / 2;
  std::vector<Eigen::MatrixXcd> gammas;
  gammas.reserve(d);
  for (int j = 0; j < qubits; ++j) {
    gammas.push_back(jordan_wigner(qubits, j, pauli_x()));
    gammas.push_back(jordan_wigner(qubits, j, pauli_y()));
  }
  if (d % 2 == 1) {
    gammas.push_back(jordan_wigner(qubits, qubits, pauli_z()));
  }
  return gammas;
}

Eigen::MatrixXcd observable_from_vector(
    const Eigen::VectorXd& v, const std::vector<Eigen::MatrixXcd>& gammas) {
  if (static_cast<std::size_t>(v.size()) != gammas.size() || gammas.empty()) {
    throw PreconditionError("observable_from_vector: dimension mismatch");
  }
  Eigen::MatrixXcd a =
      Eigen::MatrixXcd::Zero(gammas[0].rows(), gammas[0].cols());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    a += v(k) * gammas[k];
  }
  return a;
}

std::vector<Eigen::MatrixXcd> observables_from_vectors(
    const Eigen::MatrixXd& vectors) {
  if (vectors.cols() < 1) {
    throw PreconditionError("observables_from_vectors: empty ambient dimension");
  }
  for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
    if (std::abs(vectors.row(i).norm() - 1.0) > 1e-9) {
      throw PreconditionError(
          "observables_from_vectors: row " + std::to_string(i) +
          " is not a unit vector");
    }
  }
  const auto gammas = gamma_matrices(static_cast<int>(vectors.cols()));
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(vectors.rows());
  for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
    out.push_back(observable_from_vector(vectors.row(i), gammas));
  }
  return out;
}

RealizationReport verify_realization(const BellMatrix& bm,
                                     const TightnessResult& tr) {
  if (!tr.tight || !tr.vectors) {
    throw PreconditionError("verify_realization: result is not tight");
  }
  const VectorStrategy& vs = *tr.vectors;
  const int dim = static_cast<int>(vs.v.cols());
  if (dim < 1 || dim > 12) {
    throw PreconditionError("verify_realization: vector dimension out of range");
  }
  if (vs.v.rows() != bm.g.rows() || vs.w.rows() != bm.g.cols()) {
    throw PreconditionError("verify_realization: vectors do not match g");
  }

  const auto gammas = gamma_matrices(dim);
  const int local_dim = static_cast<int>(gammas[0].rows());

  // Party 2 uses the transposed generators so that on the maximally
  // entangled state <psi| A (x) B |psi> = tr(A B^T) / D = <v, w>.
  std::vector<Eigen::MatrixXcd> transposed;
  transposed.reserve(gammas.size());
  for (const auto& gamma : gammas) {
    transposed.push_back(gamma.transpose());
  }

  const auto obs_a = observables_from_vectors(vs.v);
  std::vector<Eigen::MatrixXcd> obs_b;
  obs_b.reserve(vs.w.rows());
  for (Eigen::Index j = 0; j < vs.w.rows(); ++j) {
    if (std::abs(vs.w.row(j).norm() - 1.0) > 1e-9) {
      throw PreconditionError("verify_realization: w row is not a unit vector");
    }
    obs_b.push_back(observable_from_vector(vs.w.row(j), transposed));
  }

  const Eigen::MatrixXcd identity =
      Eigen::MatrixXcd::Identity(local_dim, local_dim);
  for (const auto& obs : obs_a) {
    if ((obs * obs - identity).cwiseAbs().maxCoeff() > 1e-9) {
      throw NumericalError("verify_realization: observable is not an involution");
    }
  }
  for (const auto& obs : obs_b) {
    if ((obs * obs - identity).cwiseAbs().maxCoeff() > 1e-9) {
      throw NumericalError("verify_realization: observable is not an involution");
    }
  }

  RealizationReport report;
  report.local_dimension = local_dim;
  report.correlations.resize(bm.g.rows(), bm.g.cols());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < bm.g.rows(); ++i) {
    for (Eigen::Index j = 0; j < bm.g.cols(); ++j) {
      const Cplx trace = (obs_a[i] * obs_b[j].transpose()).trace();
      const double e = trace.real() / local_dim;
      report.correlations(i, j) = e;
      worst = std::max(worst, std::abs(e - vs.v.row(i).dot(vs.w.row(j))));
    }
  }
  report.max_corr_error = worst;
  report.bell_value = (bm.g.array() * report.correlations.array()).sum();

  const double t = quantum_bound(bm);
  if (std::abs(report.bell_value - t) > 1e-8 * std::max(1.0, t)) {
    throw NumericalError("verify_realization: achieved value misses the bound");
  }
  return report;
}

std::pair<int, int> dimension_bounds(int d) {
  if (d < 1) {
    throw PreconditionError("dimension_bounds: d must be >= 1");
  }
  const int lower = (d + 2) / 2;  // ceil((d + 1) / 2)
  const int upper = 1 << (d / 2);
  return {lower, upper};
}

}  // namespace bellscope::realization
