#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bellscope/errors.hpp"
#include "bellscope/linalg.hpp"
#include "test_support.hpp"

using namespace bellscope;
using testsupport::gaussian_matrix;

namespace {

Eigen::MatrixXd chsh() {
  Eigen::MatrixXd g(2, 2);
  g << 1, 1, 1, -1;
  return g;
}

Eigen::MatrixXd lopsided() {
  Eigen::MatrixXd g(2, 2);
  g << 1, 1, 1, 0;
  return g;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("svd: chsh has two equal singular values sqrt(2)") {
  const auto dec = linalg::svd(chsh());
  REQUIRE(dec.singular_values.size() == 2);
  CHECK(dec.singular_values(0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(dec.singular_values(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("svd: identity") {
  const auto dec = linalg::svd(Eigen::MatrixXd::Identity(2, 2));
  CHECK(dec.singular_values(0) == doctest::Approx(1.0));
  CHECK(dec.singular_values(1) == doctest::Approx(1.0));
  CHECK(max_abs(dec.v * dec.v.transpose() - Eigen::MatrixXd::Identity(2, 2)) <= 1e-10);
}

TEST_CASE("svd: top singular value of [[1,1],[1,0]] is the golden ratio") {
  // eigenvalues of g g^T = [[2,1],[1,1]] are (3 +- sqrt(5))/2
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const auto dec = linalg::svd(lopsided());
  CHECK(dec.singular_values(0) == doctest::Approx(golden).epsilon(1e-12));
  CHECK(dec.singular_values(1) == doctest::Approx(golden - 1.0).epsilon(1e-12));
}

TEST_CASE("svd: reconstruction and orthogonality residuals on random input") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int rows = 1 + static_cast<int>(seed % 8);
    const int cols = 1 + static_cast<int>((seed / 8) % 8);
    const Eigen::MatrixXd g = gaussian_matrix(rows, cols, 1000 + seed);
    const auto dec = linalg::svd(g);

    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(rows, cols);
    for (Eigen::Index i = 0; i < dec.singular_values.size(); ++i) {
      s(i, i) = dec.singular_values(i);
    }
    const double scale = std::max(1.0, max_abs(g));
    CHECK(max_abs(dec.v * s * dec.w.transpose() - g) <= 1e-9 * scale);
    CHECK(max_abs(dec.v.transpose() * dec.v -
                  Eigen::MatrixXd::Identity(rows, rows)) <= 1e-10);
    CHECK(max_abs(dec.w.transpose() * dec.w -
                  Eigen::MatrixXd::Identity(cols, cols)) <= 1e-10);
    for (Eigen::Index i = 1; i < dec.singular_values.size(); ++i) {
      CHECK(dec.singular_values(i) <= dec.singular_values(i - 1));
    }
  }
}

TEST_CASE("spectral norm scaling and transpose invariance") {
  for (double c : {-2.0, 0.5, 3.0}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Eigen::MatrixXd g = gaussian_matrix(4, 3, 50 + seed);
      const double base = linalg::spectral_norm(g);
      CHECK(linalg::spectral_norm(c * g) ==
            doctest::Approx(std::abs(c) * base).epsilon(1e-12));
      CHECK(linalg::spectral_norm(g.transpose()) ==
            doctest::Approx(base).epsilon(1e-12));
    }
  }
}

TEST_CASE("degeneracy counting") {
  Eigen::VectorXd sv(2);
  sv << std::sqrt(2.0), std::sqrt(2.0);
  CHECK(linalg::degeneracy(sv, 1e-9) == 2);

  Eigen::VectorXd distinct(2);
  distinct << 2.0, 1.0;
  CHECK(linalg::degeneracy(distinct, 1e-9) == 1);

  Eigen::VectorXd banded(3);
  banded << 1.0, 1.0 - 1e-12, 0.5;
  CHECK(linalg::degeneracy(banded, 1e-9) == 2);

  Eigen::VectorXd zero(2);
  zero << 0.0, 0.0;
  CHECK(linalg::degeneracy(zero, 1e-9) == 2);

  CHECK_THROWS_AS(linalg::degeneracy(Eigen::VectorXd(), 1e-9), PreconditionError);
  CHECK_THROWS_AS(linalg::degeneracy(sv, 0.0), PreconditionError);
  Eigen::VectorXd increasing(2);
  increasing << 1.0, 2.0;
  CHECK_THROWS_AS(linalg::degeneracy(increasing, 1e-9), PreconditionError);
}

TEST_CASE("truncate: full and partial") {
  const auto dec = linalg::svd(chsh());
  const auto [v2, w2] = linalg::truncate(dec, 2);
  CHECK(max_abs(v2 - dec.v) == 0.0);
  CHECK(max_abs(w2 - dec.w) == 0.0);

  const auto lop = linalg::svd(lopsided());
  const auto [v1, w1] = linalg::truncate(lop, 1);
  REQUIRE(v1.cols() == 1);
  REQUIRE(w1.cols() == 1);
  CHECK(v1.col(0).norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w1.col(0).norm() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(linalg::truncate(dec, 0), PreconditionError);
  CHECK_THROWS_AS(linalg::truncate(dec, 3), PreconditionError);
}

TEST_CASE("pseudoinverse: Moore-Penrose conditions") {
  CHECK(max_abs(linalg::pseudoinverse(Eigen::MatrixXd::Identity(3, 3)) -
                Eigen::MatrixXd::Identity(3, 3)) <= 1e-12);

  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag(0, 0) = 2.0;
  const Eigen::MatrixXd diag_pinv = linalg::pseudoinverse(diag);
  CHECK(diag_pinv(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(diag_pinv(1, 1) == doctest::Approx(0.0));

  // rank-1 symmetric: pinv = Q^T / ||Q||_F^2
  Eigen::MatrixXd ones(2, 2);
  ones << 1, 1, 1, 1;
  CHECK(max_abs(linalg::pseudoinverse(ones) - 0.25 * ones) <= 1e-12);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int rows = 2 + static_cast<int>(seed % 4);
    const int cols = 2 + static_cast<int>((seed / 4) % 4);
    Eigen::MatrixXd q = gaussian_matrix(rows, cols, 300 + seed);
    if (seed % 3 == 0) q.col(0) = q.col(cols - 1);  // force rank deficiency
    const Eigen::MatrixXd pinv = linalg::pseudoinverse(q);
    CHECK(max_abs(q * pinv * q - q) <= 1e-8);
    CHECK(max_abs(pinv * q * pinv - pinv) <= 1e-8);
    CHECK(max_abs((q * pinv).transpose() - q * pinv) <= 1e-8);
    CHECK(max_abs((pinv * q).transpose() - pinv * q) <= 1e-8);
  }
}

TEST_CASE("pseudoinverse of an orthogonal matrix is its transpose") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::MatrixXd u = linalg::random_orthogonal(5, seed);
    CHECK(max_abs(linalg::pseudoinverse(u) - u.transpose()) <= 1e-10);
  }
}

TEST_CASE("psd_sqrt: identity, diagonal, indefinite") {
  const auto root_id = linalg::psd_sqrt(Eigen::MatrixXd::Identity(2, 2));
  REQUIRE(root_id.has_value());
  CHECK(max_abs(*root_id - Eigen::MatrixXd::Identity(2, 2)) <= 1e-12);

  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag(0, 0) = 4.0;
  diag(1, 1) = 1.0;
  const auto root_diag = linalg::psd_sqrt(diag);
  REQUIRE(root_diag.has_value());
  Eigen::MatrixXd want = Eigen::MatrixXd::Zero(2, 2);
  want(0, 0) = 2.0;
  want(1, 1) = 1.0;
  CHECK(max_abs(*root_diag - want) <= 1e-12);

  Eigen::MatrixXd indefinite = Eigen::MatrixXd::Zero(2, 2);
  indefinite(0, 0) = 1.0;
  indefinite(1, 1) = -0.5;
  CHECK_FALSE(linalg::psd_sqrt(indefinite, 1e-8).has_value());

  Eigen::MatrixXd asym(2, 2);
  asym << 1, 1, 0, 1;
  CHECK_THROWS_AS(linalg::psd_sqrt(asym), PreconditionError);
}

TEST_CASE("psd_sqrt: square of the root reproduces X on random PSD input") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Eigen::MatrixXd b = gaussian_matrix(4, 4, 700 + seed);
    const Eigen::MatrixXd x = b * b.transpose();
    const auto root = linalg::psd_sqrt(x);
    REQUIRE(root.has_value());
    const double scale = std::max(1.0, max_abs(x));
    CHECK(max_abs(*root * *root - x) <= 1e-8 * scale);
    // taking the root twice composes cleanly
    const auto root2 = linalg::psd_sqrt(*root);
    REQUIRE(root2.has_value());
    CHECK(max_abs(*root2 * *root2 - *root) <= 1e-8 * std::max(1.0, max_abs(*root)));
  }
}

TEST_CASE("numeric_rank") {
  CHECK(linalg::numeric_rank(Eigen::MatrixXd::Identity(3, 3), 1e-10) == 3);
  CHECK(linalg::numeric_rank(Eigen::MatrixXd::Zero(2, 2), 1e-10) == 0);
  Eigen::MatrixXd ones(2, 2);
  ones << 1, 1, 1, 1;
  CHECK(linalg::numeric_rank(ones, 1e-10) == 1);
}

TEST_CASE("random_orthogonal: orthogonality, determinism, n=1") {
  const Eigen::MatrixXd tiny = linalg::random_orthogonal(1, 3);
  CHECK(std::abs(std::abs(tiny(0, 0)) - 1.0) <= 1e-12);

  const Eigen::MatrixXd u = linalg::random_orthogonal(3, 7);
  CHECK(max_abs(u.transpose() * u - Eigen::MatrixXd::Identity(3, 3)) <= 1e-10);

  const Eigen::MatrixXd a = linalg::random_orthogonal(4, 7);
  const Eigen::MatrixXd b = linalg::random_orthogonal(4, 7);
  CHECK(max_abs(a - b) == 0.0);
  const Eigen::MatrixXd c = linalg::random_orthogonal(4, 8);
  CHECK(max_abs(a - c) > 0.0);

  CHECK_THROWS_AS(linalg::random_orthogonal(0, 1), PreconditionError);
}
