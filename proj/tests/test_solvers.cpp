#include <doctest.h>

#include <cmath>

#include "pwsparse/conditions.hpp"
#include "pwsparse/generators.hpp"
#include "pwsparse/solvers.hpp"

using namespace pwsparse;

TEST_CASE("least squares on support") {
  const Dictionary d = identity_hadamard(4);
  const Eigen::VectorXd b = d.column(2) * 3.0;
  const auto fit = least_squares_on_support(d, {2}, b);
  CHECK(fit.full_rank);
  CHECK(fit.coefficients(0) == doctest::Approx(3.0));
  CHECK(fit.residual_norm == doctest::Approx(0.0));

  const auto empty = least_squares_on_support(d, {}, b);
  CHECK(empty.residual_norm == doctest::Approx(b.norm()));
}

TEST_CASE("least squares flags dependent columns") {
  Eigen::MatrixXd m(3, 4);
  m << 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1;
  const Dictionary d(m, BlockPartition{{4}});
  const auto fit = least_squares_on_support(d, {0, 1}, d.column(0));
  CHECK(!fit.full_rank);
}

TEST_CASE("OMP recovers a single atom in one iteration") {
  const Dictionary d = identity_hadamard(8);
  RecoveryProblem p{d, d.column(5)};
  const auto r = omp(p, OmpOptions{});
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK(r.support.global_support() == std::vector<int>{5});
  CHECK(r.x(5) == doctest::Approx(1.0));
  CHECK(r.residual_norm <= 1e-8);
}

TEST_CASE("OMP on an orthonormal dictionary picks atoms in correlation order") {
  const Dictionary d(Eigen::MatrixXd::Identity(6, 6), BlockPartition{{6}});
  RecoveryProblem p{d, 2.0 * d.column(0) + 1.0 * d.column(1)};
  const auto r = omp(p, OmpOptions{});
  CHECK(r.converged);
  CHECK(r.iterations == 2);
  CHECK(r.support.global_support() == std::vector<int>{0, 1});
  CHECK(r.x(0) == doctest::Approx(2.0));
  CHECK(r.x(1) == doctest::Approx(1.0));
}

TEST_CASE("OMP recovers an ERC-certified support in exactly s iterations") {
  const Dictionary d = union_general(16, 2, 0.1, 5);
  const auto sp = SupportPartition::from_global({0, 5, 18}, d.partition());
  REQUIRE(erc_exact(d, sp).holds);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(d.cols());
  x(0) = 1.2;
  x(5) = -0.8;
  x(18) = 0.6;
  RecoveryProblem p{d, d.matrix() * x};
  const auto r = omp(p, OmpOptions{});
  CHECK(r.converged);
  CHECK(r.iterations == 3);
  CHECK(r.support.global_support() == sp.global_support());
  CHECK((r.x - x).norm() <= 1e-8);
}

TEST_CASE("OMP is deterministic and its residual decreases") {
  const Dictionary d = union_general(6, 2, 0.8, 13);
  SignalSpec spec{d.partition(), SparsityPattern{{2, 1}}, {}, 99};
  const auto sig = piecewise_sparse_signal(spec);
  RecoveryProblem p{d, d.matrix() * sig.x};

  const auto r1 = omp(p, OmpOptions{});
  const auto r2 = omp(p, OmpOptions{});
  CHECK(r1.support.global_support() == r2.support.global_support());
  CHECK((r1.x - r2.x).cwiseAbs().maxCoeff() == 0.0);

  // residuals are non-increasing across iterations; after each iteration the
  // residual is orthogonal to every selected column
  double prev = p.b.norm();
  for (int cap = 1; cap <= 3; ++cap) {
    OmpOptions o;
    o.max_sparsity = cap;
    o.residual_tol = 0.0;
    const auto r = omp(p, o);
    CHECK(r.residual_norm <= prev + 1e-12);
    prev = r.residual_norm;
    const Eigen::VectorXd residual = p.b - d.matrix() * r.x;
    for (int j : r.support.global_support())
      CHECK(std::abs(d.column(j).dot(residual)) <= 1e-9);
  }
}

TEST_CASE("basis pursuit on an orthonormal square dictionary gives A^T b") {
  const Dictionary d(random_orthonormal_basis(6, 3), BlockPartition{{6}});
  Eigen::VectorXd b(6);
  b << 0.3, -1.2, 0.05, 0.0, 2.0, -0.4;
  const auto r = basis_pursuit(RecoveryProblem{d, b}, BpOptions{});
  CHECK(r.converged);
  CHECK((r.x - d.matrix().transpose() * b).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("basis pursuit of b = 0 is x = 0") {
  const Dictionary d = identity_hadamard(8);
  const auto r =
      basis_pursuit(RecoveryProblem{d, Eigen::VectorXd::Zero(8)}, BpOptions{});
  CHECK(r.converged);
  CHECK(r.x.norm() == 0.0);
}

TEST_CASE("basis pursuit recovers ERC-certified sparse signals") {
  const Dictionary d = union_general(16, 2, 0.1, 5);
  const auto sp = SupportPartition::from_global({2, 19}, d.partition());
  REQUIRE(erc_exact(d, sp).holds);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(d.cols());
  x(2) = 1.0;
  x(19) = -1.4;
  RecoveryProblem p{d, d.matrix() * x};
  const auto r = basis_pursuit(p, BpOptions{});
  CHECK(r.converged);
  CHECK((r.x - x).norm() <= 1e-6 * x.norm());

  // certificate contract
  REQUIRE(r.certificate.has_value());
  const Eigen::VectorXd aty = d.matrix().transpose() * r.certificate->y;
  CHECK(aty.lpNorm<Eigen::Infinity>() <= 1.0 + 1e-7);
  CHECK(r.certificate->duality_gap <= 1e-7 * std::max(1.0, r.objective));

  // l1 sanity: BP never beats the oracle's minimizer in l1 norm by more
  // than the optimality tolerance
  const auto oracle = l0_bruteforce(p, L0Options{});
  REQUIRE(oracle.converged);
  CHECK(r.objective <= oracle.x.lpNorm<1>() + 1e-7);
}

TEST_CASE("l0 brute force finds a single atom") {
  const Dictionary d = identity_hadamard(4);
  const auto r = l0_bruteforce(RecoveryProblem{d, d.column(3)}, L0Options{});
  CHECK(r.converged);
  CHECK(r.objective == 1);
  CHECK(r.all_minimizers == std::vector<std::vector<int>>{{3}});
}

TEST_CASE("l0 brute force reports all minimizers for duplicated columns") {
  Eigen::MatrixXd m(3, 4);
  m << 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1;
  const Dictionary d(m, BlockPartition{{4}});
  const auto r = l0_bruteforce(RecoveryProblem{d, d.column(0)}, L0Options{});
  CHECK(r.converged);
  CHECK(r.objective == 1);
  CHECK(r.all_minimizers == std::vector<std::vector<int>>{{0}, {1}});
}

TEST_CASE("l0 brute force is unique below the condition-5 bound") {
  const Dictionary d = identity_hadamard(4);  // mu = 0.5, alpha_max = 0
  const double bound = cond5_piecewise_uniqueness(0.5, 0.0, 2);  // 2.0
  const int planted = 1;
  REQUIRE(planted < bound);
  RecoveryProblem p{d, 0.9 * d.column(6)};
  const auto r = l0_bruteforce(p, L0Options{});
  CHECK(r.converged);
  CHECK(r.all_minimizers.size() == 1);
  CHECK(r.all_minimizers[0] == std::vector<int>{6});
}

TEST_CASE("l0 brute force reports failure within s_max") {
  const Dictionary d = identity_hadamard(4);
  Eigen::VectorXd dense = Eigen::VectorXd::Ones(4).normalized();
  L0Options o;
  o.s_max = 0;
  const auto r = l0_bruteforce(RecoveryProblem{d, dense}, o);
  CHECK(!r.converged);
}

TEST_CASE("solver input validation") {
  const Dictionary d = identity_hadamard(4);
  Eigen::VectorXd wrong(3);
  wrong.setZero();
  CHECK_THROWS_AS(omp(RecoveryProblem{d, wrong}, OmpOptions{}), UsageError);
  L0Options o;
  o.s_max = 100;
  CHECK_THROWS_AS(l0_bruteforce(RecoveryProblem{d, wrong}, o), UsageError);
}
