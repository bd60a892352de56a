#pragma once

#include <optional>

#include "pwsparse/dictionary.hpp"

namespace pwsparse {

struct RecoveryProblem {
  const Dictionary& dictionary;
  Eigen::VectorXd b;
};

struct BpCertificate {
  Eigen::VectorXd y;        // dual vector, scaled so ||A^T y||_inf <= 1
  double dual_infnorm = 0;  // ||A^T y||_inf before scaling
  double duality_gap = 0;   // ||x||_1 - b^T y after scaling
};

struct RecoveryResult {
  Eigen::VectorXd x;
  SupportPartition support;
  double residual_norm = 0.0;
  int iterations = 0;
  std::string solver;
  double objective = 0.0;  // ||x||_0 or ||x||_1
  bool converged = false;
  std::string diagnostic;
  std::optional<BpCertificate> certificate;      // basis pursuit only
  std::vector<std::vector<int>> all_minimizers;  // l0 oracle only
};

struct OmpOptions {
  int max_sparsity = 0;             // 0: up to m atoms
  double residual_tol = 1e-8;
  double support_threshold = 1e-6;
};

struct BpOptions {
  double feasibility = 1e-8;
  double optimality = 1e-7;
  int max_iterations = 200;
  double support_threshold = 1e-6;
};

struct L0Options {
  int s_max = 4;
  double fit_tol = 1e-8;
  long subset_budget = 50'000'000;
};

/// Orthogonal matching pursuit: pick the column most correlated with the
/// residual (ties to the lowest index), refit by least squares, repeat until
/// the residual tolerance or the sparsity cap is hit.
RecoveryResult omp(const RecoveryProblem& p, const OmpOptions& opt);

/// Basis pursuit min ||x||_1 s.t. Ax = b via the split reformulation
/// x = u - v solved with a Mehrotra predictor-corrector interior point
/// method. Converged results carry a scaled dual certificate.
RecoveryResult basis_pursuit(const RecoveryProblem& p, const BpOptions& opt);

/// Exhaustive P0 oracle: enumerates supports by increasing cardinality and
/// returns the first cardinality that fits b within fit_tol, reporting every
/// minimizing support at that cardinality. converged=false when nothing
/// fits within s_max.
RecoveryResult l0_bruteforce(const RecoveryProblem& p, const L0Options& opt);

struct LeastSquaresFit {
  Eigen::VectorXd coefficients;
  double residual_norm = 0.0;
  bool full_rank = true;
};

/// Least squares on A_S via column-pivoted QR. Shared by OMP, the oracle
/// and erc_exact.
LeastSquaresFit least_squares_on_support(const Dictionary& d,
                                         const std::vector<int>& support,
                                         const Eigen::VectorXd& b);

}  // namespace pwsparse
