#pragma once

#include <cstdint>

#include "pwsparse/dictionary.hpp"
#include "pwsparse/rng.hpp"

namespace pwsparse {

struct AmplitudeSpec {
  bool fixed = false;
  double fixed_value = 1.0;
  double lo = 0.5;  // magnitude range, random sign
  double hi = 1.5;
};

struct SignalSpec {
  BlockPartition partition;
  SparsityPattern sparsities;
  AmplitudeSpec amplitude;
  std::uint64_t seed = 0;
};

struct GeneratedSignal {
  Eigen::VectorXd x;
  SupportPartition support;
};

/// Orthonormal m x m matrix from QR of a Gaussian matrix, deterministic in
/// the seed (R's diagonal forced positive so the factor is unique).
Eigen::MatrixXd random_orthonormal_basis(int m, std::uint64_t seed);

/// Union of N random orthonormal bases, widths [m, ..., m].
Dictionary union_orthogonal(int m, int N, std::uint64_t seed);

/// [I  H/sqrt(m)] with H the Sylvester Hadamard matrix; coherence exactly
/// m^{-1/2}. m must be a power of two.
Dictionary identity_hadamard(int m);

/// Union of N blocks (1-mixing) Q_i + mixing G_i, column-normalized.
/// mixing = 0 gives orthogonal blocks; the realized coherence profile is
/// whatever it is, measured after the fact.
Dictionary union_general(int m, int N, double mixing, std::uint64_t seed);

/// Piecewise sparse vector: s_i support positions per block drawn uniformly
/// without replacement, amplitudes per the spec.
GeneratedSignal piecewise_sparse_signal(const SignalSpec& spec);

}  // namespace pwsparse
