#include "pwsparse/generators.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>

namespace pwsparse {

namespace {

Eigen::MatrixXd gaussian_matrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXd g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.normal();
  return g;
}

}  // namespace

Eigen::MatrixXd random_orthonormal_basis(int m, std::uint64_t seed) {
  if (m < 1) throw UsageError("basis dimension must be >= 1");
  Rng rng(seed);
  const Eigen::MatrixXd g = gaussian_matrix(m, m, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix signs so the factorization is unique and seed-deterministic
  for (int j = 0; j < m; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

Dictionary union_orthogonal(int m, int N, std::uint64_t seed) {
  if (m < 2) throw UsageError("union_orthogonal needs m >= 2");
  if (N < 2) throw UsageError("union_orthogonal needs N >= 2");
  Eigen::MatrixXd mat(m, m * N);
  BlockPartition partition;
  for (int i = 0; i < N; ++i) {
    mat.middleCols(i * m, m) = random_orthonormal_basis(m, derive_seed(seed, i));
    partition.widths.push_back(m);
  }
  return Dictionary(std::move(mat), std::move(partition));
}

Dictionary identity_hadamard(int m) {
  if (m < 2 || (m & (m - 1)) != 0)
    throw UsageError("identity_hadamard needs m a power of two >= 2");
  Eigen::MatrixXd h = Eigen::MatrixXd::Ones(1, 1);
  for (int k = 1; k < m; k *= 2) {
    Eigen::MatrixXd next(2 * k, 2 * k);
    next.topLeftCorner(k, k) = h;
    next.topRightCorner(k, k) = h;
    next.bottomLeftCorner(k, k) = h;
    next.bottomRightCorner(k, k) = -h;
    h = next;
  }
  Eigen::MatrixXd mat(m, 2 * m);
  mat.leftCols(m) = Eigen::MatrixXd::Identity(m, m);
  mat.rightCols(m) = h / std::sqrt(static_cast<double>(m));
  return Dictionary(std::move(mat), BlockPartition{{m, m}});
}

Dictionary union_general(int m, int N, double mixing, std::uint64_t seed) {
  if (m < 2) throw UsageError("union_general needs m >= 2");
  if (N < 2) throw UsageError("union_general needs N >= 2");
  if (mixing < 0.0 || mixing > 1.0) throw UsageError("mixing out of [0, 1]");
  Eigen::MatrixXd mat(m, m * N);
  BlockPartition partition;
  for (int i = 0; i < N; ++i) {
    const Eigen::MatrixXd q =
        random_orthonormal_basis(m, derive_seed(seed, i, 1));
    Rng rng(derive_seed(seed, i, 2));
    const Eigen::MatrixXd g = gaussian_matrix(m, m, rng);
    Eigen::MatrixXd blk = (1.0 - mixing) * q + mixing * g;
    for (int j = 0; j < m; ++j) {
      const double nrm = blk.col(j).norm();
      if (nrm == 0.0) throw NumericalError("degenerate blended column");
      blk.col(j) /= nrm;
    }
    mat.middleCols(i * m, m) = blk;
    partition.widths.push_back(m);
  }
  return Dictionary(std::move(mat), std::move(partition));
}

GeneratedSignal piecewise_sparse_signal(const SignalSpec& spec) {
  spec.partition.validate();
  spec.sparsities.validate_against(spec.partition);
  if (!spec.amplitude.fixed && spec.amplitude.lo <= 0.0)
    throw UsageError("amplitude lower bound must be positive");

  GeneratedSignal out;
  out.x = Eigen::VectorXd::Zero(spec.partition.total_columns());
  out.support.partition = spec.partition;
  out.support.supports.assign(spec.partition.block_count(), {});

  Rng rng(derive_seed(spec.seed, 0x5167));
  for (int i = 0; i < spec.partition.block_count(); ++i) {
    const int ni = spec.partition.widths[i];
    const int si = spec.sparsities.s[i];
    // partial Fisher-Yates draw of si positions without replacement
    std::vector<int> pool(ni);
    for (int k = 0; k < ni; ++k) pool[k] = k;
    for (int k = 0; k < si; ++k)
      std::swap(pool[k], pool[k + rng.uniform_int(ni - k)]);
    std::vector<int> picks(pool.begin(), pool.begin() + si);
    std::sort(picks.begin(), picks.end());
    out.support.supports[i] = picks;
    const int off = spec.partition.offset(i);
    for (int k : picks) {
      const double mag = spec.amplitude.fixed
                             ? spec.amplitude.fixed_value
                             : rng.uniform(spec.amplitude.lo, spec.amplitude.hi);
      out.x(off + k) = rng.sign() * mag;
    }
  }
  return out;
}

}  // namespace pwsparse
