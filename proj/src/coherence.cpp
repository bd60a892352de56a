#include "pwsparse/coherence.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "pwsparse/detail/combinations.hpp"

namespace pwsparse {

namespace {

/// Sum of the m largest entries of v (v is modified).
double top_sum(std::vector<double>& v, int m) {
  std::partial_sort(v.begin(), v.begin() + m, v.end(), std::greater<>());
  double s = 0.0;
  for (int k = 0; k < m; ++k) s += v[k];
  return s;
}

}  // namespace

double mutual_coherence(const Dictionary& d) {
  if (d.cols() < 2) throw UsageError("mutual coherence needs n >= 2");
  const Eigen::MatrixXd g = gram(d);
  double mu = 0.0;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = i + 1; j < g.cols(); ++j)
      mu = std::max(mu, std::abs(g(i, j)));
  return mu;
}

double block_coherence(const Dictionary& d, int i) {
  if (i < 0 || i >= d.block_count()) throw UsageError("block index out of range");
  const int w = d.partition().widths[i];
  if (w < 2) return 0.0;  // single-column block, by convention
  // read from the symmetrized global gram so block coherence is a max over
  // the exact same numbers as the overall coherence (block_mu <= mu holds
  // bit-for-bit)
  const int off = d.partition().offset(i);
  const Eigen::MatrixXd g = gram(d).block(off, off, w, w);
  double mu = 0.0;
  for (int k = 0; k < w; ++k)
    for (int l = k + 1; l < w; ++l) mu = std::max(mu, std::abs(g(k, l)));
  return mu;
}

double babel(const Dictionary& d, int s) {
  const int n = d.cols();
  if (s < 1 || s > n - 1) throw UsageError("babel order s out of [1, n-1]");
  const Eigen::MatrixXd g = gram(d);
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    std::vector<double> v;
    v.reserve(n - 1);
    for (int j = 0; j < n; ++j)
      if (j != i) v.push_back(std::abs(g(i, j)));
    best = std::max(best, top_sum(v, s));
  }
  return best;
}

double cross_block_babel(const Dictionary& d, int i, int j, int m) {
  if (i == j) throw UsageError("cross-block babel needs i != j");
  if (i < 0 || i >= d.block_count() || j < 0 || j >= d.block_count())
    throw UsageError("block index out of range");
  const int ni = d.partition().widths[i];
  if (m < 1 || m > ni) throw UsageError("babel order m out of [1, n_i]");
  const Eigen::MatrixXd cross = d.block(i).transpose() * d.block(j);
  double best = 0.0;
  for (int l = 0; l < cross.cols(); ++l) {
    std::vector<double> v(ni);
    for (int k = 0; k < ni; ++k) v[k] = std::abs(cross(k, l));
    best = std::max(best, top_sum(v, m));
  }
  return best;
}

double within_block_babel(const Dictionary& d, int i, int m) {
  if (i < 0 || i >= d.block_count()) throw UsageError("block index out of range");
  const int ni = d.partition().widths[i];
  if (m == 0) return 0.0;
  if (m < 1 || m > ni - 1) throw UsageError("babel order m out of [1, n_i - 1]");
  const auto blk = d.block(i);
  const Eigen::MatrixXd g = blk.transpose() * blk;
  double best = 0.0;
  for (int k = 0; k < ni; ++k) {
    std::vector<double> v;
    v.reserve(ni - 1);
    for (int l = 0; l < ni; ++l)
      if (l != k) v.push_back(std::abs(g(k, l)));
    best = std::max(best, top_sum(v, m));
  }
  return best;
}

SparkResult spark_bruteforce(const Dictionary& d, int max_card,
                             double rank_tol, long subset_budget) {
  if (max_card < 1 || max_card > d.cols())
    throw UsageError("max_card out of [1, n]");
  SparkResult res;
  for (int k = 1; k <= max_card && !res.found; ++k) {
    detail::for_each_subset(d.cols(), k, subset_budget, res.subsets_examined,
                    [&](const std::vector<int>& idx) {
                      Eigen::MatrixXd sub(d.rows(), k);
                      for (int t = 0; t < k; ++t) sub.col(t) = d.column(idx[t]);
                      Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
                      const auto& sv = svd.singularValues();
                      const double smin = sv(sv.size() - 1);
                      if (k > static_cast<int>(sub.rows()) ||
                          smin <= rank_tol * sv(0)) {
                        res.found = true;
                        res.spark = k;
                        return false;
                      }
                      return true;
                    });
  }
  return res;
}

double spark_lower_bound_piecewise(double mu, double alpha_max, int N) {
  if (mu <= 0.0)
    throw NumericalError("spark lower bound unbounded at mu = 0");
  if (alpha_max < 0.0 || alpha_max > 1.0)
    throw UsageError("alpha_max out of [0, 1]");
  if (N < 2) throw UsageError("spark lower bound needs N >= 2");
  return N * (1.0 + alpha_max * mu) / ((N - 1 + alpha_max) * mu);
}

CoherenceProfile coherence_profile(const Dictionary& d,
                                   std::optional<int> babel_depth) {
  CoherenceProfile p;
  p.mu = d.cols() >= 2 ? mutual_coherence(d) : 0.0;
  const int N = d.block_count();
  p.block_mu.resize(N);
  p.alpha.resize(N);
  for (int i = 0; i < N; ++i) {
    p.block_mu[i] = block_coherence(d, i);
    p.alpha[i] = p.mu > 0.0 ? p.block_mu[i] / p.mu : 0.0;
  }
  p.alpha_max = N ? *std::max_element(p.alpha.begin(), p.alpha.end()) : 0.0;
  if (babel_depth) {
    const int depth = *babel_depth;
    for (int s = 1; s <= std::min(depth, d.cols() - 1); ++s)
      p.babel[s] = babel(d, s);
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        if (i == j) continue;
        for (int m = 1; m <= std::min(depth, d.partition().widths[i]); ++m)
          p.cross_babel[{i, j, m}] = cross_block_babel(d, i, j, m);
      }
      for (int m = 1; m <= std::min(depth, d.partition().widths[i] - 1); ++m)
        p.within_babel[{i, m}] = within_block_babel(d, i, m);
    }
  }
  return p;
}

}  // namespace pwsparse
