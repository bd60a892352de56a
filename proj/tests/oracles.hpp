// Test-only oracles: literal set-maximization definitions of the Babel-type
// quantities and an exhaustive spark search. Deliberately independent of the
// per-column top-m implementations they check.
#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <vector>

#include "pwsparse/dictionary.hpp"

namespace pwsparse::oracle {

template <class F>
void each_subset(int n, int k, F&& visit) {
  std::vector<int> idx(k);
  for (int t = 0; t < k; ++t) idx[t] = t;
  if (k == 0) {
    visit(idx);
    return;
  }
  if (k > n) return;
  while (true) {
    visit(idx);
    int t = k - 1;
    while (t >= 0 && idx[t] == n - k + t) --t;
    if (t < 0) return;
    ++idx[t];
    for (int u = t + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
  }
}

/// mu_1(s) straight from the definition: max over |S| = s, then over
/// reference columns outside S, of the summed absolute inner products.
inline double babel_sets(const Dictionary& d, int s) {
  const Eigen::MatrixXd g = gram(d);
  const int n = d.cols();
  double best = 0.0;
  each_subset(n, s, [&](const std::vector<int>& set) {
    std::vector<char> in(n, 0);
    for (int j : set) in[j] = 1;
    for (int i = 0; i < n; ++i) {
      if (in[i]) continue;
      double sum = 0.0;
      for (int j : set) sum += std::abs(g(i, j));
      best = std::max(best, sum);
    }
  });
  return best;
}

/// mu_1^{i,j}(m) by enumerating index sets inside block i.
inline double cross_block_babel_sets(const Dictionary& d, int i, int j, int m) {
  const Eigen::MatrixXd cross = d.block(i).transpose() * d.block(j);
  double best = 0.0;
  each_subset(d.partition().widths[i], m, [&](const std::vector<int>& set) {
    for (int l = 0; l < cross.cols(); ++l) {
      double sum = 0.0;
      for (int k : set) sum += std::abs(cross(k, l));
      best = std::max(best, sum);
    }
  });
  return best;
}

/// mu_1^{i,i}(m) by enumerating index sets, reference column outside the set.
inline double within_block_babel_sets(const Dictionary& d, int i, int m) {
  const auto blk = d.block(i);
  const Eigen::MatrixXd g = blk.transpose() * blk;
  const int ni = d.partition().widths[i];
  double best = 0.0;
  each_subset(ni, m, [&](const std::vector<int>& set) {
    std::vector<char> in(ni, 0);
    for (int l : set) in[l] = 1;
    for (int k = 0; k < ni; ++k) {
      if (in[k]) continue;
      double sum = 0.0;
      for (int l : set) sum += std::abs(g(k, l));
      best = std::max(best, sum);
    }
  });
  return best;
}

/// Exhaustive spark: smallest k whose best-conditioned k-subset is still
/// rank deficient. Returns 0 when no dependent subset exists up to max_card.
inline int spark_sets(const Dictionary& d, int max_card,
                      double rank_tol = 1e-10) {
  for (int k = 1; k <= max_card; ++k) {
    bool dependent = false;
    each_subset(d.cols(), k, [&](const std::vector<int>& set) {
      if (dependent) return;
      Eigen::MatrixXd sub(d.rows(), k);
      for (int t = 0; t < k; ++t) sub.col(t) = d.column(set[t]);
      if (k > d.rows()) {
        dependent = true;
        return;
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
      const auto& sv = svd.singularValues();
      if (sv(sv.size() - 1) <= rank_tol * sv(0)) dependent = true;
    });
    if (dependent) return k;
  }
  return 0;
}

}  // namespace pwsparse::oracle
