#pragma once

#include <map>
#include <optional>
#include <tuple>

#include "pwsparse/dictionary.hpp"

namespace pwsparse {

/// Every coherence quantity of a partitioned dictionary in one place.
struct CoherenceProfile {
  double mu = 0.0;                // overall mutual coherence
  std::vector<double> block_mu;   // per-block coherence
  std::vector<double> alpha;      // block_mu[i] / mu (0 when mu == 0)
  double alpha_max = 0.0;
  std::map<int, double> babel;                            // s -> mu_1(s)
  std::map<std::tuple<int, int, int>, double> cross_babel;  // (i,j,m)
  std::map<std::pair<int, int>, double> within_babel;       // (i,m)
};

/// max_{i != j} |<a_i, a_j>|. Requires n >= 2.
double mutual_coherence(const Dictionary& d);

/// Coherence restricted to sub-basis i; 0 for a single-column block.
double block_coherence(const Dictionary& d, int i);

/// Babel function mu_1(s): worst-case sum of the s largest |<a_i, a_j>|,
/// j != i, over reference columns a_i. 1 <= s <= n-1.
double babel(const Dictionary& d, int s);

/// mu_1^{i,j}(m): max over columns of block j of the sum of the m largest
/// cross inner products against block i. Requires i != j, 1 <= m <= n_i.
double cross_block_babel(const Dictionary& d, int i, int j, int m);

/// mu_1^{i,i}(m): same within block i, reference column excluded.
/// Requires 1 <= m <= n_i - 1 (m == 0 returns 0).
double within_block_babel(const Dictionary& d, int i, int m);

struct SparkResult {
  int spark = 0;          // valid when found
  bool found = false;     // false: every subset up to max_card independent
  long subsets_examined = 0;
};

/// Exact spark by increasing-cardinality subset search. Rank decided by
/// sigma_min <= rank_tol * sigma_max. Throws NumericalError past the budget.
SparkResult spark_bruteforce(const Dictionary& d, int max_card,
                             double rank_tol = 1e-10,
                             long subset_budget = 50'000'000);

/// Lower bound N(1 + alpha_max mu) / ((N-1+alpha_max) mu) on spark(A).
/// mu == 0 signals an unbounded spark via NumericalError.
double spark_lower_bound_piecewise(double mu, double alpha_max, int N);

/// Aggregates all the above; tables filled up to babel_depth when given.
CoherenceProfile coherence_profile(const Dictionary& d,
                                   std::optional<int> babel_depth = {});

}  // namespace pwsparse
