#pragma once

#include <vector>

#include "pwsparse/types.hpp"

namespace pwsparse::detail {

/// Visits all k-subsets of [0, n) in lexicographic order. The visitor
/// returns false to abort; the function then returns false. Throws
/// NumericalError once `used` exceeds `budget`.
template <class F>
bool for_each_subset(int n, int k, long budget, long& used, F&& visit) {
  if (k == 0) {
    ++used;
    return visit(std::vector<int>{});
  }
  if (k > n) return true;
  std::vector<int> idx(k);
  for (int t = 0; t < k; ++t) idx[t] = t;
  while (true) {
    if (++used > budget)
      throw NumericalError("subset enumeration budget exceeded");
    if (!visit(idx)) return false;
    int t = k - 1;
    while (t >= 0 && idx[t] == n - k + t) --t;
    if (t < 0) return true;
    ++idx[t];
    for (int u = t + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
  }
}

}  // namespace pwsparse::detail
