#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwsparse {

/// Bad inputs or contract violations (CLI exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical failures: rank deficiency, infeasibility, budget exhaustion
/// (CLI exit code 3).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Contiguous left-to-right split of the dictionary columns into N sub-bases.
struct BlockPartition {
  std::vector<int> widths;

  int block_count() const { return static_cast<int>(widths.size()); }

  int total_columns() const {
    return std::accumulate(widths.begin(), widths.end(), 0);
  }

  /// Global index of the first column of block i.
  int offset(int i) const {
    return std::accumulate(widths.begin(), widths.begin() + i, 0);
  }

  /// Block containing global column j.
  int block_of(int j) const {
    int acc = 0;
    for (int i = 0; i < block_count(); ++i) {
      acc += widths[i];
      if (j < acc) return i;
    }
    throw UsageError("column index " + std::to_string(j) +
                     " outside partition");
  }

  void validate() const {
    if (widths.empty()) throw UsageError("partition needs at least one block");
    for (int w : widths)
      if (w < 1) throw UsageError("partition widths must be positive");
  }
};

/// Per-block sparsity counts (s_1, ..., s_N).
struct SparsityPattern {
  std::vector<int> s;

  int total() const { return std::accumulate(s.begin(), s.end(), 0); }

  void validate_against(const BlockPartition& p) const {
    if (static_cast<int>(s.size()) != p.block_count())
      throw UsageError("sparsity pattern has " + std::to_string(s.size()) +
                       " entries, partition has " +
                       std::to_string(p.block_count()) + " blocks");
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0) throw UsageError("negative sparsity");
      if (s[i] > p.widths[i])
        throw UsageError("sparsity " + std::to_string(s[i]) +
                         " exceeds block width " + std::to_string(p.widths[i]));
    }
  }
};

/// Per-block supports (block-local indices) plus the derived global view.
struct SupportPartition {
  std::vector<std::vector<int>> supports;  // local, sorted ascending
  BlockPartition partition;

  SparsityPattern pattern() const {
    SparsityPattern pat;
    for (const auto& s : supports) pat.s.push_back(static_cast<int>(s.size()));
    return pat;
  }

  std::vector<int> global_support() const {
    std::vector<int> out;
    for (size_t i = 0; i < supports.size(); ++i) {
      int off = partition.offset(static_cast<int>(i));
      for (int k : supports[i]) out.push_back(off + k);
    }
    return out;
  }

  std::vector<int> complement() const {
    std::vector<char> in(partition.total_columns(), 0);
    for (int j : global_support()) in[j] = 1;
    std::vector<int> out;
    for (int j = 0; j < partition.total_columns(); ++j)
      if (!in[j]) out.push_back(j);
    return out;
  }

  /// Partition a global support back into block-local index sets.
  static SupportPartition from_global(const std::vector<int>& global,
                                      const BlockPartition& p);
};

}  // namespace pwsparse
