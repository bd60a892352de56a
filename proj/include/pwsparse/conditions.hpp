#pragma once

#include <optional>
#include <string>

#include "pwsparse/coherence.hpp"
#include "pwsparse/dictionary.hpp"

namespace pwsparse {

// Sparsity bounds from mutual coherence. All require mu > 0 and throw
// UsageError otherwise. Strict inequality ||x||_0 < bound certifies recovery.

/// General dictionaries: (1 + 1/mu) / 2.
double cond1_general(double mu);

/// Pair of orthogonal bases, uniqueness: 1/mu.
double cond2_pair_orthogonal_uniqueness(double mu);

/// Pair of orthogonal bases, l1/l0 equivalence: (sqrt(2) - 0.5)/mu.
double cond3_pair_orthogonal_equivalence(double mu);

/// Union of N >= 2 orthogonal bases, OMP: (1/2 + 1/(2(N-1)))/mu.
double cond_orthogonal_union_omp(double mu, int N);

/// Union of N >= 2 orthogonal bases, BP: (sqrt(2) - 1 + 1/(2(N-1)))/mu.
double cond_orthogonal_union_bp(double mu, int N);

/// Piecewise uniqueness bound N(1 + alpha_max mu) / (2(N-1+alpha_max) mu).
double cond5_piecewise_uniqueness(double mu, double alpha_max, int N);

struct ConditionCheck {
  bool satisfied = false;
  double slack = 0.0;            // RHS - LHS of the strict inequality
  std::optional<int> z;          // selected block for the piecewise ERC
};

/// ERC for unions of orthogonal bases (sorted sparsities s_1 <= ... <= s_N):
/// sum_{j>=2} mu s_j / (1 + mu s_j) < 1 / (2(1 + mu s_1)). Sorting is done
/// internally.
ConditionCheck cond4_orthogonal_erc(double mu, const SparsityPattern& pattern);

/// Piecewise ERC for unions of general bases. Z is the block maximizing
/// (1 + alpha_i mu) / ((1 - alpha_i) s_i), where alpha_i = 1 or s_i = 0 give
/// an infinite ratio; ties go to the lowest block index. All s_i = 0 is
/// trivially true with z unset.
ConditionCheck cond6_piecewise_erc(double mu, const std::vector<double>& alpha,
                                   const SparsityPattern& pattern);

struct ErcValue {
  double value = 0.0;  // max_{j in T} ||(A_S^T A_S)^{-1} A_S^T a_j||_1
  bool holds = false;  // value < 1
};

/// Exact recovery condition of a concrete support, computed via a QR
/// factorization of A_S. Throws NumericalError on dependent support columns.
ErcValue erc_exact(const Dictionary& d, const SupportPartition& support);

struct ConditionEntry {
  std::string id;
  std::string kind;               // "bound" or "boolean"
  std::optional<double> value;    // bound value or ERC value
  bool unbounded = false;
  std::optional<bool> satisfied;  // present iff a pattern was supplied
  std::optional<double> slack;
  bool applicable = true;
  std::string note;               // e.g. "assumption: orthogonal union"
};

struct ConditionReport {
  double mu = 0.0;
  std::vector<double> alpha;
  int N = 1;
  std::vector<ConditionEntry> entries;
};

/// Evaluates every applicable condition for the given coherence numbers.
/// Conditions 2-4 and the Eq.(7)/(8) union bounds assume an orthogonal
/// union; they are flagged inapplicable when max block coherence > 1e-10.
ConditionReport evaluate_all(double mu, const std::vector<double>& alpha,
                             double max_block_mu,
                             const std::optional<SparsityPattern>& pattern);

ConditionReport evaluate_all(const Dictionary& d,
                             const std::optional<SparsityPattern>& pattern);

struct BoundTableRow {
  std::string condition;
  double param1 = 0.0;
  double param2 = 0.0;
  double value = 0.0;          // bound, or 1/0 feasibility
  std::optional<bool> satisfied;
};

/// Fig. 1 style: one row per requested bound condition at a single mu.
std::vector<BoundTableRow> bound_table_mu(const std::vector<std::string>& ids,
                                          double mu, int N);

/// Fig. 2 style: feasibility of a global-sparsity bound over an (s1,s2) grid.
std::vector<BoundTableRow> bound_table_uniqueness_grid(
    double mu, double alpha_max, int s1_max, int s2_max);

/// Fig. 3 style: cond6 feasibility over an (s1,s2) grid for given alphas.
std::vector<BoundTableRow> bound_table_erc_grid(double mu, double alpha1,
                                                double alpha2, int s1_max,
                                                int s2_max);

}  // namespace pwsparse
