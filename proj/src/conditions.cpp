#include "pwsparse/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pwsparse {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kOrthogonalTol = 1e-10;

void require_mu(double mu) {
  if (mu <= 0.0) throw UsageError("condition requires mu > 0");
}

}  // namespace

double cond1_general(double mu) {
  require_mu(mu);
  return 0.5 * (1.0 + 1.0 / mu);
}

double cond2_pair_orthogonal_uniqueness(double mu) {
  require_mu(mu);
  return 1.0 / mu;
}

double cond3_pair_orthogonal_equivalence(double mu) {
  require_mu(mu);
  return (kSqrt2 - 0.5) / mu;
}

double cond_orthogonal_union_omp(double mu, int N) {
  require_mu(mu);
  if (N < 2) throw UsageError("union bound requires N >= 2");
  return (0.5 + 0.5 / (N - 1)) / mu;
}

double cond_orthogonal_union_bp(double mu, int N) {
  require_mu(mu);
  if (N < 2) throw UsageError("union bound requires N >= 2");
  return (kSqrt2 - 1.0 + 0.5 / (N - 1)) / mu;
}

double cond5_piecewise_uniqueness(double mu, double alpha_max, int N) {
  require_mu(mu);
  if (alpha_max < 0.0 || alpha_max > 1.0)
    throw UsageError("alpha_max out of [0, 1]");
  if (N < 2) throw UsageError("piecewise bound requires N >= 2");
  return N * (1.0 + alpha_max * mu) / (2.0 * (N - 1 + alpha_max) * mu);
}

ConditionCheck cond4_orthogonal_erc(double mu, const SparsityPattern& pattern) {
  require_mu(mu);
  std::vector<int> s = pattern.s;
  if (s.empty()) throw UsageError("empty sparsity pattern");
  for (int v : s)
    if (v < 0) throw UsageError("negative sparsity");
  std::sort(s.begin(), s.end());
  double lhs = 0.0;
  for (size_t j = 1; j < s.size(); ++j) lhs += mu * s[j] / (1.0 + mu * s[j]);
  const double rhs = 1.0 / (2.0 * (1.0 + mu * s[0]));
  ConditionCheck c;
  c.satisfied = lhs < rhs;
  c.slack = rhs - lhs;
  return c;
}

ConditionCheck cond6_piecewise_erc(double mu, const std::vector<double>& alpha,
                                   const SparsityPattern& pattern) {
  require_mu(mu);
  const size_t N = alpha.size();
  if (pattern.s.size() != N)
    throw UsageError("alpha and sparsity pattern sizes differ");
  for (double a : alpha)
    if (a < 0.0 || a > 1.0) throw UsageError("alpha out of [0, 1]");

  double lhs = 0.0;
  for (size_t i = 0; i < N; ++i) {
    const int si = pattern.s[i];
    if (si < 0) throw UsageError("negative sparsity");
    lhs += 2.0 * mu * si / (1.0 + alpha[i] * mu + (1.0 - alpha[i]) * mu * si);
  }

  ConditionCheck c;
  if (pattern.total() == 0) {
    c.satisfied = true;
    c.slack = 1.0;
    return c;
  }

  // Z maximizes (1 + alpha mu) / ((1 - alpha) s); alpha = 1 or s = 0
  // give +inf, ties go to the lowest index.
  int z = -1;
  double best = -1.0;
  for (size_t i = 0; i < N; ++i) {
    const double den = (1.0 - alpha[i]) * pattern.s[i];
    const double ratio = den == 0.0 ? std::numeric_limits<double>::infinity()
                                    : (1.0 + alpha[i] * mu) / den;
    if (ratio > best) {
      best = ratio;
      z = static_cast<int>(i);
    }
  }
  const double dz =
      1.0 + alpha[z] * mu + (1.0 - alpha[z]) * mu * pattern.s[z];
  const double rhs = 1.0 + (1.0 - alpha[z]) * mu * pattern.s[z] / dz;
  c.satisfied = lhs < rhs;
  c.slack = rhs - lhs;
  c.z = z;
  return c;
}

ErcValue erc_exact(const Dictionary& d, const SupportPartition& support) {
  const std::vector<int> s = support.global_support();
  ErcValue out;
  if (s.empty()) {
    out.holds = true;
    return out;
  }
  const Eigen::MatrixXd as = columns(d, s);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(as);
  qr.setThreshold(1e-10);
  if (qr.rank() < static_cast<Eigen::Index>(s.size()))
    throw NumericalError("support columns dependent; ERC undefined");
  for (int j : support.complement()) {
    const Eigen::VectorXd c = qr.solve(d.column(j));
    out.value = std::max(out.value, c.lpNorm<1>());
  }
  out.holds = out.value < 1.0;
  return out;
}

namespace {

ConditionEntry bound_entry(const std::string& id, double mu, double value,
                           const std::optional<SparsityPattern>& pattern) {
  ConditionEntry e;
  e.id = id;
  e.kind = "bound";
  if (mu <= 0.0) {
    e.unbounded = true;
  } else {
    e.value = value;
    if (pattern) e.satisfied = pattern->total() < value;
  }
  return e;
}

}  // namespace

ConditionReport evaluate_all(double mu, const std::vector<double>& alpha,
                             double max_block_mu,
                             const std::optional<SparsityPattern>& pattern) {
  ConditionReport r;
  r.mu = mu;
  r.alpha = alpha;
  r.N = static_cast<int>(alpha.size());
  const int N = r.N;
  const bool orthogonal = max_block_mu <= kOrthogonalTol;
  const double alpha_max =
      alpha.empty() ? 0.0 : *std::max_element(alpha.begin(), alpha.end());

  auto push = [&](ConditionEntry e) { r.entries.push_back(std::move(e)); };

  push(bound_entry("cond1_general", mu, mu > 0 ? cond1_general(mu) : 0,
                   pattern));

  {
    auto e = bound_entry("cond2_pair_orthogonal_uniqueness", mu,
                         mu > 0 ? cond2_pair_orthogonal_uniqueness(mu) : 0,
                         pattern);
    if (!orthogonal || N != 2) {
      e.applicable = false;
      e.note = N != 2 ? "not applicable (needs N=2 orthogonal pair)"
                      : "assumption: orthogonal union (violated)";
    } else {
      e.note = "assumption: orthogonal union";
    }
    push(e);
    e = bound_entry("cond3_pair_orthogonal_equivalence", mu,
                    mu > 0 ? cond3_pair_orthogonal_equivalence(mu) : 0,
                    pattern);
    if (!orthogonal || N != 2) {
      e.applicable = false;
      e.note = N != 2 ? "not applicable (needs N=2 orthogonal pair)"
                      : "assumption: orthogonal union (violated)";
    } else {
      e.note = "assumption: orthogonal union";
    }
    push(e);
  }

  if (N >= 2) {
    auto e = bound_entry("orthogonal_union_omp", mu,
                         mu > 0 ? cond_orthogonal_union_omp(mu, N) : 0,
                         pattern);
    e.applicable = orthogonal;
    e.note = orthogonal ? "assumption: orthogonal union"
                        : "assumption: orthogonal union (violated)";
    push(e);
    e = bound_entry("orthogonal_union_bp", mu,
                    mu > 0 ? cond_orthogonal_union_bp(mu, N) : 0, pattern);
    e.applicable = orthogonal;
    e.note = orthogonal ? "assumption: orthogonal union"
                        : "assumption: orthogonal union (violated)";
    push(e);

    e = bound_entry("cond5_piecewise_uniqueness", mu,
                    mu > 0 ? cond5_piecewise_uniqueness(mu, alpha_max, N) : 0,
                    pattern);
    push(e);
  } else {
    ConditionEntry e;
    e.id = "cond5_piecewise_uniqueness";
    e.kind = "bound";
    e.applicable = false;
    e.note = "not applicable (N<2)";
    push(e);
  }

  if (pattern && mu > 0.0) {
    {
      ConditionEntry e;
      e.id = "cond4_orthogonal_erc";
      e.kind = "boolean";
      if (N >= 2 && orthogonal) {
        const auto c = cond4_orthogonal_erc(mu, *pattern);
        e.satisfied = c.satisfied;
        e.slack = c.slack;
        e.note = "assumption: orthogonal union";
      } else {
        e.applicable = false;
        e.note = N < 2 ? "not applicable (N<2)"
                       : "assumption: orthogonal union (violated)";
      }
      push(e);
    }
    {
      ConditionEntry e;
      e.id = "cond6_piecewise_erc";
      e.kind = "boolean";
      if (N >= 2) {
        const auto c = cond6_piecewise_erc(mu, alpha, *pattern);
        e.satisfied = c.satisfied;
        e.slack = c.slack;
      } else {
        e.applicable = false;
        e.note = "not applicable (N<2)";
      }
      push(e);
    }
  }
  return r;
}

ConditionReport evaluate_all(const Dictionary& d,
                             const std::optional<SparsityPattern>& pattern) {
  if (pattern) pattern->validate_against(d.partition());
  const CoherenceProfile p = coherence_profile(d);
  const double max_block_mu =
      *std::max_element(p.block_mu.begin(), p.block_mu.end());
  return evaluate_all(p.mu, p.alpha, max_block_mu, pattern);
}

std::vector<BoundTableRow> bound_table_mu(const std::vector<std::string>& ids,
                                          double mu, int N) {
  require_mu(mu);
  std::vector<BoundTableRow> rows;
  for (const auto& id : ids) {
    BoundTableRow row;
    row.condition = id;
    row.param1 = mu;
    row.param2 = N;
    if (id == "cond1") row.value = cond1_general(mu);
    else if (id == "cond2") row.value = cond2_pair_orthogonal_uniqueness(mu);
    else if (id == "cond3") row.value = cond3_pair_orthogonal_equivalence(mu);
    else if (id == "omp_union") row.value = cond_orthogonal_union_omp(mu, N);
    else if (id == "bp_union") row.value = cond_orthogonal_union_bp(mu, N);
    else throw UsageError("unknown condition id '" + id + "'");
    rows.push_back(row);
  }
  return rows;
}

std::vector<BoundTableRow> bound_table_uniqueness_grid(double mu,
                                                       double alpha_max,
                                                       int s1_max,
                                                       int s2_max) {
  require_mu(mu);
  if (s1_max < 0 || s2_max < 0) throw UsageError("empty grid");
  const double b1 = cond1_general(mu);
  const double b2 = cond2_pair_orthogonal_uniqueness(mu);
  const double b5 = cond5_piecewise_uniqueness(mu, alpha_max, 2);
  std::vector<BoundTableRow> rows;
  for (int s1 = 0; s1 <= s1_max; ++s1) {
    for (int s2 = 0; s2 <= s2_max; ++s2) {
      const int total = s1 + s2;
      for (auto [id, b] : {std::pair<const char*, double>{"cond1", b1},
                           {"cond2", b2},
                           {"cond5", b5}}) {
        BoundTableRow row;
        row.condition = id;
        row.param1 = s1;
        row.param2 = s2;
        row.value = b;
        row.satisfied = total < b;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::vector<BoundTableRow> bound_table_erc_grid(double mu, double alpha1,
                                                double alpha2, int s1_max,
                                                int s2_max) {
  require_mu(mu);
  std::vector<BoundTableRow> rows;
  for (int s1 = 0; s1 <= s1_max; ++s1) {
    for (int s2 = 0; s2 <= s2_max; ++s2) {
      const auto c =
          cond6_piecewise_erc(mu, {alpha1, alpha2}, SparsityPattern{{s1, s2}});
      BoundTableRow row;
      row.condition = "cond6";
      row.param1 = s1;
      row.param2 = s2;
      row.value = c.slack;
      row.satisfied = c.satisfied;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace pwsparse
