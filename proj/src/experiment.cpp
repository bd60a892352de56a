#include "pwsparse/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "pwsparse/conditions.hpp"
#include "pwsparse/io.hpp"

namespace pwsparse {

void ExperimentConfig::validate() const {
  if (schema_version != 1) throw UsageError("unsupported config schema version");
  if (trials < 1) throw UsageError("trials must be >= 1");
  if (grid.empty()) throw UsageError("empty sparsity grid");
  if (solvers.empty()) throw UsageError("no solvers selected");
  for (const auto& s : solvers)
    if (s != "omp" && s != "bp")
      throw UsageError("unknown solver '" + s + "' (use omp or bp)");
  if (bp_options.feasibility <= 0 || bp_options.optimality <= 0 ||
      omp_options.residual_tol <= 0 || success_rel_tol <= 0)
    throw UsageError("tolerances must be positive");
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config parse error: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    cfg.schema_version = j.value("schema_version", 1);
    cfg.dictionary_file = j.value("dictionary_file", std::string{});
    if (j.contains("widths"))
      cfg.widths = j["widths"].get<std::vector<int>>();
    if (j.contains("generator")) {
      const auto& g = j["generator"];
      cfg.generator.kind = g.value("kind", cfg.generator.kind);
      cfg.generator.m = g.value("m", cfg.generator.m);
      cfg.generator.N = g.value("N", cfg.generator.N);
      cfg.generator.mixing = g.value("mixing", cfg.generator.mixing);
    }
    cfg.trials = j.value("trials", cfg.trials);
    for (const auto& row : j.at("grid"))
      cfg.grid.push_back(SparsityPattern{row.get<std::vector<int>>()});
    if (j.contains("solvers"))
      cfg.solvers = j["solvers"].get<std::vector<std::string>>();
    cfg.master_seed = j.value("seed", std::uint64_t{0});
    if (j.contains("amplitude")) {
      const auto& a = j["amplitude"];
      if (a.contains("fixed")) {
        cfg.amplitude.fixed = true;
        cfg.amplitude.fixed_value = a["fixed"].get<double>();
      } else {
        cfg.amplitude.lo = a.value("lo", cfg.amplitude.lo);
        cfg.amplitude.hi = a.value("hi", cfg.amplitude.hi);
      }
    }
    if (j.contains("tolerances")) {
      const auto& t = j["tolerances"];
      cfg.bp_options.feasibility =
          t.value("bp_feasibility", cfg.bp_options.feasibility);
      cfg.bp_options.optimality =
          t.value("bp_optimality", cfg.bp_options.optimality);
      cfg.omp_options.residual_tol =
          t.value("omp_residual", cfg.omp_options.residual_tol);
      cfg.success_rel_tol = t.value("success_rel", cfg.success_rel_tol);
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config schema violation: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

namespace {

Dictionary make_trial_dictionary(const ExperimentConfig& cfg,
                                 std::uint64_t seed) {
  const auto& g = cfg.generator;
  if (g.kind == "union_orthogonal") return union_orthogonal(g.m, g.N, seed);
  if (g.kind == "identity_hadamard") return identity_hadamard(g.m);
  if (g.kind == "union_general") return union_general(g.m, g.N, g.mixing, seed);
  throw UsageError("unknown generator kind '" + g.kind + "'");
}

bool supports_equal(const SupportPartition& a, const SupportPartition& b) {
  return a.global_support() == b.global_support();
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const bool fixed_dict = !cfg.dictionary_file.empty();
  std::optional<Dictionary> fixed;
  if (fixed_dict) {
    BlockPartition p{cfg.widths};
    fixed = load_dictionary(cfg.dictionary_file, p, false).dictionary;
  }
  const bool run_omp =
      std::count(cfg.solvers.begin(), cfg.solvers.end(), "omp") > 0;
  const bool run_bp =
      std::count(cfg.solvers.begin(), cfg.solvers.end(), "bp") > 0;

  std::vector<ExperimentRow> rows;
  for (size_t gi = 0; gi < cfg.grid.size(); ++gi) {
    const SparsityPattern& pat = cfg.grid[gi];
    ExperimentRow row;
    row.pattern = pat;
    row.trials = cfg.trials;
    int omp_ok = 0, bp_ok = 0, erc_ok = 0;
    double mu_sum = 0.0, amax_sum = 0.0;
    std::vector<double> alpha_sum;

    for (int ti = 0; ti < cfg.trials; ++ti) {
      const std::uint64_t trial_seed = derive_seed(cfg.master_seed, gi, ti);
      std::optional<Dictionary> scratch;
      if (!fixed_dict) scratch = make_trial_dictionary(cfg, trial_seed);
      const Dictionary* dict = fixed_dict ? &*fixed : &*scratch;
      pat.validate_against(dict->partition());

      SignalSpec spec{dict->partition(), pat, cfg.amplitude,
                      derive_seed(trial_seed, 0x51)};
      const GeneratedSignal sig = piecewise_sparse_signal(spec);
      const Eigen::VectorXd b = dict->matrix() * sig.x;

      const CoherenceProfile prof = coherence_profile(*dict);
      mu_sum += prof.mu;
      amax_sum += prof.alpha_max;
      if (alpha_sum.empty()) alpha_sum.assign(prof.alpha.size(), 0.0);
      for (size_t k = 0; k < prof.alpha.size(); ++k)
        alpha_sum[k] += prof.alpha[k];

      bool erc_holds = false;
      try {
        erc_holds = erc_exact(*dict, sig.support).holds;
      } catch (const NumericalError&) {
      }
      if (erc_holds) ++erc_ok;

      const double xnorm = sig.x.norm();
      auto success = [&](const RecoveryResult& r) {
        if (!supports_equal(r.support, sig.support)) return false;
        return (r.x - sig.x).norm() <= cfg.success_rel_tol * std::max(1.0, xnorm);
      };
      RecoveryProblem problem{*dict, b};
      if (run_omp) {
        OmpOptions o = cfg.omp_options;
        o.max_sparsity = std::max(pat.total(), 1);
        if (success(omp(problem, o))) ++omp_ok;
      }
      if (run_bp && success(basis_pursuit(problem, cfg.bp_options))) ++bp_ok;
    }

    row.omp_success = run_omp ? double(omp_ok) / cfg.trials
                              : std::nan("");
    row.bp_success = run_bp ? double(bp_ok) / cfg.trials : std::nan("");
    row.mu_mean = mu_sum / cfg.trials;
    row.alpha_max_mean = amax_sum / cfg.trials;
    row.erc_exact_rate = double(erc_ok) / cfg.trials;
    for (auto& a : alpha_sum) a /= cfg.trials;
    if (row.mu_mean > 0.0) {
      row.cond4_feasible = cond4_orthogonal_erc(row.mu_mean, pat).satisfied;
      const int N = static_cast<int>(pat.s.size());
      row.cond5_feasible =
          N >= 2 && pat.total() <
                        cond5_piecewise_uniqueness(row.mu_mean,
                                                   std::min(row.alpha_max_mean, 1.0), N);
      std::vector<double> alpha_clamped = alpha_sum;
      for (auto& a : alpha_clamped) a = std::clamp(a, 0.0, 1.0);
      row.cond6_feasible =
          cond6_piecewise_erc(row.mu_mean, alpha_clamped, pat).satisfied;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string experiment_rows_csv(const std::vector<ExperimentRow>& rows) {
  std::string out =
      "pattern,trials,omp_success,bp_success,mu_mean,alpha_max_mean,"
      "cond4,cond5,cond6,erc_exact_rate\n";
  for (const auto& r : rows) {
    std::string pat;
    for (size_t i = 0; i < r.pattern.s.size(); ++i) {
      if (i) pat += ';';
      pat += std::to_string(r.pattern.s[i]);
    }
    out += pat + "," + std::to_string(r.trials) + ",";
    out += (std::isnan(r.omp_success) ? "" : format_double(r.omp_success));
    out += ",";
    out += (std::isnan(r.bp_success) ? "" : format_double(r.bp_success));
    out += "," + format_double(r.mu_mean) + "," +
           format_double(r.alpha_max_mean) + ",";
    out += std::string(r.cond4_feasible ? "1" : "0") + "," +
           (r.cond5_feasible ? "1" : "0") + "," +
           (r.cond6_feasible ? "1" : "0") + "," +
           format_double(r.erc_exact_rate) + "\n";
  }
  return out;
}

}  // namespace pwsparse
