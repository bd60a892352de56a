#pragma once

#include <cstdint>
#include <string>

#include "pwsparse/generators.hpp"
#include "pwsparse/solvers.hpp"

namespace pwsparse {

struct GeneratorParams {
  std::string kind = "union_general";  // union_orthogonal | identity_hadamard
                                       // | union_general
  int m = 8;
  int N = 2;
  double mixing = 0.5;
};

struct ExperimentConfig {
  int schema_version = 1;
  std::string dictionary_file;   // empty: generate per trial
  std::vector<int> widths;       // required with dictionary_file
  GeneratorParams generator;
  int trials = 20;
  std::vector<SparsityPattern> grid;
  std::vector<std::string> solvers = {"omp", "bp"};
  std::uint64_t master_seed = 0;
  AmplitudeSpec amplitude;
  OmpOptions omp_options;
  BpOptions bp_options;
  double success_rel_tol = 1e-6;

  void validate() const;
};

struct ExperimentRow {
  SparsityPattern pattern;
  int trials = 0;
  double omp_success = 0.0;  // NaN when solver not run
  double bp_success = 0.0;
  double mu_mean = 0.0;
  double alpha_max_mean = 0.0;
  bool cond4_feasible = false;  // at mean mu/alpha
  bool cond5_feasible = false;
  bool cond6_feasible = false;
  double erc_exact_rate = 0.0;  // fraction of trials with exact ERC < 1
};

ExperimentConfig parse_experiment_config(const std::string& json_text);

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg);

/// CSV serialization of the rows, byte-stable for fixed inputs.
std::string experiment_rows_csv(const std::vector<ExperimentRow>& rows);

}  // namespace pwsparse
