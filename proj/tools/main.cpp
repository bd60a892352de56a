// pwsparse: coherence analysis, recovery-condition evaluation, sparse
// recovery solvers and experiment harness for dictionaries structured as
// unions of bases.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "pwsparse/coherence.hpp"
#include "pwsparse/conditions.hpp"
#include "pwsparse/experiment.hpp"
#include "pwsparse/generators.hpp"
#include "pwsparse/io.hpp"
#include "pwsparse/solvers.hpp"

namespace fs = std::filesystem;
using namespace pwsparse;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
}

BlockPartition resolve_partition(const std::string& widths,
                                 const std::string& partition_json, int n) {
  if (!widths.empty()) return parse_widths(widths);
  if (!partition_json.empty()) {
    std::ifstream in(partition_json);
    if (!in) throw UsageError("cannot open " + partition_json);
    nlohmann::json j;
    in >> j;
    return partition_from_json(j);
  }
  return BlockPartition{{n}};
}

int run_analyze(const std::string& matrix_path, const std::string& widths,
                const std::string& partition_json, bool normalize,
                int babel_depth, const std::string& out_path) {
  const Eigen::MatrixXd raw = read_matrix_csv(matrix_path);
  const BlockPartition p =
      resolve_partition(widths, partition_json, static_cast<int>(raw.cols()));
  const Dictionary d = make_dictionary(raw, p, normalize).dictionary;
  const CoherenceProfile prof = coherence_profile(
      d, babel_depth > 0 ? std::optional<int>(babel_depth) : std::nullopt);
  const ConditionReport report = evaluate_all(d, std::nullopt);
  nlohmann::json j;
  j["profile"] = to_json(prof);
  j["conditions"] = to_json(report);
  emit(out_path, j.dump(2) + "\n");
  return 0;
}

int run_bounds(const std::string& mode, double mu, int N, double alpha_max,
               double alpha1, double alpha2, int s1_max, int s2_max,
               const std::string& out_path) {
  std::vector<BoundTableRow> rows;
  if (mode == "fig1") {
    rows = bound_table_mu({"cond1", "cond2", "cond3", "omp_union", "bp_union"},
                          mu, N);
  } else if (mode == "fig2") {
    rows = bound_table_uniqueness_grid(mu, alpha_max, s1_max, s2_max);
  } else if (mode == "fig3") {
    rows = bound_table_erc_grid(mu, alpha1, alpha2, s1_max, s2_max);
  } else {
    throw UsageError("unknown bounds mode '" + mode + "'");
  }
  emit(out_path, bound_table_csv(rows));
  return 0;
}

int run_recover(const std::string& matrix_path, const std::string& b_path,
                const std::string& widths, const std::string& partition_json,
                bool normalize, const std::string& solver, int max_sparsity,
                double tol, const std::string& out_path) {
  const Eigen::MatrixXd raw = read_matrix_csv(matrix_path);
  const BlockPartition p =
      resolve_partition(widths, partition_json, static_cast<int>(raw.cols()));
  const Dictionary d = make_dictionary(raw, p, normalize).dictionary;
  const Eigen::VectorXd b = read_vector_csv(b_path);
  RecoveryProblem problem{d, b};
  RecoveryResult result;
  if (solver == "omp") {
    OmpOptions o;
    o.max_sparsity = max_sparsity;
    if (tol > 0) o.residual_tol = tol;
    result = omp(problem, o);
  } else if (solver == "bp") {
    BpOptions o;
    if (tol > 0) o.feasibility = tol;
    result = basis_pursuit(problem, o);
  } else if (solver == "l0") {
    L0Options o;
    if (max_sparsity > 0) o.s_max = max_sparsity;
    if (tol > 0) o.fit_tol = tol;
    result = l0_bruteforce(problem, o);
  } else {
    throw UsageError("unknown solver '" + solver + "' (use omp|bp|l0)");
  }
  emit(out_path, to_json(result).dump(2) + "\n");
  return 0;
}

int run_generate(const std::string& kind, int m, int N, double mixing,
                 std::uint64_t seed, const std::string& sparsities,
                 const std::string& out_dir) {
  fs::create_directories(out_dir);
  Dictionary d = [&] {
    if (kind == "union_orthogonal") return union_orthogonal(m, N, seed);
    if (kind == "identity_hadamard") return identity_hadamard(m);
    if (kind == "union_general") return union_general(m, N, mixing, seed);
    throw UsageError("unknown generator kind '" + kind + "'");
  }();
  write_matrix_csv(out_dir + "/matrix.csv", d.matrix());
  nlohmann::json pj;
  pj["widths"] = d.partition().widths;
  write_text(out_dir + "/partition.json", pj.dump(2) + "\n");

  nlohmann::json prov;
  prov["kind"] = kind;
  prov["m"] = m;
  prov["N"] = N;
  prov["mixing"] = mixing;
  prov["seed"] = seed;

  if (!sparsities.empty()) {
    const BlockPartition sp = parse_widths(sparsities);  // reuse int-list parse
    SignalSpec spec{d.partition(), SparsityPattern{sp.widths}, AmplitudeSpec{},
                    derive_seed(seed, 0x516)};
    const GeneratedSignal sig = piecewise_sparse_signal(spec);
    write_vector_csv(out_dir + "/signal.csv", sig.x);
    write_vector_csv(out_dir + "/b.csv", d.matrix() * sig.x);
    prov["sparsities"] = sp.widths;
  }
  write_text(out_dir + "/provenance.json", prov.dump(2) + "\n");
  return 0;
}

int run_experiment_cmd(const std::string& config_path,
                       const std::string& out_dir) {
  std::ifstream in(config_path);
  if (!in) throw UsageError("cannot open " + config_path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  const ExperimentConfig cfg = parse_experiment_config(text);
  const auto rows = run_experiment(cfg);
  fs::create_directories(out_dir);
  write_text(out_dir + "/results.csv", experiment_rows_csv(rows));
  nlohmann::json prov = nlohmann::json::parse(text);
  write_text(out_dir + "/provenance.json", prov.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"piecewise sparse recovery toolkit"};
  app.require_subcommand(1);

  std::string matrix_path, b_path, widths, partition_json, out_path;
  bool normalize = false;
  int babel_depth = 0;

  auto* analyze = app.add_subcommand("analyze", "coherence profile + conditions");
  analyze->add_option("--matrix", matrix_path, "matrix CSV")->required();
  analyze->add_option("--widths", widths, "block widths n1,n2,...");
  analyze->add_option("--partition", partition_json, "partition JSON file");
  analyze->add_flag("--normalize", normalize, "normalize columns");
  analyze->add_option("--babel-depth", babel_depth, "Babel table depth");
  analyze->add_option("--out", out_path, "output path (default stdout)");

  std::string mode = "fig1";
  double mu = 0.05, alpha_max = 0.5, alpha1 = 0.2, alpha2 = 0.15;
  int N = 2, s1_max = 30, s2_max = 30;
  auto* bounds = app.add_subcommand("bounds", "bound tables / feasibility grids");
  bounds->add_option("--mode", mode, "fig1 | fig2 | fig3");
  bounds->add_option("--mu", mu, "mutual coherence");
  bounds->add_option("--N", N, "number of bases");
  bounds->add_option("--alpha-max", alpha_max, "alpha_max (fig2)");
  bounds->add_option("--alpha1", alpha1, "alpha_1 (fig3)");
  bounds->add_option("--alpha2", alpha2, "alpha_2 (fig3)");
  bounds->add_option("--s1-max", s1_max, "grid limit for s1");
  bounds->add_option("--s2-max", s2_max, "grid limit for s2");
  bounds->add_option("--out", out_path, "output path (default stdout)");

  std::string solver = "omp";
  int max_sparsity = 0;
  double tol = 0.0;
  auto* recover = app.add_subcommand("recover", "solve a recovery problem");
  recover->add_option("--matrix", matrix_path, "matrix CSV")->required();
  recover->add_option("--b", b_path, "measurement CSV")->required();
  recover->add_option("--widths", widths, "block widths n1,n2,...");
  recover->add_option("--partition", partition_json, "partition JSON file");
  recover->add_flag("--normalize", normalize, "normalize columns");
  recover->add_option("--solver", solver, "omp | bp | l0");
  recover->add_option("--max-sparsity", max_sparsity, "sparsity cap");
  recover->add_option("--tol", tol, "solver tolerance");
  recover->add_option("--out", out_path, "output path (default stdout)");

  std::string kind = "union_general", sparsities, out_dir = ".";
  int gm = 8;
  double mixing = 0.5;
  std::uint64_t seed = 0;
  auto* generate = app.add_subcommand("generate", "write a dictionary (+signal)");
  generate->add_option("--kind", kind,
                       "union_orthogonal | identity_hadamard | union_general");
  generate->add_option("--m", gm, "rows per basis");
  generate->add_option("--N", N, "number of bases");
  generate->add_option("--mixing", mixing, "blend knob in [0,1]");
  generate->add_option("--seed", seed, "master seed");
  generate->add_option("--sparsities", sparsities, "signal sparsities s1,s2,...");
  generate->add_option("--out", out_dir, "output directory");

  std::string config_path;
  auto* experiment = app.add_subcommand("experiment", "Monte-Carlo recovery runs");
  experiment->add_option("--config", config_path, "experiment config JSON")
      ->required();
  experiment->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*analyze)
      return run_analyze(matrix_path, widths, partition_json, normalize,
                         babel_depth, out_path);
    if (*bounds)
      return run_bounds(mode, mu, N, alpha_max, alpha1, alpha2, s1_max, s2_max,
                        out_path);
    if (*recover)
      return run_recover(matrix_path, b_path, widths, partition_json, normalize,
                         solver, max_sparsity, tol, out_path);
    if (*generate)
      return run_generate(kind, gm, N, mixing, seed, sparsities, out_dir);
    if (*experiment) return run_experiment_cmd(config_path, out_dir);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
