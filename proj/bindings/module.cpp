#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pwsparse/coherence.hpp"
#include "pwsparse/conditions.hpp"
#include "pwsparse/generators.hpp"
#include "pwsparse/solvers.hpp"

namespace py = pybind11;
using namespace pwsparse;

namespace {

// Exceptions raised while a py::init factory unwinds crash the interpreter
// with this pybind11 release, so translate to Python errors here instead of
// relying on the registered translators.
Dictionary make_dict(const Eigen::MatrixXd& matrix,
                     const std::vector<int>& widths, bool normalize) {
  try {
    return make_dictionary(matrix, BlockPartition{widths}, normalize)
        .dictionary;
  } catch (const UsageError& e) {
    throw py::value_error(e.what());
  }
}

py::dict result_to_dict(const RecoveryResult& r) {
  py::dict out;
  out["solver"] = r.solver;
  out["x"] = r.x;
  out["support"] = r.support.global_support();
  out["residual_norm"] = r.residual_norm;
  out["iterations"] = r.iterations;
  out["objective"] = r.objective;
  out["converged"] = r.converged;
  if (r.certificate) {
    py::dict cert;
    cert["dual_infnorm"] = r.certificate->dual_infnorm;
    cert["duality_gap"] = r.certificate->duality_gap;
    out["certificate"] = cert;
  }
  if (!r.all_minimizers.empty()) out["all_minimizers"] = r.all_minimizers;
  return out;
}

}  // namespace

PYBIND11_MODULE(_pwsparse, m) {
  m.doc() = "piecewise sparse recovery in unions of bases";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError",
                                         PyExc_ArithmeticError);

  py::class_<Dictionary>(m, "Dictionary")
      .def(py::init(&make_dict), py::arg("matrix"), py::arg("widths"),
           py::arg("normalize") = false)
      .def_property_readonly("matrix", &Dictionary::matrix)
      .def_property_readonly("widths",
                             [](const Dictionary& d) {
                               return d.partition().widths;
                             })
      .def_property_readonly("m", &Dictionary::rows)
      .def_property_readonly("n", &Dictionary::cols)
      .def_property_readonly("N", &Dictionary::block_count);

  m.def("gram", &gram);
  m.def("mutual_coherence", &mutual_coherence);
  m.def("block_coherence", &block_coherence);
  m.def("babel", &babel);
  m.def("cross_block_babel", &cross_block_babel);
  m.def("within_block_babel", &within_block_babel);
  m.def("spark_lower_bound_piecewise", &spark_lower_bound_piecewise);
  m.def(
      "spark_bruteforce",
      [](const Dictionary& d, int max_card, double rank_tol) -> py::object {
        const auto r = spark_bruteforce(d, max_card, rank_tol);
        if (!r.found) return py::none();
        return py::int_(r.spark);
      },
      py::arg("dictionary"), py::arg("max_card"), py::arg("rank_tol") = 1e-10);
  m.def("coherence_profile", [](const Dictionary& d, int babel_depth) {
    const auto p = coherence_profile(
        d, babel_depth > 0 ? std::optional<int>(babel_depth) : std::nullopt);
    py::dict out;
    out["mu"] = p.mu;
    out["block_mu"] = p.block_mu;
    out["alpha"] = p.alpha;
    out["alpha_max"] = p.alpha_max;
    if (!p.babel.empty()) out["babel"] = p.babel;
    return out;
  }, py::arg("dictionary"), py::arg("babel_depth") = 0);

  m.def("cond1_general", &cond1_general);
  m.def("cond2_pair_orthogonal_uniqueness", &cond2_pair_orthogonal_uniqueness);
  m.def("cond3_pair_orthogonal_equivalence", &cond3_pair_orthogonal_equivalence);
  m.def("cond_orthogonal_union_omp", &cond_orthogonal_union_omp);
  m.def("cond_orthogonal_union_bp", &cond_orthogonal_union_bp);
  m.def("cond5_piecewise_uniqueness", &cond5_piecewise_uniqueness);
  m.def("cond4_orthogonal_erc", [](double mu, const std::vector<int>& s) {
    const auto c = cond4_orthogonal_erc(mu, SparsityPattern{s});
    return py::make_tuple(c.satisfied, c.slack);
  });
  m.def("cond6_piecewise_erc",
        [](double mu, const std::vector<double>& alpha,
           const std::vector<int>& s) {
          const auto c = cond6_piecewise_erc(mu, alpha, SparsityPattern{s});
          return py::make_tuple(c.satisfied, c.slack,
                                c.z ? py::object(py::int_(*c.z))
                                    : py::object(py::none()));
        });
  m.def("erc_exact", [](const Dictionary& d, const std::vector<int>& support) {
    const auto e =
        erc_exact(d, SupportPartition::from_global(support, d.partition()));
    return py::make_tuple(e.value, e.holds);
  });

  m.def(
      "omp",
      [](const Dictionary& d, const Eigen::VectorXd& b, int max_sparsity,
         double residual_tol) {
        OmpOptions opt;
        opt.max_sparsity = max_sparsity;
        opt.residual_tol = residual_tol;
        return result_to_dict(omp(RecoveryProblem{d, b}, opt));
      },
      py::arg("dictionary"), py::arg("b"), py::arg("max_sparsity") = 0,
      py::arg("residual_tol") = 1e-8);
  m.def(
      "basis_pursuit",
      [](const Dictionary& d, const Eigen::VectorXd& b, double feasibility,
         double optimality) {
        BpOptions opt;
        opt.feasibility = feasibility;
        opt.optimality = optimality;
        return result_to_dict(basis_pursuit(RecoveryProblem{d, b}, opt));
      },
      py::arg("dictionary"), py::arg("b"), py::arg("feasibility") = 1e-8,
      py::arg("optimality") = 1e-7);
  m.def(
      "l0_bruteforce",
      [](const Dictionary& d, const Eigen::VectorXd& b, int s_max,
         double fit_tol) {
        L0Options opt;
        opt.s_max = s_max;
        opt.fit_tol = fit_tol;
        return result_to_dict(l0_bruteforce(RecoveryProblem{d, b}, opt));
      },
      py::arg("dictionary"), py::arg("b"), py::arg("s_max") = 4,
      py::arg("fit_tol") = 1e-8);

  m.def("random_orthonormal_basis", &random_orthonormal_basis);
  m.def("union_orthogonal", &union_orthogonal);
  m.def("identity_hadamard", &identity_hadamard);
  m.def("union_general", &union_general);
  m.def(
      "piecewise_sparse_signal",
      [](const std::vector<int>& widths, const std::vector<int>& sparsities,
         std::uint64_t seed) {
        SignalSpec spec{BlockPartition{widths}, SparsityPattern{sparsities},
                        AmplitudeSpec{}, seed};
        const auto sig = piecewise_sparse_signal(spec);
        return py::make_tuple(sig.x, sig.support.global_support());
      },
      py::arg("widths"), py::arg("sparsities"), py::arg("seed") = 0);
}
