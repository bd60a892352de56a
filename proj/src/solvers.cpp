#include "pwsparse/solvers.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>

#include "pwsparse/detail/combinations.hpp"

namespace pwsparse {

namespace {

void check_problem(const RecoveryProblem& p) {
  if (p.b.size() != p.dictionary.rows())
    throw UsageError("measurement vector length " + std::to_string(p.b.size()) +
                     " does not match dictionary rows " +
                     std::to_string(p.dictionary.rows()));
  if (!p.b.allFinite()) throw UsageError("measurement vector not finite");
}

SupportPartition support_from_x(const Eigen::VectorXd& x,
                                const BlockPartition& partition,
                                double threshold) {
  std::vector<int> global;
  for (int j = 0; j < x.size(); ++j)
    if (std::abs(x(j)) > threshold) global.push_back(j);
  return SupportPartition::from_global(global, partition);
}

}  // namespace

LeastSquaresFit least_squares_on_support(const Dictionary& d,
                                         const std::vector<int>& support,
                                         const Eigen::VectorXd& b) {
  LeastSquaresFit fit;
  if (support.empty()) {
    fit.coefficients.resize(0);
    fit.residual_norm = b.norm();
    return fit;
  }
  const Eigen::MatrixXd as = columns(d, support);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(as);
  qr.setThreshold(1e-10);
  fit.full_rank = qr.rank() == static_cast<Eigen::Index>(support.size());
  fit.coefficients = qr.solve(b);
  fit.residual_norm = (as * fit.coefficients - b).norm();
  return fit;
}

RecoveryResult omp(const RecoveryProblem& p, const OmpOptions& opt) {
  check_problem(p);
  const Dictionary& d = p.dictionary;
  const int n = d.cols();
  const int cap = opt.max_sparsity > 0 ? std::min(opt.max_sparsity, d.rows())
                                       : d.rows();

  RecoveryResult res;
  res.solver = "omp";
  res.x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd residual = p.b;
  std::vector<int> selected;
  std::vector<char> in_support(n, 0);
  Eigen::VectorXd coeffs;

  while (residual.norm() > opt.residual_tol &&
         static_cast<int>(selected.size()) < cap) {
    // argmax correlation, ties to the lowest index
    int best = -1;
    double best_corr = -1.0;
    for (int j = 0; j < n; ++j) {
      if (in_support[j]) continue;
      const double corr = std::abs(d.column(j).dot(residual));
      if (corr > best_corr) {
        best_corr = corr;
        best = j;
      }
    }
    if (best < 0 || best_corr == 0.0) break;
    selected.push_back(best);
    in_support[best] = 1;
    std::sort(selected.begin(), selected.end());

    const auto fit = least_squares_on_support(d, selected, p.b);
    if (!fit.full_rank) {
      res.converged = false;
      res.diagnostic = "selected columns became rank-deficient";
      res.iterations = static_cast<int>(selected.size());
      res.support = SupportPartition::from_global(selected, d.partition());
      res.residual_norm = residual.norm();
      res.objective = static_cast<double>(selected.size());
      return res;
    }
    coeffs = fit.coefficients;
    residual = p.b - columns(d, selected) * coeffs;
    ++res.iterations;
  }

  res.x.setZero();
  for (size_t k = 0; k < selected.size(); ++k) res.x(selected[k]) = coeffs(k);
  res.residual_norm = residual.norm();
  res.support = support_from_x(res.x, d.partition(), opt.support_threshold);
  res.objective = static_cast<double>(res.support.global_support().size());
  res.converged = res.residual_norm <= opt.residual_tol;
  if (!res.converged) res.diagnostic = "sparsity cap reached";
  return res;
}

RecoveryResult l0_bruteforce(const RecoveryProblem& p, const L0Options& opt) {
  check_problem(p);
  const Dictionary& d = p.dictionary;
  if (opt.s_max < 0 || opt.s_max > d.cols())
    throw UsageError("s_max out of [0, n]");

  RecoveryResult res;
  res.solver = "l0";
  res.x = Eigen::VectorXd::Zero(d.cols());
  long used = 0;

  for (int k = 0; k <= opt.s_max; ++k) {
    std::vector<std::vector<int>> hits;
    Eigen::VectorXd best_x;
    double best_res = std::numeric_limits<double>::infinity();
    detail::for_each_subset(
        d.cols(), k, opt.subset_budget, used, [&](const std::vector<int>& idx) {
          const auto fit = least_squares_on_support(d, idx, p.b);
          if (fit.residual_norm <= opt.fit_tol) {
            hits.push_back(idx);
            if (fit.residual_norm < best_res) {
              best_res = fit.residual_norm;
              best_x = Eigen::VectorXd::Zero(d.cols());
              for (size_t t = 0; t < idx.size(); ++t)
                best_x(idx[t]) = fit.coefficients(t);
            }
          }
          return true;
        });
    if (!hits.empty()) {
      res.x = k == 0 ? Eigen::VectorXd::Zero(d.cols()) : best_x;
      res.residual_norm = k == 0 ? p.b.norm() : best_res;
      res.support = SupportPartition::from_global(hits.front(), d.partition());
      res.all_minimizers = std::move(hits);
      res.objective = k;
      res.iterations = static_cast<int>(used);
      res.converged = true;
      return res;
    }
  }
  res.converged = false;
  res.diagnostic = "no support of cardinality <= " + std::to_string(opt.s_max) +
                   " fits b";
  res.iterations = static_cast<int>(used);
  res.residual_norm = p.b.norm();
  return res;
}

// ---------------------------------------------------------------------------
// Basis pursuit: min 1'u + 1'v  s.t.  A(u - v) = b, u, v >= 0, solved with a
// Mehrotra predictor-corrector interior point method on the normal equations
// M Theta M' dy = r, where M = [A -A] and M Theta M' = A (theta_u+theta_v) A'.
// ---------------------------------------------------------------------------

RecoveryResult basis_pursuit(const RecoveryProblem& p, const BpOptions& opt) {
  check_problem(p);
  const Dictionary& d = p.dictionary;
  const int m = d.rows();
  const int n = d.cols();
  const Eigen::MatrixXd& A = d.matrix();

  RecoveryResult res;
  res.solver = "bp";
  res.x = Eigen::VectorXd::Zero(n);

  if (p.b.norm() == 0.0) {
    res.converged = true;
    res.support = SupportPartition::from_global({}, d.partition());
    BpCertificate cert;
    cert.y = Eigen::VectorXd::Zero(m);
    res.certificate = cert;
    return res;
  }

  const int nz = 2 * n;
  auto mul_M = [&](const Eigen::VectorXd& z) {  // M z
    return (A * z.head(n) - A * z.tail(n)).eval();
  };
  auto mul_Mt = [&](const Eigen::VectorXd& y) {  // M' y
    Eigen::VectorXd out(nz);
    out.head(n) = A.transpose() * y;
    out.tail(n) = -out.head(n);
    return out;
  };

  // Mehrotra starting point
  const Eigen::MatrixXd AAt = 2.0 * (A * A.transpose());
  Eigen::LDLT<Eigen::MatrixXd> aat(AAt);
  Eigen::VectorXd z = mul_Mt(aat.solve(p.b));
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd w = Eigen::VectorXd::Ones(nz);
  {
    const double dz = std::max(-1.5 * z.minCoeff(), 0.0);
    z.array() += dz;
    const double zw = z.dot(w);
    z.array() += 0.5 * zw / w.sum();
    w.array() += 0.5 * zw / z.sum();
  }

  const Eigen::VectorXd c = Eigen::VectorXd::Ones(nz);
  const double bnorm = 1.0 + p.b.norm();
  double best_gap = std::numeric_limits<double>::infinity();
  bool solved = false;
  int iter = 0;

  for (; iter < opt.max_iterations; ++iter) {
    const Eigen::VectorXd rp = p.b - mul_M(z);
    const Eigen::VectorXd rd = c - mul_Mt(y) - w;
    const double mu_gap = z.dot(w) / nz;
    const double pinf = rp.norm() / bnorm;
    const double dinf = rd.norm() / (1.0 + std::sqrt(double(nz)));
    if (pinf <= 1e-11 && dinf <= 1e-11 && mu_gap <= 1e-12) {
      solved = true;
      break;
    }
    if (mu_gap < best_gap) best_gap = mu_gap;

    const Eigen::ArrayXd theta = z.array() / w.array();
    Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(m, m);
    {
      const Eigen::ArrayXd t = theta.head(n) + theta.tail(n);
      normal.noalias() = A * t.matrix().asDiagonal() * A.transpose();
      normal.diagonal().array() += 1e-13 * (1.0 + normal.diagonal().maxCoeff());
    }
    Eigen::LDLT<Eigen::MatrixXd> fac(normal);
    if (fac.info() != Eigen::Success) {
      res.diagnostic = "normal equations factorization failed";
      break;
    }

    auto solve_step = [&](const Eigen::VectorXd& rc, Eigen::VectorXd& dz,
                          Eigen::VectorXd& dy, Eigen::VectorXd& dw) {
      // rc is the target for Z dw + W dz
      const Eigen::VectorXd t1 =
          (theta * rd.array() - rc.array() / w.array()).matrix();
      dy = fac.solve(rp + mul_M(t1));
      dz = (theta * (mul_Mt(dy).array() - rd.array()) +
            rc.array() / w.array())
               .matrix();
      dw = ((rc.array() - w.array() * dz.array()) / z.array()).matrix();
    };

    auto step_len = [](const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
      double a = 1.0;
      for (int i = 0; i < v.size(); ++i)
        if (dv(i) < 0.0) a = std::min(a, -v(i) / dv(i));
      return a;
    };

    // affine (predictor) direction
    Eigen::VectorXd dz_aff, dy_aff, dw_aff;
    solve_step((-z.array() * w.array()).matrix(), dz_aff, dy_aff, dw_aff);
    const double ap_aff = step_len(z, dz_aff);
    const double ad_aff = step_len(w, dw_aff);
    const double mu_aff = (z + ap_aff * dz_aff).dot(w + ad_aff * dw_aff) / nz;
    const double sigma = std::pow(mu_aff / mu_gap, 3);

    // corrector direction
    Eigen::VectorXd dz, dy, dw;
    const Eigen::VectorXd rc =
        (-z.array() * w.array() - dz_aff.array() * dw_aff.array() +
         sigma * mu_gap)
            .matrix();
    solve_step(rc, dz, dy, dw);

    const double tau = std::max(0.995, 1.0 - mu_gap);
    const double ap = std::min(1.0, tau * step_len(z, dz));
    const double ad = std::min(1.0, tau * step_len(w, dw));
    z += ap * dz;
    y += ad * dy;
    w += ad * dw;
  }

  res.iterations = iter;
  res.x = z.head(n) - z.tail(n);
  res.residual_norm = (A * res.x - p.b).norm();
  res.objective = res.x.lpNorm<1>();
  res.support = support_from_x(res.x, d.partition(), opt.support_threshold);

  BpCertificate cert;
  cert.y = y;
  cert.dual_infnorm = (A.transpose() * y).lpNorm<Eigen::Infinity>();
  if (cert.dual_infnorm > 1.0) cert.y /= cert.dual_infnorm;
  cert.duality_gap = res.objective - p.b.dot(cert.y);
  res.certificate = cert;

  const bool feasible = res.residual_norm <= opt.feasibility;
  const bool optimal =
      cert.duality_gap <= opt.optimality * std::max(1.0, res.objective);
  res.converged = feasible && optimal;
  if (!res.converged) {
    if (!solved && res.diagnostic.empty())
      res.diagnostic = feasible ? "optimality certificate not met"
                                : "infeasible or iteration budget exhausted";
  }
  return res;
}

}  // namespace pwsparse
