#include "coherence/optimize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "coherence/error.hpp"
#include "coherence/kernels.hpp"
#include "coherence/measures.hpp"

namespace coherence::optimize {

namespace {

void check_problem(double nbar, std::size_t cutoff, double tol, const char* what) {
  require(std::isfinite(nbar) && nbar > 0.0, ErrorKind::invalid_argument,
          std::string(what) + ": nbar must be positive");
  require(cutoff >= 2, ErrorKind::invalid_argument, std::string(what) + ": cutoff must be >= 2");
  require(nbar < static_cast<double>(cutoff), ErrorKind::invalid_argument,
          std::string(what) + ": nbar must be below the cutoff");
  require(tol > 0.0, ErrorKind::invalid_argument, std::string(what) + ": tol must be positive");
}

[[noreturn]] void solver_failed(const char* what, int iterations, double residual) {
  std::ostringstream msg;
  msg << what << ": no convergence after " << iterations << " Newton iterations (residual "
      << residual << ")";
  fail(ErrorKind::solver_failure, msg.str());
}

struct Moments {
  double s0, s1, s2;
};

Moments moments_of(const std::vector<double>& p) {
  const auto m = kernels::power_sums(p);
  return {m.s0, m.s1, m.s2};
}

// Dual of max sum sqrt(P_n) under k moment constraints, k = 2 or 3, with
// s_n = n / cutoff for conditioning. c_n = theta . (1, s_n, s_n^2) > 0 and
// P_n = 1 / (4 c_n^2).
struct SqrtDual {
  std::size_t count;
  double scale;
  int k;
  double target[3];

  kernels::SqrtDualSums sums(const Eigen::Vector3d& theta) const {
    return kernels::sqrt_dual_sums(count, scale, theta(0), theta(1), k == 3 ? theta(2) : 0.0);
  }

  double value(const Eigen::Vector3d& theta, const kernels::SqrtDualSums& s) const {
    double v = s.dual;
    for (int j = 0; j < k; ++j) v += theta(j) * target[j];
    return v;
  }
};

struct SqrtDualResult {
  Eigen::Vector3d theta = Eigen::Vector3d::Zero();
  int iterations = 0;
};

SqrtDualResult solve_sqrt_dual(const SqrtDual& dual, double tol, const char* what) {
  const double n_max = static_cast<double>(dual.count - 1);
  Eigen::Vector3d theta(1.0, 0.0, 0.0);
  auto sums = dual.sums(theta);
  for (int it = 0; it < max_newton_iterations; ++it) {
    Eigen::VectorXd grad(dual.k);
    double residual = 0.0;
    for (int j = 0; j < dual.k; ++j) {
      grad(j) = dual.target[j] - sums.p[j];
      residual = std::max(residual, std::abs(grad(j)) * std::pow(n_max, j));
    }
    if (residual <= tol) return {theta, it};

    Eigen::MatrixXd hess(dual.k, dual.k);
    for (int i = 0; i < dual.k; ++i)
      for (int j = 0; j < dual.k; ++j) hess(i, j) = sums.h[i + j];
    Eigen::VectorXd step = -hess.ldlt().solve(grad);
    if (!step.allFinite() || grad.dot(step) >= 0.0) step = -grad;

    Eigen::Vector3d dir = Eigen::Vector3d::Zero();
    dir.head(dual.k) = step;
    const double current = dual.value(theta, sums);
    const double slope = grad.dot(step);
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 200; ++ls, t *= 0.5) {
      const Eigen::Vector3d trial = theta + t * dir;
      const auto trial_sums = dual.sums(trial);
      if (!(trial_sums.min_c > 0.0)) continue;
      const double v = dual.value(trial, trial_sums);
      if (std::isfinite(v) && v <= current + 1e-4 * t * slope + 1e-15 * std::abs(current)) {
        theta = trial;
        sums = trial_sums;
        accepted = true;
        break;
      }
    }
    if (!accepted) solver_failed(what, it, residual);
  }
  solver_failed(what, max_newton_iterations, std::nan(""));
}

OptimizationReport sqrt_report(const SqrtDual& dual, const SqrtDualResult& result, double nbar,
                               std::optional<double> m2) {
  const std::size_t count = dual.count;
  std::vector<double> p(count);
  for (std::size_t n = 0; n < count; ++n) {
    const double s = static_cast<double>(n) * dual.scale;
    const double c = result.theta(0) + s * (result.theta(1) + s * result.theta(2));
    p[n] = 0.25 / (c * c);
  }
  OptimizationReport report{fock::NumberDistribution({1.0}, 0.0)};
  const Moments raw = moments_of(p);
  report.normalization_residual = std::abs(raw.s0 - 1.0);
  for (double& x : p) x /= raw.s0;
  const Moments m = moments_of(p);
  report.mean_residual = std::abs(m.s1 - nbar);
  if (m2) report.second_moment_residual = std::abs(m.s2 - *m2);

  const double sqrt_mass = kernels::sum_sqrt(p);
  // d/dP_n (S^2) = S / sqrt(P_n) = 2 S c_n, so the multiplier of n^j is
  // -2 S theta_j / cutoff^j.
  std::vector<int> orders;
  const double n_max = static_cast<double>(count - 1);
  for (int j = 0; j < dual.k; ++j) {
    orders.push_back(j);
    report.multipliers.push_back(-2.0 * sqrt_mass * std::sqrt(raw.s0) * result.theta(j) /
                                 std::pow(n_max, j));
  }
  report.distribution = fock::NumberDistribution(std::move(p), 0.0);
  report.objective = measures::l1_coherence(report.distribution);
  report.kkt_residual = kkt_residual(report.distribution, report.multipliers, orders);
  report.cutoff = count - 1;
  report.iterations = result.iterations;
  report.converged = true;
  return report;
}

OptimizationReport point_report(std::vector<double> p, double nbar, double m2) {
  OptimizationReport report{fock::NumberDistribution({1.0}, 0.0)};
  const Moments m = moments_of(p);
  report.normalization_residual = std::abs(m.s0 - 1.0);
  report.mean_residual = std::abs(m.s1 - nbar);
  report.second_moment_residual = std::abs(m.s2 - m2);
  report.cutoff = p.size() - 1;
  report.distribution = fock::NumberDistribution(std::move(p), 0.0);
  report.objective = measures::l1_coherence(report.distribution);
  // The feasible set is a single point, so stationarity holds vacuously.
  report.kkt_residual = 0.0;
  report.iterations = 0;
  report.converged = true;
  return report;
}

}  // namespace

OptimizationReport maximize_entropy_mean_constraint(double nbar, std::size_t cutoff, double tol) {
  check_problem(nbar, cutoff, tol, "maximize_entropy_mean_constraint");
  const std::size_t count = cutoff + 1;
  const double scale = 1.0 / static_cast<double>(cutoff);
  const double target = nbar * scale;

  // Dual: D(mu, lambda) = sum exp(-1 - mu - lambda s_n) + mu + lambda target.
  auto evaluate = [&](double mu, double lambda, double& f, Eigen::Vector2d& g, Eigen::Matrix2d& h) {
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;
    for (std::size_t n = 0; n < count; ++n) {
      const double s = static_cast<double>(n) * scale;
      const double p = std::exp(-1.0 - mu - lambda * s);
      p0 += p;
      p1 += p * s;
      p2 += p * s * s;
    }
    f = p0 + mu + lambda * target;
    g << 1.0 - p0, target - p1;
    h << p0, p1, p1, p2;
  };

  double mu = -1.0 + std::log(static_cast<double>(count));
  double lambda = 0.0;
  double f;
  Eigen::Vector2d g;
  Eigen::Matrix2d h;
  evaluate(mu, lambda, f, g, h);
  int it = 0;
  for (;; ++it) {
    const double residual = std::max(std::abs(g(0)), std::abs(g(1)) * static_cast<double>(cutoff));
    if (residual <= tol) break;
    if (it >= max_newton_iterations) solver_failed("maximize_entropy_mean_constraint", it, residual);
    Eigen::Vector2d step = -h.ldlt().solve(g);
    if (!step.allFinite() || g.dot(step) >= 0.0) step = -g;
    const double slope = g.dot(step);
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 200; ++ls, t *= 0.5) {
      double ft;
      Eigen::Vector2d gt;
      Eigen::Matrix2d ht;
      evaluate(mu + t * step(0), lambda + t * step(1), ft, gt, ht);
      if (std::isfinite(ft) && ft <= f + 1e-4 * t * slope + 1e-15 * std::abs(f)) {
        mu += t * step(0);
        lambda += t * step(1);
        f = ft;
        g = gt;
        h = ht;
        accepted = true;
        break;
      }
    }
    if (!accepted) solver_failed("maximize_entropy_mean_constraint", it, residual);
  }

  std::vector<double> p(count);
  for (std::size_t n = 0; n < count; ++n)
    p[n] = std::exp(-1.0 - mu - lambda * static_cast<double>(n) * scale);
  OptimizationReport report{fock::NumberDistribution({1.0}, 0.0)};
  const Moments raw = moments_of(p);
  report.normalization_residual = std::abs(raw.s0 - 1.0);
  for (double& x : p) x /= raw.s0;
  report.mean_residual = std::abs(moments_of(p).s1 - nbar);

  // Stationarity of -sum P ln P: -ln P_n - 1 - mu' - lambda' n = 0, with mu'
  // absorbing the final rescale.
  const double mu_eff = mu + std::log(raw.s0);
  const double lambda_eff = lambda * scale;
  double kkt = 0.0;
  for (std::size_t n = 0; n < count; ++n)
    kkt = std::max(kkt, std::abs(-std::log(p[n]) - 1.0 - mu_eff - lambda_eff * static_cast<double>(n)));
  report.multipliers = {mu_eff, lambda_eff};
  report.distribution = fock::NumberDistribution(std::move(p), 0.0);
  report.objective = measures::shannon_entropy(report.distribution);
  report.kkt_residual = kkt;
  report.cutoff = cutoff;
  report.iterations = it;
  report.converged = true;
  return report;
}

OptimizationReport maximize_l1_mean_constraint(double nbar, std::size_t cutoff, double tol) {
  check_problem(nbar, cutoff, tol, "maximize_l1_mean_constraint");
  const double scale = 1.0 / static_cast<double>(cutoff);
  const SqrtDual dual{cutoff + 1, scale, 2, {1.0, nbar * scale, 0.0}};
  const auto result = solve_sqrt_dual(dual, tol, "maximize_l1_mean_constraint");
  return sqrt_report(dual, result, nbar, std::nullopt);
}

OptimizationReport maximize_l1_two_moment_constraint(double nbar, double m2, std::size_t cutoff,
                                                     double tol) {
  check_problem(nbar, cutoff, tol, "maximize_l1_two_moment_constraint");
  require(std::isfinite(m2), ErrorKind::invalid_argument,
          "maximize_l1_two_moment_constraint: m2 must be finite");
  // Feasible second moments for mean nbar on {0..cutoff}: the minimum puts
  // all mass on floor(nbar) and floor(nbar)+1, the maximum on 0 and cutoff.
  const double n_max = static_cast<double>(cutoff);
  const double k = std::floor(nbar);
  const double frac = nbar - k;
  const double m2_min = (1.0 - frac) * k * k + frac * (k + 1.0) * (k + 1.0);
  const double m2_max = nbar * n_max;
  const double slack = 1e-12 * std::max(1.0, std::abs(m2));
  if (m2 < m2_min - slack || m2 > m2_max + slack) {
    std::ostringstream msg;
    msg << "maximize_l1_two_moment_constraint: m2 = " << m2 << " outside feasible range ["
        << m2_min << ", " << m2_max << "] for nbar = " << nbar;
    fail(ErrorKind::infeasible, msg.str());
  }
  if (std::abs(m2 - m2_min) <= slack) {
    std::vector<double> p(cutoff + 1, 0.0);
    const auto lo = static_cast<std::size_t>(k);
    p[lo] = 1.0 - frac;
    if (frac > 0.0) p[lo + 1] = frac;
    return point_report(std::move(p), nbar, m2);
  }
  if (std::abs(m2 - m2_max) <= slack) {
    std::vector<double> p(cutoff + 1, 0.0);
    p[0] = 1.0 - nbar / n_max;
    p[cutoff] = nbar / n_max;
    return point_report(std::move(p), nbar, m2);
  }
  const double scale = 1.0 / n_max;
  const SqrtDual dual{cutoff + 1, scale, 3, {1.0, nbar * scale, m2 * scale * scale}};
  const auto result = solve_sqrt_dual(dual, tol, "maximize_l1_two_moment_constraint");
  return sqrt_report(dual, result, nbar, m2);
}

double kkt_residual(const fock::NumberDistribution& dist, std::span<const double> multipliers,
                    std::span<const int> orders) {
  require(multipliers.size() == orders.size(), ErrorKind::invalid_argument,
          "kkt_residual: multipliers and moment orders differ in length");
  const auto p = dist.probs();
  for (std::size_t n = 0; n < p.size(); ++n)
    require(p[n] > 0.0, ErrorKind::undefined_gradient,
            "kkt_residual: zero probability at n = " + std::to_string(n));
  const double sqrt_mass = kernels::sum_sqrt(p);
  double worst = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    double r = sqrt_mass / std::sqrt(p[n]);
    for (std::size_t j = 0; j < orders.size(); ++j)
      r += multipliers[j] * std::pow(static_cast<double>(n), orders[j]);
    worst = std::max(worst, std::abs(r));
  }
  return worst / sqrt_mass;
}

}  // namespace coherence::optimize
