#pragma once

// Maximizers of coherence functionals over photon-number distributions on a
// truncated support {0..cutoff} under moment constraints. All solvers work on
// the convex dual, where the maximizer has a known closed form in terms of
// the Lagrange multipliers, and take damped Newton steps on the multipliers.

#include <optional>
#include <span>
#include <vector>

#include "coherence/fock.hpp"

namespace coherence::optimize {

struct OptimizationReport {
  fock::NumberDistribution distribution;
  double objective = 0.0;
  double normalization_residual = 0.0;            // |sum P_n - 1| before final rescale
  double mean_residual = 0.0;                     // |sum n P_n - nbar|
  std::optional<double> second_moment_residual{};  // |sum n^2 P_n - m2|
  double kkt_residual = 0.0;
  // Lagrange multipliers for the constraints sum n^j P_n, j = 0, 1, (2), in
  // the sign convention of kkt_residual.
  std::vector<double> multipliers{};
  std::size_t cutoff = 0;
  int iterations = 0;
  bool converged = false;
};

inline constexpr int max_newton_iterations = 500;

/// max -sum P_n ln P_n  s.t.  sum P_n = 1, sum n P_n = nbar.
OptimizationReport maximize_entropy_mean_constraint(double nbar, std::size_t cutoff,
                                                    double tol = 1e-10);

/// max (sum sqrt P_n)^2 - 1  s.t.  sum P_n = 1, sum n P_n = nbar.
OptimizationReport maximize_l1_mean_constraint(double nbar, std::size_t cutoff, double tol = 1e-10);

/// Same objective with the additional constraint sum n^2 P_n = m2.
OptimizationReport maximize_l1_two_moment_constraint(double nbar, double m2, std::size_t cutoff,
                                                     double tol = 1e-10);

/// Stationarity residual of the l1 Lagrangian,
///   max_n | S / sqrt(P_n) + sum_j multipliers_j n^{orders_j} | / S,  S = sum_m sqrt(P_m).
double kkt_residual(const fock::NumberDistribution& dist, std::span<const double> multipliers,
                    std::span<const int> orders);

}  // namespace coherence::optimize
