#include "coherence/measures.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>

#include "coherence/error.hpp"
#include "coherence/kernels.hpp"
#include "coherence/special.hpp"

namespace coherence::measures {

namespace {

double entropy_nats(std::span<const double> p, std::span<const double> g) {
  double h = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (p[n] <= 0.0) continue;
    const double w = g.empty() ? 1.0 : g[n];
    h -= w * p[n] * std::log(p[n]);
  }
  return h;
}

}  // namespace

std::string_view to_string(LogBase base) {
  return base == LogBase::natural ? "natural" : "two";
}

LogBase parse_log_base(std::string_view text) {
  if (text == "natural" || text == "e" || text == "nats") return LogBase::natural;
  if (text == "two" || text == "2" || text == "bits") return LogBase::two;
  fail(ErrorKind::invalid_argument, "unknown log base '" + std::string(text) + "'");
}

double in_base(double nats, LogBase base) {
  return base == LogBase::natural ? nats : nats / std::numbers::ln2;
}

double shannon_entropy(const NumberDistribution& dist, LogBase base) {
  return in_base(entropy_nats(dist.probs(), dist.degeneracy()), base);
}

double von_neumann_entropy(const DensityMatrix& rho, LogBase base) {
  Eigen::SelfAdjointEigenSolver<DensityMatrix::Matrix> solver(rho.entries(), Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorKind::invalid_state,
          "von_neumann_entropy: eigendecomposition failed");
  double h = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    require(lambda >= -1e-10, ErrorKind::invalid_state,
            "von_neumann_entropy: eigenvalue " + std::to_string(lambda) + " below -1e-10");
    if (lambda > 0.0) h -= lambda * std::log(lambda);
  }
  return in_base(h, base);
}

double rel_ent_coherence(const PureFockState& state, LogBase base) {
  return shannon_entropy(fock::number_distribution(state), base);
}

double rel_ent_coherence(const DensityMatrix& rho, LogBase base) {
  if (rho.is_diagonal()) return 0.0;
  const std::vector<double> diag = rho.diagonal();
  double h_diag = 0.0;
  for (double p : diag)
    if (p > 0.0) h_diag -= p * std::log(p);
  return in_base(h_diag, base) - von_neumann_entropy(rho, base);
}

double rel_ent_coherence(const TwoModePureState& state, LogBase base) {
  return shannon_entropy(fock::number_distribution(state), base);
}

double entropy_error_bar(double tail_bound, LogBase base) {
  if (tail_bound <= 0.0) return 0.0;
  return in_base(tail_bound * (1.0 + std::abs(std::log(tail_bound))), base);
}

double l1_coherence(const NumberDistribution& dist) {
  const auto p = dist.probs();
  double s = 0.0;
  if (dist.has_degeneracy()) {
    const auto g = dist.degeneracy();
    for (std::size_t n = 0; n < p.size(); ++n) s += g[n] * std::sqrt(p[n]);
  } else {
    s = kernels::sum_sqrt(p);
  }
  return s * s - 1.0;
}

double l1_coherence(const PureFockState& state) {
  return l1_coherence(fock::number_distribution(state));
}

double l1_coherence(const DensityMatrix& rho) {
  const auto& m = rho.entries();
  const auto dim = m.rows();
  // Column j of a Hermitian matrix is the conjugate of row j, so summing the
  // two off-diagonal segments of each column covers every i != j.
  double total = 0.0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    const fock::Complex* col = m.data() + j * dim;
    total += kernels::abs_sum({col, static_cast<std::size_t>(j)});
    total += kernels::abs_sum({col + j + 1, static_cast<std::size_t>(dim - j - 1)});
  }
  return total;
}

double g2_zero(const PureFockState& state) {
  const double n = fock::moment(state, 1, 1).real();
  require(n > 0.0, ErrorKind::undefined_correlation, "g2_zero: mean photon number is zero");
  return fock::moment(state, 2, 2).real() / (n * n);
}

double max_rel_ent_coherence(double nbar, LogBase base) {
  require(nbar >= 0.0 && std::isfinite(nbar), ErrorKind::invalid_argument,
          "max_rel_ent_coherence: nbar must be finite and nonnegative");
  if (nbar == 0.0) return 0.0;
  // (n+1) ln(n+1) - n ln n = ln(n+1) + n ln(1 + 1/n)
  return in_base(std::log1p(nbar) + nbar * std::log1p(1.0 / nbar), base);
}

double s_d_series(unsigned d, double nbar_t, double tol) {
  require(d >= 1, ErrorKind::invalid_argument, "s_d_series: d must be >= 1");
  require(nbar_t >= 0.0 && std::isfinite(nbar_t), ErrorKind::invalid_argument,
          "s_d_series: nbar_t must be finite and nonnegative");
  require(tol > 0.0, ErrorKind::invalid_argument, "s_d_series: tol must be positive");
  if (d == 1 || nbar_t == 0.0) return 0.0;
  const double q = nbar_t / (nbar_t + 1.0);
  const double log_q = -std::log1p(1.0 / nbar_t);
  const double log_w0 = -std::log1p(nbar_t);
  const auto dm1 = static_cast<std::int64_t>(d) - 1;
  const double dd = static_cast<double>(d);
  double sum = 0.0;
  for (std::int64_t n = 0;; ++n) {
    const double w = std::exp(log_w0 + static_cast<double>(n) * log_q);
    sum += w * special::log_binomial(n + dm1, dm1);
    // Terms past n are dominated by t_m = w_m (d-1) log(m+d), whose ratio
    // t_{m+1}/t_m <= rho for all m > n.
    const double nn = static_cast<double>(n);
    const double rho = q * std::log(nn + 2.0 + dd) / std::log(nn + 1.0 + dd);
    if (rho < 1.0) {
      const double next = w * q * static_cast<double>(dm1) * std::log(nn + 1.0 + dd);
      if (next / (1.0 - rho) < tol) break;
    }
  }
  return sum;
}

double max_rel_ent_coherence_multimode(unsigned d, double nbar_t, LogBase base) {
  return in_base(max_rel_ent_coherence(nbar_t) + s_d_series(d, nbar_t), base);
}

}  // namespace coherence::measures
