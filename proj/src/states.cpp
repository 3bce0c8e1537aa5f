#include "coherence/states.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "coherence/error.hpp"
#include "coherence/special.hpp"

namespace coherence::states {

namespace {

using special::log_binomial;
using special::log_factorial;

constexpr double eps = std::numeric_limits<double>::epsilon();

void check_policy(const TruncationPolicy& policy) {
  require(policy.tol > 0.0 && policy.tol < 1.0, ErrorKind::invalid_argument,
          "truncation tol must lie in (0, 1)");
  require(policy.max_cutoff >= 1, ErrorKind::invalid_argument, "max_cutoff must be >= 1");
}

void check_capacity(std::size_t cutoff, const TruncationPolicy& policy, const char* what) {
  require(cutoff <= policy.max_cutoff, ErrorKind::capacity_exceeded,
          std::string(what) + ": cutoff " + std::to_string(cutoff) + " exceeds max_cutoff " +
              std::to_string(policy.max_cutoff));
}

struct GeometricLaw {
  double q = 0.0;          // ratio nbar / (nbar + 1)
  double log_q = 0.0;
  double log_one_minus_q = 0.0;

  explicit GeometricLaw(double nbar) {
    q = nbar / (nbar + 1.0);
    log_q = nbar > 0.0 ? -std::log1p(1.0 / nbar) : -std::numeric_limits<double>::infinity();
    log_one_minus_q = -std::log1p(nbar);
  }

  // ln P_n for P_n = (1 - q) q^n
  double log_prob(std::size_t n) const {
    if (n == 0) return log_one_minus_q;
    return log_one_minus_q + static_cast<double>(n) * log_q;
  }
};

// Smallest N with q^(N+1) <= tol.
std::size_t geometric_cutoff(const GeometricLaw& law, const TruncationPolicy& policy,
                             const char* what) {
  if (law.q == 0.0) return 0;
  const double estimate = std::log(policy.tol) / law.log_q - 1.0;
  require(estimate <= static_cast<double>(policy.max_cutoff) + 1.0, ErrorKind::capacity_exceeded,
          std::string(what) + ": required cutoff exceeds max_cutoff " +
              std::to_string(policy.max_cutoff));
  auto n = static_cast<std::size_t>(std::max(0.0, std::floor(estimate)));
  while (n > 0 && static_cast<double>(n) * law.log_q <= std::log(policy.tol)) --n;
  while (static_cast<double>(n + 1) * law.log_q > std::log(policy.tol)) ++n;
  check_capacity(n, policy, what);
  return n;
}

double geometric_tail(const GeometricLaw& law, std::size_t cutoff) {
  if (law.q == 0.0) return 0.0;
  return std::exp(static_cast<double>(cutoff + 1) * law.log_q);
}

// Cutoff for a Poisson law with mean nbar via the ratio bound
// P_{n+1}/P_n = nbar/(n+1) <= rho once n + 1 >= 2 nbar.
std::size_t poisson_cutoff(double nbar, const TruncationPolicy& policy, double& tail) {
  tail = 0.0;
  if (nbar == 0.0) return 0;
  const double log_nbar = std::log(nbar);
  auto n = static_cast<std::size_t>(std::max(0.0, std::ceil(2.0 * nbar) - 1.0));
  for (;; ++n) {
    check_capacity(n, policy, "coherent");
    const double rho = nbar / static_cast<double>(n + 1);
    if (rho > 0.5) continue;
    const double log_pn = -nbar + static_cast<double>(n) * log_nbar - log_factorial(static_cast<std::int64_t>(n));
    const double bound = std::exp(log_pn) * rho / (1.0 - rho);
    if (bound <= policy.tol) {
      tail = bound;
      return n;
    }
  }
}

std::vector<Complex> coherent_amplitudes(Complex alpha, const TruncationPolicy& policy,
                                         double& tail) {
  const double nbar = std::norm(alpha);
  const std::size_t cutoff = poisson_cutoff(nbar, policy, tail);
  std::vector<Complex> amps(cutoff + 1);
  if (nbar == 0.0) {
    amps[0] = 1.0;
    return amps;
  }
  const double log_abs = 0.5 * std::log(nbar);
  const double arg = std::arg(alpha);
  for (std::size_t n = 0; n <= cutoff; ++n) {
    const double nn = static_cast<double>(n);
    const double log_mag = -0.5 * nbar + nn * log_abs - 0.5 * log_factorial(static_cast<std::int64_t>(n));
    amps[n] = std::polar(std::exp(log_mag), nn * arg);
  }
  return amps;
}

// Cutoff (even) for squeezed vacuum from P_{2m+2}/P_{2m} = t^2 (2m+1)/(2m+2) < t^2.
std::size_t squeezed_vacuum_cutoff(double r, const TruncationPolicy& policy, double& tail) {
  tail = 0.0;
  if (r == 0.0) return 0;
  const double t = std::tanh(r);
  const double log_t = std::log(t);
  const double log_cosh = std::log(std::cosh(r));
  const double ratio = t * t / (1.0 - t * t);
  for (std::size_t m = 0;; ++m) {
    check_capacity(2 * m, policy, "squeezed");
    const auto mm = static_cast<std::int64_t>(m);
    const double log_p = -log_cosh + 2.0 * static_cast<double>(m) * log_t +
                         log_factorial(2 * mm) - 2.0 * static_cast<double>(m) * std::numbers::ln2 -
                         2.0 * log_factorial(mm);
    const double bound = std::exp(log_p) * ratio;
    if (bound <= policy.tol) {
      tail = bound;
      return 2 * m;
    }
  }
}

}  // namespace

PureFockState pstd(double nbar, LinearPhase phase, const TruncationPolicy& policy) {
  check_policy(policy);
  require(nbar >= 0.0 && std::isfinite(nbar), ErrorKind::invalid_argument,
          "pstd: nbar must be finite and nonnegative");
  const GeometricLaw law(nbar);
  return pstd_truncated(nbar, geometric_cutoff(law, policy, "pstd"), phase);
}

PureFockState pstd_truncated(double nbar, std::size_t cutoff, LinearPhase phase) {
  require(nbar >= 0.0 && std::isfinite(nbar), ErrorKind::invalid_argument,
          "pstd: nbar must be finite and nonnegative");
  const GeometricLaw law(nbar);
  if (law.q == 0.0) return PureFockState::vacuum();
  std::vector<Complex> amps(cutoff + 1);
  for (std::size_t n = 0; n <= cutoff; ++n)
    amps[n] = std::polar(std::exp(0.5 * law.log_prob(n)),
                         static_cast<double>(n) * phase.per_photon);
  return PureFockState(std::move(amps), geometric_tail(law, cutoff));
}

PureFockState coherent(Complex alpha, const TruncationPolicy& policy) {
  check_policy(policy);
  require(std::isfinite(alpha.real()) && std::isfinite(alpha.imag()), ErrorKind::invalid_argument,
          "coherent: alpha must be finite");
  double tail = 0.0;
  auto amps = coherent_amplitudes(alpha, policy, tail);
  return PureFockState(std::move(amps), tail);
}

PureFockState squeezed_vacuum(double r, double theta, const TruncationPolicy& policy) {
  check_policy(policy);
  require(r >= 0.0 && std::isfinite(r), ErrorKind::invalid_argument,
          "squeezed_vacuum: r must be finite and nonnegative");
  double tail = 0.0;
  const std::size_t cutoff = squeezed_vacuum_cutoff(r, policy, tail);
  if (cutoff == 0) return PureFockState::vacuum();
  const double log_t = std::log(std::tanh(r));
  const double log_cosh = std::log(std::cosh(r));
  std::vector<Complex> amps(cutoff + 1);
  // c_{2m} = (-e^{i theta} tanh r)^m sqrt((2m)!) / (2^m m! sqrt(cosh r))
  for (std::size_t m = 0; 2 * m <= cutoff; ++m) {
    const auto mm = static_cast<std::int64_t>(m);
    const double md = static_cast<double>(m);
    const double log_mag = -0.5 * log_cosh + md * log_t + 0.5 * log_factorial(2 * mm) -
                           md * std::numbers::ln2 - log_factorial(mm);
    amps[2 * m] = std::polar(std::exp(log_mag), md * (std::numbers::pi + theta));
  }
  return PureFockState(std::move(amps), tail);
}

NumberDistribution squeezed(Complex alpha, double r, double phase, const TruncationPolicy& policy) {
  check_policy(policy);
  require(r >= 0.0 && std::isfinite(r), ErrorKind::invalid_argument,
          "squeezed: r must be finite and nonnegative");
  require(std::isfinite(alpha.real()) && std::isfinite(alpha.imag()), ErrorKind::invalid_argument,
          "squeezed: alpha must be finite");
  if (r == 0.0) {
    double tail = 0.0;
    auto amps = coherent_amplitudes(alpha, policy, tail);
    std::vector<double> p;
    p.reserve(amps.size());
    for (const Complex& c : amps) p.push_back(std::norm(c));
    return NumberDistribution(std::move(p), tail);
  }

  const double t = std::tanh(r);
  const double log_t = std::log(t);
  const double log_cosh = std::log(std::cosh(r));
  const Complex e_phase = std::polar(1.0, phase);
  const Complex z = (alpha + std::conj(alpha) * e_phase * t) / std::sqrt(2.0 * e_phase * t);
  const double prefactor = -std::norm(alpha) - t * std::real(alpha * alpha * std::conj(e_phase));

  auto log_prob = [&](std::size_t n) {
    const special::ScaledComplex h = special::hermite(n, z);
    if (h.is_zero()) return -std::numeric_limits<double>::infinity();
    const double nn = static_cast<double>(n);
    return prefactor - nn * std::numbers::ln2 - log_factorial(static_cast<std::int64_t>(n)) -
           log_cosh + nn * log_t + 2.0 * h.log_abs();
  };

  std::vector<double> p;
  double tail = 0.0;
  if (alpha == Complex{}) {
    const std::size_t cutoff = squeezed_vacuum_cutoff(r, policy, tail);
    p.resize(cutoff + 1);
    for (std::size_t n = 0; n <= cutoff; ++n) p[n] = std::exp(log_prob(n));
    return NumberDistribution(std::move(p), tail);
  }

  // Displaced case: the exact normalization is 1, so the neglected mass is the
  // deficit of the compensated partial sum (plus a rounding allowance).
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t n = 0;; ++n) {
    check_capacity(n, policy, "squeezed");
    const double term = std::exp(log_prob(n));
    p.push_back(term);
    const double s = sum + term;
    if (std::abs(sum) >= term)
      comp += (sum - s) + term;
    else
      comp += (term - s) + sum;
    sum = s;
    const double rounding = 8.0 * static_cast<double>(n + 1) * eps;
    const double deficit = std::max(0.0, 1.0 - (sum + comp));
    if (deficit + rounding <= policy.tol) {
      tail = deficit + rounding;
      break;
    }
  }
  return NumberDistribution(std::move(p), tail);
}

DensityMatrix thermal(double nbar, const TruncationPolicy& policy) {
  check_policy(policy);
  require(nbar >= 0.0 && std::isfinite(nbar), ErrorKind::invalid_argument,
          "thermal: nbar must be finite and nonnegative");
  const GeometricLaw law(nbar);
  const std::size_t cutoff = geometric_cutoff(law, policy, "thermal");
  require(cutoff + 1 <= policy.dense_bound, ErrorKind::capacity_exceeded,
          "thermal: dimension " + std::to_string(cutoff + 1) + " exceeds dense bound " +
              std::to_string(policy.dense_bound));
  DensityMatrix::Matrix rho = DensityMatrix::Matrix::Zero(static_cast<Eigen::Index>(cutoff + 1),
                                                          static_cast<Eigen::Index>(cutoff + 1));
  for (std::size_t n = 0; n <= cutoff; ++n) {
    const auto k = static_cast<Eigen::Index>(n);
    rho(k, k) = law.q == 0.0 ? 1.0 : std::exp(law.log_prob(n));
  }
  return DensityMatrix(std::move(rho), geometric_tail(law, cutoff), policy.dense_bound);
}

NumberDistribution multimode_max_coherent(unsigned d, double nbar_t, const TruncationPolicy& policy) {
  check_policy(policy);
  require(d >= 1, ErrorKind::invalid_argument, "multimode_max_coherent: d must be >= 1");
  require(nbar_t >= 0.0 && std::isfinite(nbar_t), ErrorKind::invalid_argument,
          "multimode_max_coherent: nbar_t must be finite and nonnegative");
  const GeometricLaw law(nbar_t);
  const std::size_t cutoff = geometric_cutoff(law, policy, "multimode_max_coherent");
  std::vector<double> p(cutoff + 1);
  std::vector<double> g(cutoff + 1);
  const auto dm1 = static_cast<std::int64_t>(d) - 1;
  for (std::size_t n = 0; n <= cutoff; ++n) {
    const auto nn = static_cast<std::int64_t>(n);
    const double log_g = log_binomial(nn + dm1, dm1);
    g[n] = std::round(std::exp(log_g));
    p[n] = law.q == 0.0 ? 1.0 : std::exp(law.log_prob(n) - log_g);
  }
  return NumberDistribution(std::move(p), geometric_tail(law, cutoff), std::move(g));
}

TwoModePureState tmsv(double nbar_t, const TruncationPolicy& policy) {
  check_policy(policy);
  require(nbar_t >= 0.0 && std::isfinite(nbar_t), ErrorKind::invalid_argument,
          "tmsv: nbar_t must be finite and nonnegative");
  const GeometricLaw law(nbar_t / 2.0);
  const std::size_t cutoff = geometric_cutoff(law, policy, "tmsv");
  TwoModePureState::AmplitudeMap amps;
  for (std::size_t n = 0; n <= cutoff; ++n) {
    const auto k = static_cast<std::uint32_t>(n);
    amps[{k, k}] = law.q == 0.0 ? 1.0 : std::exp(0.5 * law.log_prob(n));
  }
  return TwoModePureState(std::move(amps), geometric_tail(law, cutoff));
}

TwoModePureState tmsv_through_bs(double nbar_t, const TruncationPolicy& policy) {
  check_policy(policy);
  require(nbar_t >= 0.0 && std::isfinite(nbar_t), ErrorKind::invalid_argument,
          "tmsv_through_bs: nbar_t must be finite and nonnegative");
  const GeometricLaw law(nbar_t / 2.0);
  const std::size_t cutoff = geometric_cutoff(law, policy, "tmsv_through_bs");
  TwoModePureState::AmplitudeMap amps;
  if (law.q == 0.0) {
    amps[{0, 0}] = 1.0;
    return TwoModePureState(std::move(amps), 0.0);
  }
  for (std::size_t n = 0; n <= cutoff; ++n) {
    const auto nn = static_cast<std::int64_t>(n);
    const double layer = 0.5 * law.log_prob(n);
    for (std::int64_t k = 0; k <= nn; ++k) {
      // (-1)^k C(n,k) [(2n-2k)! (2k)!]^(1/2) / (2^n n!)
      const double log_c = log_binomial(nn, k) +
                           0.5 * (log_factorial(2 * nn - 2 * k) + log_factorial(2 * k)) -
                           static_cast<double>(n) * std::numbers::ln2 - log_factorial(nn);
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      amps[{static_cast<std::uint32_t>(2 * nn - 2 * k), static_cast<std::uint32_t>(2 * k)}] =
          sign * std::exp(layer + log_c);
    }
  }
  return TwoModePureState(std::move(amps), geometric_tail(law, cutoff));
}

TwoModePureState beam_splitter(const TwoModePureState& state, double theta,
                               BeamSplitterConvention convention) {
  // Group amplitudes by total photon number T; basis of block T is |m, T-m>.
  std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, Complex>>> blocks;
  for (const auto& [key, amp] : state.amplitudes())
    blocks[key.first + key.second].emplace_back(key.first, amp);

  // Amplitudes this small are dropped from the sparse output.
  constexpr double drop_below = 1e-30;
  TwoModePureState::AmplitudeMap out;
  for (const auto& [total, entries] : blocks) {
    const auto dim = static_cast<Eigen::Index>(total) + 1;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (const auto& [m, amp] : entries) v(m) = amp;

    Eigen::VectorXcd w;
    if (total == 0) {
      w = v;
    } else {
      // a^dag b + a b^dag is real symmetric tridiagonal in this basis with
      // off-diagonal sqrt((m+1)(T-m)).
      Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
      Eigen::VectorXd off(dim - 1);
      for (Eigen::Index m = 0; m + 1 < dim; ++m)
        off(m) = std::sqrt(static_cast<double>((m + 1) * (static_cast<Eigen::Index>(total) - m)));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
      solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
      require(solver.info() == Eigen::Success, ErrorKind::invalid_state,
              "beam_splitter: eigendecomposition failed");
      const Eigen::MatrixXd& vecs = solver.eigenvectors();
      Eigen::VectorXcd phases(dim);
      for (Eigen::Index j = 0; j < dim; ++j)
        phases(j) = std::polar(1.0, theta * solver.eigenvalues()(j));

      // exp[theta (a^dag b - a b^dag)] = D^dag exp[i theta (a^dag b + a b^dag)] D
      // with D = diag(i^m).
      Eigen::VectorXcd in = v;
      if (convention == BeamSplitterConvention::real_rotation)
        for (Eigen::Index m = 0; m < dim; ++m) in(m) *= std::polar(1.0, 0.5 * std::numbers::pi * static_cast<double>(m));
      Eigen::VectorXcd coeffs = vecs.transpose().cast<Complex>() * in;
      coeffs = coeffs.cwiseProduct(phases);
      w = vecs.cast<Complex>() * coeffs;
      if (convention == BeamSplitterConvention::real_rotation)
        for (Eigen::Index m = 0; m < dim; ++m) w(m) *= std::polar(1.0, -0.5 * std::numbers::pi * static_cast<double>(m));
    }
    for (Eigen::Index m = 0; m < dim; ++m) {
      if (std::norm(w(m)) < drop_below) continue;
      out[{static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(total - m)}] = w(m);
    }
  }
  return TwoModePureState(std::move(out), state.tail_bound());
}

TwoModePureState beam_splitter_50_50(const TwoModePureState& state,
                                     BeamSplitterConvention convention) {
  return beam_splitter(state, std::numbers::pi / 4.0, convention);
}

TwoModePureState two_mode_coherent(Complex alpha, const TruncationPolicy& policy) {
  check_policy(policy);
  require(std::isfinite(alpha.real()) && std::isfinite(alpha.imag()), ErrorKind::invalid_argument,
          "two_mode_coherent: alpha must be finite");
  TruncationPolicy half = policy;
  half.tol = policy.tol / 2.0;
  double tail = 0.0;
  const auto amps = coherent_amplitudes(alpha, half, tail);
  TwoModePureState::AmplitudeMap out;
  for (std::size_t m = 0; m < amps.size(); ++m)
    for (std::size_t n = 0; n < amps.size(); ++n)
      out[{static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n)}] = amps[m] * amps[n];
  // 1 - (1 - t)^2 <= 2t
  return TwoModePureState(std::move(out), 2.0 * tail);
}

}  // namespace coherence::states
