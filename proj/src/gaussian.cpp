#include "coherence/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "coherence/error.hpp"
#include "coherence/special.hpp"

namespace coherence::gaussian {

CovarianceMatrix covariance_matrix(const fock::PureFockState& state) {
  const fock::Complex a = fock::moment(state, 0, 1);
  const fock::Complex a2 = fock::moment(state, 0, 2);
  const double n = fock::moment(state, 1, 1).real();
  const double x = std::numbers::sqrt2 * a.real();
  const double p = std::numbers::sqrt2 * a.imag();
  CovarianceMatrix g;
  g.xx = 2.0 * (a2.real() + n + 0.5 - x * x);
  g.pp = 2.0 * (-a2.real() + n + 0.5 - p * p);
  g.xp = 2.0 * (a2.imag() - x * p);
  return g;
}

CovarianceMatrix pstd_covariance_closed_form(double nbar, double tol) {
  require(nbar >= 0.0 && std::isfinite(nbar), ErrorKind::invalid_argument,
          "pstd_covariance_closed_form: nbar must be finite and nonnegative");
  require(tol > 0.0, ErrorKind::invalid_argument, "pstd_covariance_closed_form: tol must be positive");
  if (nbar == 0.0) return {};
  const double q = nbar / (nbar + 1.0);

  // sum_{n>=0} q^n sqrt((n+1)(n+2)); terms are below (n+2) q^n, so the tail
  // past M is at most q^(M+1) [(M+3)/(1-q) + q/(1-q)^2].
  double series = 0.0;
  double qn = 1.0;
  for (std::size_t n = 0;; ++n) {
    const double nn = static_cast<double>(n);
    series += qn * std::sqrt((nn + 1.0) * (nn + 2.0));
    qn *= q;
    const double tail = qn * ((nn + 3.0) / (1.0 - q) + q / ((1.0 - q) * (1.0 - q)));
    if (tail < tol) break;
  }
  const double a2 = nbar / ((nbar + 1.0) * (nbar + 1.0)) * series;
  const double a = special::polylog_neg_half(q, tol) / std::sqrt(nbar * (nbar + 1.0));

  CovarianceMatrix g;
  g.xx = 2.0 * (nbar + 0.5 + a2 - 2.0 * a * a);
  g.pp = 2.0 * (nbar + 0.5 - a2);
  g.xp = 0.0;
  return g;
}

double det_gamma(const CovarianceMatrix& gamma) { return gamma.det(); }

}  // namespace coherence::gaussian
