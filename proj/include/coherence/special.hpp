#pragma once

// Special functions evaluated in log space. Factorials, binomials and
// Hermite polynomials overflow doubles long before the photon-number cutoffs
// used elsewhere in the library, so everything here returns logarithms or
// carries an explicit log scale.

#include <complex>
#include <cstdint>
#include <vector>

namespace coherence::special {

using Complex = std::complex<double>;

/// Signed real stored as sign * exp(log_magnitude).
struct LogReal {
  int sign = 0;
  double log_magnitude = 0.0;

  static LogReal from_value(double x);
  double value() const;

  friend LogReal operator*(LogReal a, LogReal b) {
    return {a.sign * b.sign, a.log_magnitude + b.log_magnitude};
  }
};

/// Complex value stored as unit * exp(log_scale) with |unit| == 1, or
/// unit == 0 for an exact zero.
struct ScaledComplex {
  Complex unit{0.0, 0.0};
  double log_scale = 0.0;

  bool is_zero() const { return unit == Complex{}; }
  /// ln|value|; -inf for zero.
  double log_abs() const;
  /// Materialized value. Overflows to inf for very large magnitudes.
  Complex value() const;
};

/// Table of ln(k!) for k < size built by compensated cumulative summation.
/// Arguments past the table fall back to the Stirling series.
class LogFactorialTable {
public:
  explicit LogFactorialTable(std::size_t size);

  double operator()(std::uint64_t n) const;
  std::size_t size() const { return table_.size(); }

private:
  std::vector<double> table_;
};

/// Process-wide table (2^16 entries), built once on first use.
const LogFactorialTable& default_log_factorials();

double log_factorial(std::int64_t n);
double log_binomial(std::int64_t n, std::int64_t k);
/// ln((n-1)!!) for even n >= 0 with (-1)!! = 1.
double log_double_factorial_odd(std::int64_t n);
/// sum_{j=1..k} ln(n + j) = ln((n+k)!/n!)
double log_rising(std::uint64_t n, std::uint64_t k);

/// Physicists' Hermite polynomial H_n(z) with a running log scale so large
/// orders do not overflow.
ScaledComplex hermite(std::uint64_t n, Complex z);

/// Li_{-1/2}(q) = sum_{n>=1} sqrt(n) q^n, truncated once the analytic tail
/// bound sqrt(M+1) q^(M+1) / (1-q)^2 drops below tol.
double polylog_neg_half(double q, double tol);

}  // namespace coherence::special
