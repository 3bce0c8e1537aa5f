#include "coherence/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "coherence/error.hpp"

namespace coherence::special {

namespace {

// ln(n!) via Stirling with four correction terms. For n >= 256 the first
// omitted term is below 1e-20.
double stirling_log_factorial(double n) {
  const double inv = 1.0 / n;
  const double inv2 = inv * inv;
  const double series =
      inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
  return (n + 0.5) * std::log(n) - n + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace

LogReal LogReal::from_value(double x) {
  if (x == 0.0) return {0, 0.0};
  return {x > 0 ? 1 : -1, std::log(std::abs(x))};
}

double LogReal::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_magnitude);
}

double ScaledComplex::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return log_scale + std::log(std::abs(unit));
}

Complex ScaledComplex::value() const {
  if (is_zero()) return {};
  return unit * std::exp(log_scale);
}

LogFactorialTable::LogFactorialTable(std::size_t size) : table_(std::max<std::size_t>(size, 2)) {
  // Neumaier summation keeps the running sum accurate to a few ulp.
  double sum = 0.0;
  double comp = 0.0;
  table_[0] = 0.0;
  for (std::size_t k = 1; k < table_.size(); ++k) {
    const double term = std::log(static_cast<double>(k));
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
    table_[k] = sum + comp;
  }
}

double LogFactorialTable::operator()(std::uint64_t n) const {
  if (n < table_.size()) return table_[n];
  return stirling_log_factorial(static_cast<double>(n));
}

const LogFactorialTable& default_log_factorials() {
  static const LogFactorialTable table(std::size_t{1} << 16);
  return table;
}

double log_factorial(std::int64_t n) {
  require(n >= 0, ErrorKind::invalid_argument, "log_factorial: n must be nonnegative");
  return default_log_factorials()(static_cast<std::uint64_t>(n));
}

double log_binomial(std::int64_t n, std::int64_t k) {
  require(n >= 0 && k >= 0 && k <= n, ErrorKind::invalid_argument,
          "log_binomial: need 0 <= k <= n, got n=" + std::to_string(n) +
              " k=" + std::to_string(k));
  if (k == 0 || k == n) return 0.0;
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_double_factorial_odd(std::int64_t n) {
  require(n >= 0 && n % 2 == 0, ErrorKind::invalid_argument,
          "log_double_factorial_odd: n must be even and nonnegative");
  // (n-1)!! = n! / (2^(n/2) (n/2)!)
  const std::int64_t half = n / 2;
  return log_factorial(n) - static_cast<double>(half) * std::numbers::ln2 - log_factorial(half);
}

double log_rising(std::uint64_t n, std::uint64_t k) {
  double s = 0.0;
  for (std::uint64_t j = 1; j <= k; ++j) s += std::log(static_cast<double>(n + j));
  return s;
}

ScaledComplex hermite(std::uint64_t n, Complex z) {
  // Carry (H_{k-1}, H_k) / exp(scale); renormalize whenever the pair drifts
  // far from unit magnitude.
  Complex prev{1.0, 0.0};
  double scale = 0.0;
  if (n == 0) return {prev, 0.0};
  Complex cur = 2.0 * z;
  for (std::uint64_t k = 1; k < n; ++k) {
    const Complex next = 2.0 * z * cur - 2.0 * static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
    const double m = std::max(std::abs(prev), std::abs(cur));
    if (m > 1e100 || (m < 1e-100 && m > 0.0)) {
      prev /= m;
      cur /= m;
      scale += std::log(m);
    }
  }
  const double mag = std::abs(cur);
  if (mag == 0.0) return {Complex{}, 0.0};
  return {cur / mag, scale + std::log(mag)};
}

double polylog_neg_half(double q, double tol) {
  require(tol > 0.0, ErrorKind::invalid_argument, "polylog_neg_half: tol must be positive");
  require(q >= 0.0, ErrorKind::invalid_argument, "polylog_neg_half: q must be nonnegative");
  require(q < 1.0, ErrorKind::divergence, "polylog_neg_half: series diverges for q >= 1");
  if (q == 0.0) return 0.0;
  const double denom = (1.0 - q) * (1.0 - q);
  double sum = 0.0;
  double qn = 1.0;
  for (std::uint64_t m = 1;; ++m) {
    qn *= q;
    sum += std::sqrt(static_cast<double>(m)) * qn;
    const double tail = std::sqrt(static_cast<double>(m + 1)) * qn * q / denom;
    if (tail < tol) break;
  }
  return sum;
}

}  // namespace coherence::special
