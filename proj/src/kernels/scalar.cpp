#include <algorithm>
#include <cmath>
#include <limits>

#include "internal.hpp"

namespace coherence::kernels::scalar {

namespace {

double sum_sqrt(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::sqrt(v);
  return s;
}

double abs_sum(std::span<const Complex> x) {
  double sum = 0.0;
  double comp = 0.0;
  for (const Complex& z : x) {
    const double term = std::sqrt(z.real() * z.real() + z.imag() * z.imag());
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

PowerSums power_sums(std::span<const double> p, std::span<const double> g) {
  PowerSums out;
  const bool weighted = !g.empty();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double n = static_cast<double>(i);
    const double w = weighted ? g[i] * p[i] : p[i];
    out.s0 += w;
    out.s1 += w * n;
    out.s2 += w * n * n;
  }
  return out;
}

Complex weighted_cdot(std::span<const Complex> a, std::span<const Complex> b,
                      std::span<const double> w) {
  const std::size_t count = std::min({a.size(), b.size(), w.size()});
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += w[i] * (ar * br + ai * bi);
    im += w[i] * (ar * bi - ai * br);
  }
  return {re, im};
}

SqrtDualSums sqrt_dual_sums(std::size_t count, double scale, double t0, double t1, double t2) {
  SqrtDualSums out;
  out.min_c = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) * scale;
    const double c = t0 + s * (t1 + s * t2);
    out.min_c = std::min(out.min_c, c);
    const double inv = 1.0 / c;
    const double prob = 0.25 * inv * inv;
    const double w = 0.5 * inv * inv * inv;
    out.dual += 0.25 * inv;
    out.sqrt_mass += 0.5 * inv;
    out.p[0] += prob;
    out.p[1] += prob * s;
    out.p[2] += prob * s * s;
    double sk = 1.0;
    for (double& h : out.h) {
      h += w * sk;
      sk *= s;
    }
  }
  return out;
}

}  // namespace

const KernelTable table{Isa::scalar, sum_sqrt, abs_sum, power_sums, weighted_cdot,
                        sqrt_dual_sums};

}  // namespace coherence::kernels::scalar
