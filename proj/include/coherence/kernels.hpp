#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64 builds, an AVX2+FMA version; the active one is picked at runtime
// from CPUID. Setting COHERENCE_ISA=scalar in the environment forces the
// reference path.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace coherence::kernels {

using Complex = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

struct PowerSums {
  double s0 = 0.0;  // sum g_n p_n
  double s1 = 0.0;  // sum g_n p_n n
  double s2 = 0.0;  // sum g_n p_n n^2
};

// Sums needed by one Newton step on the dual of
//   max sum_n sqrt(P_n)  s.t.  sum_n P_n s_n^j = target_j,  s_n = n * scale,
// where the inner maximizer is P_n = 1 / (4 c_n^2), c_n = t0 + t1 s_n + t2 s_n^2.
struct SqrtDualSums {
  double dual = 0.0;       // sum 1 / (4 c_n)
  double sqrt_mass = 0.0;  // sum 1 / (2 c_n) = sum sqrt(P_n)
  double p[3] = {};        // sum P_n s_n^j, j = 0..2
  double h[5] = {};        // sum s_n^k / (2 c_n^3), k = 0..4
  double min_c = 0.0;
};

struct KernelTable {
  Isa isa;
  double (*sum_sqrt)(std::span<const double> x);
  double (*abs_sum)(std::span<const Complex> x);
  PowerSums (*power_sums)(std::span<const double> p, std::span<const double> g);
  Complex (*weighted_cdot)(std::span<const Complex> a, std::span<const Complex> b,
                           std::span<const double> w);
  SqrtDualSums (*sqrt_dual_sums)(std::size_t count, double scale, double t0, double t1,
                                 double t2);
};

bool supported(Isa isa);
/// Table for a specific ISA; throws invalid-argument when unsupported.
const KernelTable& table(Isa isa);
/// Table selected for this process.
const KernelTable& active();

/// sum_i sqrt(x_i)
inline double sum_sqrt(std::span<const double> x) { return active().sum_sqrt(x); }
/// sum_i |x_i| with compensated summation.
inline double abs_sum(std::span<const Complex> x) { return active().abs_sum(x); }
/// Degeneracy-weighted moments of p over indices 0..size-1. Empty g means g_n = 1.
inline PowerSums power_sums(std::span<const double> p, std::span<const double> g = {}) {
  return active().power_sums(p, g);
}
/// sum_i conj(a_i) b_i w_i over the common length of a, b, w.
inline Complex weighted_cdot(std::span<const Complex> a, std::span<const Complex> b,
                             std::span<const double> w) {
  return active().weighted_cdot(a, b, w);
}
inline SqrtDualSums sqrt_dual_sums(std::size_t count, double scale, double t0, double t1,
                                   double t2) {
  return active().sqrt_dual_sums(count, scale, t0, t1, t2);
}

}  // namespace coherence::kernels
