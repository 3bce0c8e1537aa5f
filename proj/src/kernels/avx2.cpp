#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "internal.hpp"

namespace coherence::kernels::avx2 {

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Lane-wise Neumaier accumulator.
struct Compensated {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();

  void add(__m256d term) {
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    const __m256d t = _mm256_add_pd(sum, term);
    const __m256d big_sum =
        _mm256_cmp_pd(_mm256_and_pd(sum, abs_mask), _mm256_and_pd(term, abs_mask), _CMP_GE_OQ);
    const __m256d when_sum = _mm256_add_pd(_mm256_sub_pd(sum, t), term);
    const __m256d when_term = _mm256_add_pd(_mm256_sub_pd(term, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(when_term, when_sum, big_sum));
    sum = t;
  }
};

double sum_sqrt(std::span<const double> x) {
  const std::size_t n = x.size();
  const double* p = x.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_sqrt_pd(_mm256_loadu_pd(p + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_sqrt_pd(_mm256_loadu_pd(p + i + 4)));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_sqrt_pd(_mm256_loadu_pd(p + i)));
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += std::sqrt(p[i]);
  return s;
}

double abs_sum(std::span<const Complex> x) {
  const std::size_t n = x.size();
  const double* p = reinterpret_cast<const double*>(x.data());
  Compensated acc;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d z01 = _mm256_loadu_pd(p + 2 * i);
    const __m256d z23 = _mm256_loadu_pd(p + 2 * i + 4);
    // hadd gives |z0|^2, |z2|^2, |z1|^2, |z3|^2; order is irrelevant here.
    const __m256d sq = _mm256_hadd_pd(_mm256_mul_pd(z01, z01), _mm256_mul_pd(z23, z23));
    acc.add(_mm256_sqrt_pd(sq));
  }
  alignas(32) double sums[4];
  alignas(32) double comps[4];
  _mm256_store_pd(sums, acc.sum);
  _mm256_store_pd(comps, acc.comp);
  double sum = 0.0;
  double comp = 0.0;
  auto add = [&](double term) {
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  };
  for (int k = 0; k < 4; ++k) add(sums[k]);
  for (; i < n; ++i) add(std::sqrt(x[i].real() * x[i].real() + x[i].imag() * x[i].imag()));
  return sum + comp + (comps[0] + comps[1] + comps[2] + comps[3]);
}

PowerSums power_sums(std::span<const double> prob, std::span<const double> g) {
  const std::size_t n = prob.size();
  const bool weighted = !g.empty();
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  __m256d a2 = _mm256_setzero_pd();
  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d step = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d w = _mm256_loadu_pd(prob.data() + i);
    if (weighted) w = _mm256_mul_pd(w, _mm256_loadu_pd(g.data() + i));
    a0 = _mm256_add_pd(a0, w);
    const __m256d wn = _mm256_mul_pd(w, idx);
    a1 = _mm256_add_pd(a1, wn);
    a2 = _mm256_fmadd_pd(wn, idx, a2);
    idx = _mm256_add_pd(idx, step);
  }
  PowerSums out{hsum(a0), hsum(a1), hsum(a2)};
  for (; i < n; ++i) {
    const double k = static_cast<double>(i);
    const double w = weighted ? g[i] * prob[i] : prob[i];
    out.s0 += w;
    out.s1 += w * k;
    out.s2 += w * k * k;
  }
  return out;
}

Complex weighted_cdot(std::span<const Complex> a, std::span<const Complex> b,
                      std::span<const double> w) {
  const std::size_t n = std::min({a.size(), b.size(), w.size()});
  const double* pa = reinterpret_cast<const double*>(a.data());
  const double* pb = reinterpret_cast<const double*>(b.data());
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d vw = _mm256_setr_pd(w[i], w[i], w[i + 1], w[i + 1]);
    const __m256d wa = _mm256_mul_pd(vw, va);
    // lanes: ar*br, ai*bi  |  ar*bi, ai*br
    acc_re = _mm256_fmadd_pd(wa, vb, acc_re);
    acc_im = _mm256_fmadd_pd(wa, _mm256_permute_pd(vb, 0b0101), acc_im);
  }
  alignas(32) double re[4];
  alignas(32) double im[4];
  _mm256_store_pd(re, acc_re);
  _mm256_store_pd(im, acc_im);
  double sr = (re[0] + re[1]) + (re[2] + re[3]);
  double si = (im[0] - im[1]) + (im[2] - im[3]);
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    sr += w[i] * (ar * br + ai * bi);
    si += w[i] * (ar * bi - ai * br);
  }
  return {sr, si};
}

SqrtDualSums sqrt_dual_sums(std::size_t count, double scale, double t0, double t1, double t2) {
  const __m256d vt0 = _mm256_set1_pd(t0);
  const __m256d vt1 = _mm256_set1_pd(t1);
  const __m256d vt2 = _mm256_set1_pd(t2);
  const __m256d vscale = _mm256_set1_pd(scale);
  const __m256d quarter = _mm256_set1_pd(0.25);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d step = _mm256_set1_pd(4.0);
  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  __m256d dual = _mm256_setzero_pd(), mass = _mm256_setzero_pd();
  __m256d p0 = _mm256_setzero_pd(), p1 = _mm256_setzero_pd(), p2 = _mm256_setzero_pd();
  __m256d h0 = _mm256_setzero_pd(), h1 = _mm256_setzero_pd(), h2 = _mm256_setzero_pd();
  __m256d h3 = _mm256_setzero_pd(), h4 = _mm256_setzero_pd();
  __m256d minc = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d s = _mm256_mul_pd(idx, vscale);
    const __m256d c = _mm256_fmadd_pd(s, _mm256_fmadd_pd(s, vt2, vt1), vt0);
    minc = _mm256_min_pd(minc, c);
    const __m256d inv = _mm256_div_pd(one, c);
    const __m256d inv2 = _mm256_mul_pd(inv, inv);
    const __m256d prob = _mm256_mul_pd(quarter, inv2);
    const __m256d w = _mm256_mul_pd(half, _mm256_mul_pd(inv2, inv));
    dual = _mm256_fmadd_pd(quarter, inv, dual);
    mass = _mm256_fmadd_pd(half, inv, mass);
    p0 = _mm256_add_pd(p0, prob);
    const __m256d ps = _mm256_mul_pd(prob, s);
    p1 = _mm256_add_pd(p1, ps);
    p2 = _mm256_fmadd_pd(ps, s, p2);
    h0 = _mm256_add_pd(h0, w);
    const __m256d w1 = _mm256_mul_pd(w, s);
    h1 = _mm256_add_pd(h1, w1);
    const __m256d w2 = _mm256_mul_pd(w1, s);
    h2 = _mm256_add_pd(h2, w2);
    const __m256d w3 = _mm256_mul_pd(w2, s);
    h3 = _mm256_add_pd(h3, w3);
    h4 = _mm256_fmadd_pd(w3, s, h4);
    idx = _mm256_add_pd(idx, step);
  }
  SqrtDualSums out;
  out.dual = hsum(dual);
  out.sqrt_mass = hsum(mass);
  out.p[0] = hsum(p0);
  out.p[1] = hsum(p1);
  out.p[2] = hsum(p2);
  out.h[0] = hsum(h0);
  out.h[1] = hsum(h1);
  out.h[2] = hsum(h2);
  out.h[3] = hsum(h3);
  out.h[4] = hsum(h4);
  alignas(32) double mins[4];
  _mm256_store_pd(mins, minc);
  out.min_c = std::min({mins[0], mins[1], mins[2], mins[3]});
  for (; i < count; ++i) {
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

const KernelTable table{Isa::avx2, sum_sqrt, abs_sum, power_sums, weighted_cdot,
                        sqrt_dual_sums};

}  // namespace coherence::kernels::avx2
