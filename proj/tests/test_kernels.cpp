#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "coherence/kernels.hpp"

using namespace coherence;
using namespace coherence::kernels;

namespace {

std::vector<double> random_reals(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::vector<Complex> random_complex(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

TEST_CASE("active table is supported") {
  CHECK(supported(Isa::scalar));
  CHECK(active().sum_sqrt != nullptr);
}

TEST_CASE("vector kernels agree with the scalar reference") {
  if (!supported(Isa::avx2)) {
    MESSAGE("avx2 unavailable; only the reference path is tested");
    return;
  }
  const auto& ref = table(Isa::scalar);
  const auto& vec = table(Isa::avx2);
  std::mt19937_64 rng(7);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 17u, 100u, 1001u, 65537u}) {
    const auto p = random_reals(n, rng);
    const auto g = random_reals(n, rng);
    const auto a = random_complex(n, rng);
    const auto b = random_complex(n, rng);
    CHECK(close(ref.sum_sqrt(p), vec.sum_sqrt(p), 1e-13));
    CHECK(close(ref.abs_sum(a), vec.abs_sum(a), 1e-14));

    const PowerSums r1 = ref.power_sums(p, {});
    const PowerSums v1 = vec.power_sums(p, {});
    CHECK(close(r1.s0, v1.s0, 1e-13));
    CHECK(close(r1.s1, v1.s1, 1e-13));
    CHECK(close(r1.s2, v1.s2, 1e-13));
    const PowerSums r2 = ref.power_sums(p, g);
    const PowerSums v2 = vec.power_sums(p, g);
    CHECK(close(r2.s0, v2.s0, 1e-13));
    CHECK(close(r2.s1, v2.s1, 1e-13));
    CHECK(close(r2.s2, v2.s2, 1e-13));

    const Complex rc = ref.weighted_cdot(a, b, g);
    const Complex vc = vec.weighted_cdot(a, b, g);
    CHECK(std::abs(rc - vc) <= 1e-12 * std::max(1.0, std::abs(rc)) + 1e-12 * std::sqrt(double(n)));

    const SqrtDualSums rs = ref.sqrt_dual_sums(n, 1.0 / (n + 1.0), 0.4, 0.3, 0.2);
    const SqrtDualSums vs = vec.sqrt_dual_sums(n, 1.0 / (n + 1.0), 0.4, 0.3, 0.2);
    CHECK(close(rs.dual, vs.dual, 1e-13));
    CHECK(close(rs.sqrt_mass, vs.sqrt_mass, 1e-13));
    for (int k = 0; k < 3; ++k) CHECK(close(rs.p[k], vs.p[k], 1e-13));
    for (int k = 0; k < 5; ++k) CHECK(close(rs.h[k], vs.h[k], 1e-13));
    if (n > 0) CHECK(close(rs.min_c, vs.min_c, 1e-15));
  }
}

TEST_CASE("abs_sum is compensated") {
  std::vector<Complex> v(1000001, Complex{1e-8, 0.0});
  v[0] = 1.0;
  CHECK(std::abs(abs_sum(v) - 1.01) < 1e-15);
}

TEST_CASE("power_sums reference values") {
  const std::vector<double> p{0.5, 0.25, 0.25};
  const PowerSums s = power_sums(p);
  CHECK(s.s0 == doctest::Approx(1.0));
  CHECK(s.s1 == doctest::Approx(0.75));
  CHECK(s.s2 == doctest::Approx(1.25));
}
