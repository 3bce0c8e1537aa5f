#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "coherence/measures.hpp"
#include "coherence/states.hpp"
#include "random_states.hpp"

using namespace coherence;
using namespace coherence::fock;
using namespace coherence::measures;

TEST_CASE("relative entropy of coherence is convex under mixing") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dims(2, 16);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto dim = static_cast<std::size_t>(dims(rng));
    const Eigen::MatrixXcd a = testing_states::random_density(dim, rng);
    const Eigen::MatrixXcd b = testing_states::random_density(dim, rng);
    const double lambda = u(rng);
    const Eigen::MatrixXcd mix = lambda * a + (1.0 - lambda) * b;
    const double lhs = rel_ent_coherence(DensityMatrix(mix));
    const double rhs = lambda * rel_ent_coherence(DensityMatrix(a)) +
                       (1.0 - lambda) * rel_ent_coherence(DensityMatrix(b));
    CHECK(lhs <= rhs + 1e-9);
    CHECK(lhs >= -1e-12);
  }
}

TEST_CASE("pure and dense paths agree") {
  std::mt19937_64 rng(5);
  for (std::size_t dim : {1u, 2u, 7u, 16u, 33u, 64u, 65u}) {
    const PureFockState s(testing_states::random_amplitudes(dim, rng), 0.0);
    const DensityMatrix rho = densify(s);
    CHECK(rel_ent_coherence(rho) == doctest::Approx(rel_ent_coherence(s)).epsilon(1e-9));
    CHECK(l1_coherence(rho) == doctest::Approx(l1_coherence(s)).epsilon(1e-9));
  }
}

TEST_CASE("log base conversion is a fixed rescaling") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const PureFockState s(testing_states::random_amplitudes(10, rng), 0.0);
    CHECK(rel_ent_coherence(s, LogBase::two) * std::numbers::ln2 ==
          doctest::Approx(rel_ent_coherence(s)).epsilon(1e-14));
  }
}

TEST_CASE("constructor normalization invariants") {
  for (double x : {0.05, 0.5, 1.0, 2.5, 5.0}) {
    for (const auto& s : {states::pstd(x), states::coherent(std::sqrt(x)),
                          states::squeezed_vacuum(std::asinh(std::sqrt(x)))}) {
      CHECK(s.tail_bound() <= 1e-12);
      CHECK(std::abs(1.0 - s.norm_squared()) <= s.tail_bound() + 1e-13);
    }
    const auto th = number_distribution(states::thermal(x));
    CHECK(std::abs(1.0 - th.total_mass()) <= th.tail_bound() + 1e-13);
    const auto sq = states::squeezed(Complex{std::sqrt(x), 0.2}, 0.3, 0.4);
    CHECK(std::abs(1.0 - sq.total_mass()) <= sq.tail_bound() + 1e-13);
    for (const auto& t : {states::tmsv(x), states::tmsv_through_bs(x),
                          states::two_mode_coherent(std::sqrt(x / 2.0))}) {
      CHECK(t.tail_bound() <= 2e-12);
      CHECK(std::abs(1.0 - t.norm_squared()) <= t.tail_bound() + 1e-13);
    }
  }
}
