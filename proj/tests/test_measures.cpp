#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "coherence/error.hpp"
#include "coherence/measures.hpp"
#include "coherence/states.hpp"
#include "oracles.hpp"

using namespace coherence;
using namespace coherence::fock;
using namespace coherence::measures;

namespace {

double closed_form(double nbar) {
  if (nbar == 0.0) return 0.0;
  const long double x = nbar;
  return static_cast<double>((x + 1.0L) * std::log(x + 1.0L) - x * std::log(x));
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::usage;
}

}  // namespace

TEST_CASE("log base handling") {
  CHECK(parse_log_base("natural") == LogBase::natural);
  CHECK(parse_log_base("two") == LogBase::two);
  CHECK(to_string(LogBase::two) == "two");
  CHECK(kind_of([] { parse_log_base("ten"); }) == ErrorKind::invalid_argument);
  const auto s = states::pstd(1.7);
  CHECK(rel_ent_coherence(s, LogBase::two) ==
        doctest::Approx(rel_ent_coherence(s) / std::numbers::ln2).epsilon(1e-14));
}

TEST_CASE("max_rel_ent_coherence closed form") {
  for (double nbar : {0.0, 1e-6, 0.3, 1.0, 42.0, 1e6}) {
    CHECK(max_rel_ent_coherence(nbar) == doctest::Approx(closed_form(nbar)).epsilon(1e-13));
  }
  CHECK(max_rel_ent_coherence(1.0) == doctest::Approx(2.0 * std::numbers::ln2).epsilon(1e-15));
}

TEST_CASE("pure and dense relative entropy agree") {
  const auto s = states::coherent(Complex{1.1, 0.4});
  CHECK(rel_ent_coherence(densify(s)) == doctest::Approx(rel_ent_coherence(s)).epsilon(1e-10));
}

TEST_CASE("von Neumann entropy matches a generic eigen solver") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 2 + trial;
    Eigen::MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a(i, j) = {g(rng), g(rng)};
    Eigen::MatrixXcd rho = a * a.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    CHECK(von_neumann_entropy(DensityMatrix(rho)) == doctest::Approx(oracle::von_neumann(rho)).epsilon(1e-10));
  }
}

TEST_CASE("thermal states are incoherent") {
  const auto rho = states::thermal(1.0);
  CHECK(rel_ent_coherence(rho) == 0.0);
  CHECK(l1_coherence(rho) == 0.0);
  CHECK(von_neumann_entropy(rho) == doctest::Approx(closed_form(1.0)).epsilon(1e-10));
}

TEST_CASE("l1 norm of coherence") {
  const auto s = states::pstd(0.5);
  double root = 0.0;
  for (const Complex& c : s.amplitudes()) root += std::abs(c);
  CHECK(l1_coherence(s) == doctest::Approx(root * root - 1.0).epsilon(1e-13));
  CHECK(l1_coherence(densify(s)) == doctest::Approx(root * root - 1.0).epsilon(1e-12));
  CHECK(l1_coherence(PureFockState::vacuum()) == 0.0);
}

TEST_CASE("g2") {
  // Truncation error in g2 scales with the tail's second moment.
  states::TruncationPolicy fine;
  fine.tol = 1e-15;
  CHECK(g2_zero(states::coherent(1.3, fine)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(g2_zero(states::pstd(1.3, {}, fine)) == doctest::Approx(2.0).epsilon(1e-10));
  // squeezed vacuum: g2 = 3 + 1/sinh^2 r
  const double r = 0.6;
  CHECK(g2_zero(states::squeezed_vacuum(r, 0.0, fine)) ==
        doctest::Approx(3.0 + 1.0 / std::pow(std::sinh(r), 2)).epsilon(1e-10));
  CHECK(kind_of([] { g2_zero(PureFockState::vacuum()); }) == ErrorKind::undefined_correlation);
}

TEST_CASE("entropy error bar") {
  CHECK(entropy_error_bar(0.0) == 0.0);
  const double t = 1e-12;
  CHECK(entropy_error_bar(t) == doctest::Approx(t * (1.0 - std::log(t))));
}

TEST_CASE("multi-mode maximum against direct enumeration") {
  const auto rows = oracle::pascal(400);
  for (unsigned d : {1u, 2u, 3u, 5u}) {
    for (double nbar_t : {0.2, 1.0, 3.0}) {
      const double q = nbar_t / (nbar_t + 1.0);
      double h = 0.0;
      for (int n = 0; n <= 400 - static_cast<int>(d); ++n) {
        const double w = std::pow(q, n) / (nbar_t + 1.0);
        if (w < 1e-300) break;
        const double count = static_cast<double>(rows[n + d - 1][d - 1]);
        h += w * (std::log(count) - std::log(w));
      }
      CHECK(max_rel_ent_coherence_multimode(d, nbar_t) == doctest::Approx(h).epsilon(1e-11));
    }
  }
  CHECK(s_d_series(1, 2.0) == 0.0);
  CHECK(kind_of([] { s_d_series(0, 1.0); }) == ErrorKind::invalid_argument);
}

TEST_CASE("tmsv relative entropy is the single-mode maximum at half the photons") {
  for (double nbar_t : {0.4, 2.0, 6.0})
    CHECK(rel_ent_coherence(states::tmsv(nbar_t)) ==
          doctest::Approx(closed_form(nbar_t / 2.0)).epsilon(1e-10));
}
