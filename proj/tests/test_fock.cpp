#include <doctest.h>

#include <cmath>

#include "coherence/error.hpp"
#include "coherence/fock.hpp"

using namespace coherence;
using namespace coherence::fock;

namespace {

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

TEST_CASE("pure state validation") {
  CHECK(PureFockState::vacuum().norm_squared() == 1.0);
  CHECK(PureFockState::vacuum().cutoff() == 0);
  CHECK(kind_of([] { PureFockState({Complex{1.0}, Complex{1.0}}, 0.0); }) == ErrorKind::invalid_state);
  CHECK(kind_of([] { PureFockState({}, 0.0); }) == ErrorKind::invalid_state);
  // Deficit allowed up to the declared tail bound.
  PureFockState s({Complex{std::sqrt(0.999)}}, 1e-3);
  CHECK(s.norm_squared() == doctest::Approx(0.999));
}

TEST_CASE("moments of a simple superposition") {
  const double h = std::sqrt(0.5);
  PureFockState s({Complex{h}, Complex{0.0}, Complex{0.0, h}}, 0.0);
  CHECK(moment(s, 1, 1).real() == doctest::Approx(1.0));
  // <a^2> = sqrt(2) c0* c2
  const Complex a2 = moment(s, 0, 2);
  CHECK(a2.real() == doctest::Approx(0.0));
  CHECK(a2.imag() == doctest::Approx(std::sqrt(2.0) * 0.5));
  const auto d = number_distribution(s);
  CHECK(mean_n(d) == doctest::Approx(1.0));
  CHECK(second_moment(d) == doctest::Approx(2.0));
}

TEST_CASE("number distribution degeneracy") {
  NumberDistribution d({0.5, 0.25}, 0.0, std::vector<double>{1.0, 2.0});
  CHECK(d.has_degeneracy());
  CHECK(d.total_mass() == doctest::Approx(1.0));
  CHECK(d.degeneracy_at(1) == 2.0);
  CHECK(kind_of([] { NumberDistribution({0.5, -0.5}, 0.0); }) == ErrorKind::invalid_state);
}

TEST_CASE("density matrix checks") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  m(0, 1) = Complex{0.1, 0.2};
  CHECK(kind_of([&] { DensityMatrix{m}; }) == ErrorKind::invalid_state);
  m(1, 0) = std::conj(m(0, 1));
  DensityMatrix rho(m);
  CHECK_FALSE(rho.is_diagonal());
  CHECK(rho.diagonal()[1] == 0.5);
  CHECK(kind_of([] { DensityMatrix(Eigen::MatrixXcd::Identity(300, 300) / 300.0); }) ==
        ErrorKind::capacity_exceeded);
}

TEST_CASE("densify keeps the diagonal exact") {
  PureFockState s({Complex{0.6}, Complex{0.0, 0.8}}, 0.0);
  const DensityMatrix rho = densify(s);
  CHECK(rho.entries()(0, 0).real() == std::norm(Complex{0.6}));
  CHECK(std::abs(rho.entries()(0, 1) - Complex{0.6} * std::conj(Complex{0.0, 0.8})) < 1e-15);
  CHECK(kind_of([] {
          densify(PureFockState(std::vector<Complex>(300, Complex{1.0 / std::sqrt(300.0)}), 0.0), 256);
        }) == ErrorKind::capacity_exceeded);
}

TEST_CASE("two-mode state bookkeeping") {
  const double h = std::sqrt(0.5);
  TwoModePureState s({{ModePair{0, 0}, Complex{h}}, {ModePair{1, 2}, Complex{h}}}, 0.0);
  CHECK(s.total_cutoff() == 3);
  CHECK(s.mean_total_photons() == doctest::Approx(1.5));
  CHECK(s.amplitude(2, 1) == Complex{});
  const auto d = number_distribution(s);
  CHECK(d.probs().size() == 2);
}
