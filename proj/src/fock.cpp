#include "coherence/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coherence/error.hpp"
#include "coherence/kernels.hpp"
#include "coherence/special.hpp"

namespace coherence::fock {

namespace {

void check_norm(double norm2, double tail_bound, const char* what) {
  require(tail_bound >= 0.0 && std::isfinite(tail_bound), ErrorKind::invalid_state,
          std::string(what) + ": tail bound must be finite and nonnegative");
  require(norm2 <= 1.0 + norm_slack && norm2 >= 1.0 - tail_bound - norm_slack,
          ErrorKind::invalid_state,
          std::string(what) + ": norm " + std::to_string(norm2) +
              " outside [1 - tail_bound, 1]");
}

}  // namespace

PureFockState::PureFockState(std::vector<Complex> amps, double tail_bound)
    : amps_(std::move(amps)), tail_bound_(tail_bound) {
  require(!amps_.empty(), ErrorKind::invalid_state, "PureFockState: no amplitudes");
  check_norm(norm_squared(), tail_bound_, "PureFockState");
}

PureFockState PureFockState::vacuum() { return PureFockState({Complex{1.0, 0.0}}, 0.0); }

double PureFockState::norm_squared() const {
  double s = 0.0;
  for (const Complex& c : amps_) s += std::norm(c);
  return s;
}

NumberDistribution::NumberDistribution(std::vector<double> probs, double tail_bound,
                                       std::optional<std::vector<double>> degeneracy)
    : probs_(std::move(probs)), degeneracy_(std::move(degeneracy)), tail_bound_(tail_bound) {
  require(!probs_.empty(), ErrorKind::invalid_state, "NumberDistribution: empty");
  for (double p : probs_)
    require(p >= 0.0 && std::isfinite(p), ErrorKind::invalid_state,
            "NumberDistribution: probabilities must be finite and nonnegative");
  if (degeneracy_) {
    require(degeneracy_->size() == probs_.size(), ErrorKind::invalid_state,
            "NumberDistribution: degeneracy length mismatch");
    for (double g : *degeneracy_)
      require(g >= 1.0, ErrorKind::invalid_state, "NumberDistribution: degeneracy must be >= 1");
  }
  check_norm(total_mass(), tail_bound_, "NumberDistribution");
}

std::span<const double> NumberDistribution::degeneracy() const {
  if (!degeneracy_) return {};
  return *degeneracy_;
}

double NumberDistribution::total_mass() const {
  return kernels::power_sums(probs_, degeneracy()).s0;
}

DensityMatrix::DensityMatrix(Matrix entries, double tail_bound, std::size_t dense_bound)
    : entries_(std::move(entries)), tail_bound_(tail_bound) {
  require(entries_.rows() == entries_.cols() && entries_.rows() > 0, ErrorKind::invalid_state,
          "DensityMatrix: must be square and nonempty");
  require(dimension() <= dense_bound, ErrorKind::capacity_exceeded,
          "DensityMatrix: dimension " + std::to_string(dimension()) + " exceeds dense bound " +
              std::to_string(dense_bound));
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  require(asym <= 1e-12, ErrorKind::invalid_state, "DensityMatrix: not Hermitian");
  const double trace = entries_.trace().real();
  require(trace >= 1.0 - std::max(1e-10, tail_bound_ + norm_slack) && trace <= 1.0 + 1e-10,
          ErrorKind::invalid_state, "DensityMatrix: trace " + std::to_string(trace));
}

bool DensityMatrix::is_diagonal() const {
  const auto n = entries_.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != j && entries_(i, j) != Complex{}) return false;
  return true;
}

std::vector<double> DensityMatrix::diagonal() const {
  std::vector<double> d(dimension());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    d[i] = entries_(k, k).real();
  }
  return d;
}

TwoModePureState::TwoModePureState(AmplitudeMap amps, double tail_bound)
    : amps_(std::move(amps)), tail_bound_(tail_bound) {
  require(!amps_.empty(), ErrorKind::invalid_state, "TwoModePureState: no amplitudes");
  for (const auto& [key, amp] : amps_)
    total_cutoff_ = std::max<std::size_t>(total_cutoff_, key.first + key.second);
  check_norm(norm_squared(), tail_bound_, "TwoModePureState");
}

Complex TwoModePureState::amplitude(std::uint32_t n1, std::uint32_t n2) const {
  const auto it = amps_.find({n1, n2});
  return it == amps_.end() ? Complex{} : it->second;
}

double TwoModePureState::norm_squared() const {
  double s = 0.0;
  for (const auto& [key, amp] : amps_) s += std::norm(amp);
  return s;
}

double TwoModePureState::mean_total_photons() const {
  double s = 0.0;
  for (const auto& [key, amp] : amps_) s += std::norm(amp) * (key.first + key.second);
  return s;
}

NumberDistribution number_distribution(const PureFockState& state) {
  std::vector<double> p;
  p.reserve(state.amplitudes().size());
  for (const Complex& c : state.amplitudes()) p.push_back(std::norm(c));
  return NumberDistribution(std::move(p), state.tail_bound());
}

NumberDistribution number_distribution(const DensityMatrix& rho) {
  std::vector<double> p = rho.diagonal();
  for (double& x : p) x = std::max(x, 0.0);
  return NumberDistribution(std::move(p), rho.tail_bound());
}

NumberDistribution number_distribution(const TwoModePureState& state) {
  std::vector<double> p;
  p.reserve(state.amplitudes().size());
  for (const auto& [key, amp] : state.amplitudes()) p.push_back(std::norm(amp));
  return NumberDistribution(std::move(p), state.tail_bound());
}

Complex moment(const PureFockState& state, unsigned k, unsigned l) {
  const auto amps = state.amplitudes();
  const std::size_t shift = std::max(k, l);
  if (amps.size() <= shift) return {};
  const std::size_t count = amps.size() - shift;
  std::vector<double> w(count);
  for (std::size_t n = 0; n < count; ++n)
    w[n] = std::exp(0.5 * (special::log_rising(n, k) + special::log_rising(n, l)));
  return kernels::weighted_cdot(amps.subspan(k, count), amps.subspan(l, count), w);
}

double mean_n(const NumberDistribution& dist) {
  return kernels::power_sums(dist.probs(), dist.degeneracy()).s1;
}

double second_moment(const NumberDistribution& dist) {
  return kernels::power_sums(dist.probs(), dist.degeneracy()).s2;
}

DensityMatrix densify(const PureFockState& state, std::size_t dense_bound) {
  const std::size_t dim = state.amplitudes().size();
  require(dim <= dense_bound, ErrorKind::capacity_exceeded,
          "densify: cutoff " + std::to_string(state.cutoff()) + " exceeds dense bound " +
              std::to_string(dense_bound));
  const auto amps = state.amplitudes();
  Eigen::Map<const Eigen::VectorXcd> psi(amps.data(), static_cast<Eigen::Index>(dim));
  DensityMatrix::Matrix rho = psi * psi.adjoint();
  for (Eigen::Index i = 0; i < rho.rows(); ++i) rho(i, i) = std::norm(psi(i));
  return DensityMatrix(std::move(rho), state.tail_bound(), dense_bound);
}

}  // namespace coherence::fock
