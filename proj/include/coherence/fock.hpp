#pragma once

// Truncated Fock-space states. Each state records a certified upper bound on
// the probability mass discarded by truncation; operations here propagate
// that bound but never recompute it.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace coherence::fock {

using Complex = std::complex<double>;

inline constexpr std::size_t default_dense_bound = 256;
// Rounding allowance when checking normalization invariants.
inline constexpr double norm_slack = 1e-12;

/// Pure single-mode state sum_{n<=N} c_n |n>.
class PureFockState {
public:
  PureFockState(std::vector<Complex> amps, double tail_bound);

  static PureFockState vacuum();

  std::span<const Complex> amplitudes() const { return amps_; }
  Complex amplitude(std::size_t n) const { return n < amps_.size() ? amps_[n] : Complex{}; }
  std::size_t cutoff() const { return amps_.size() - 1; }
  double tail_bound() const { return tail_bound_; }
  double norm_squared() const;

private:
  std::vector<Complex> amps_;
  double tail_bound_;
};

/// Photon-number probabilities. With a degeneracy vector, P_n is the
/// probability of each of the g_n basis states sharing total photon number n.
class NumberDistribution {
public:
  NumberDistribution(std::vector<double> probs, double tail_bound,
                     std::optional<std::vector<double>> degeneracy = std::nullopt);

  std::span<const double> probs() const { return probs_; }
  /// Empty when the distribution carries no degeneracy (g_n = 1).
  std::span<const double> degeneracy() const;
  bool has_degeneracy() const { return degeneracy_.has_value(); }
  double degeneracy_at(std::size_t n) const { return degeneracy_ ? (*degeneracy_)[n] : 1.0; }
  double tail_bound() const { return tail_bound_; }
  std::size_t cutoff() const { return probs_.size() - 1; }
  /// sum g_n P_n
  double total_mass() const;

private:
  std::vector<double> probs_;
  std::optional<std::vector<double>> degeneracy_;
  double tail_bound_;
};

/// Dense Hermitian density matrix in the number basis.
class DensityMatrix {
public:
  using Matrix = Eigen::MatrixXcd;

  explicit DensityMatrix(Matrix entries, double tail_bound = 0.0,
                         std::size_t dense_bound = default_dense_bound);

  const Matrix& entries() const { return entries_; }
  std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }
  double tail_bound() const { return tail_bound_; }
  /// True when every off-diagonal entry is exactly zero.
  bool is_diagonal() const;
  std::vector<double> diagonal() const;

private:
  Matrix entries_;
  double tail_bound_;
};

using ModePair = std::pair<std::uint32_t, std::uint32_t>;

/// Sparse two-mode pure state keyed by occupation pairs (n1, n2).
class TwoModePureState {
public:
  using AmplitudeMap = std::map<ModePair, Complex>;

  TwoModePureState(AmplitudeMap amps, double tail_bound);

  const AmplitudeMap& amplitudes() const { return amps_; }
  Complex amplitude(std::uint32_t n1, std::uint32_t n2) const;
  std::size_t total_cutoff() const { return total_cutoff_; }
  double tail_bound() const { return tail_bound_; }
  double norm_squared() const;
  /// <n1 + n2>
  double mean_total_photons() const;

private:
  AmplitudeMap amps_;
  std::size_t total_cutoff_ = 0;
  double tail_bound_;
};

NumberDistribution number_distribution(const PureFockState& state);
NumberDistribution number_distribution(const DensityMatrix& rho);
/// Flattened joint distribution over the stored occupation pairs, in key order.
NumberDistribution number_distribution(const TwoModePureState& state);

/// <psi| (a^dagger)^k a^l |psi> on the truncated state.
Complex moment(const PureFockState& state, unsigned k, unsigned l);

double mean_n(const NumberDistribution& dist);
double second_moment(const NumberDistribution& dist);

DensityMatrix densify(const PureFockState& state, std::size_t dense_bound = default_dense_bound);

}  // namespace coherence::fock
