#pragma once

// Constructors for the states analysed by the library. Every constructor
// chooses its own cutoff and records a certified bound on the neglected
// probability mass.

#include <complex>
#include <cstddef>

#include "coherence/fock.hpp"

namespace coherence::states {

using Complex = std::complex<double>;
using fock::DensityMatrix;
using fock::NumberDistribution;
using fock::PureFockState;
using fock::TwoModePureState;

struct TruncationPolicy {
  double tol = 1e-12;              // maximum neglected probability mass
  std::size_t max_cutoff = 1000000;
  std::size_t dense_bound = fock::default_dense_bound;
};

/// phi_n = n * per_photon. per_photon = 0 gives real nonnegative amplitudes.
struct LinearPhase {
  double per_photon = 0.0;
};

/// Pure state with thermal (geometric) photon statistics:
/// c_n = nbar^(n/2) / (nbar+1)^((n+1)/2) e^{i phi_n}.
PureFockState pstd(double nbar, LinearPhase phase = {}, const TruncationPolicy& policy = {});
/// Same amplitudes at an explicit cutoff; tail bound is (nbar/(nbar+1))^(cutoff+1).
PureFockState pstd_truncated(double nbar, std::size_t cutoff, LinearPhase phase = {});

PureFockState coherent(Complex alpha, const TruncationPolicy& policy = {});

/// Squeezed vacuum S(xi)|0> with xi = r e^{i theta}, S(xi) = exp[(xi* a^2 - xi a^dag^2)/2].
PureFockState squeezed_vacuum(double r, double theta = 0.0, const TruncationPolicy& policy = {});

/// Photon-number distribution of the displaced squeezed state: squeeze by
/// r (phase `phase` as it enters the Hermite-polynomial expression), then
/// displace by alpha.
NumberDistribution squeezed(Complex alpha, double r, double phase = 0.0,
                            const TruncationPolicy& policy = {});

/// Diagonal thermal state with entries nbar^n / (nbar+1)^(n+1).
DensityMatrix thermal(double nbar, const TruncationPolicy& policy = {});

/// Maximal coherent state of d modes at mean total photon number nbar_t,
/// represented by per-total-n probabilities with degeneracy C(n+d-1, d-1).
NumberDistribution multimode_max_coherent(unsigned d, double nbar_t,
                                          const TruncationPolicy& policy = {});

/// Two-mode squeezed vacuum with mean total photon number nbar_t.
TwoModePureState tmsv(double nbar_t, const TruncationPolicy& policy = {});

enum class BeamSplitterConvention {
  // exp[theta (a^dag b - a b^dag)]; maps a^dag -> (a^dag - b^dag)/sqrt2 at theta = pi/4.
  real_rotation,
  // exp[i theta (a^dag b + a b^dag)]; same magnitudes, photon-number dependent phases.
  symmetric,
};

/// Lossless beam splitter with mixing angle theta, applied exactly within
/// each fixed-total-photon-number block.
TwoModePureState beam_splitter(const TwoModePureState& state, double theta,
                               BeamSplitterConvention convention = BeamSplitterConvention::real_rotation);

/// beam_splitter at theta = pi/4.
TwoModePureState beam_splitter_50_50(
    const TwoModePureState& state,
    BeamSplitterConvention convention = BeamSplitterConvention::real_rotation);

/// TMSV after a 50:50 beam splitter, from the closed-form expansion over
/// |2n-2k>|2k>.
TwoModePureState tmsv_through_bs(double nbar_t, const TruncationPolicy& policy = {});

/// |alpha>|alpha>
TwoModePureState two_mode_coherent(Complex alpha, const TruncationPolicy& policy = {});

}  // namespace coherence::states
