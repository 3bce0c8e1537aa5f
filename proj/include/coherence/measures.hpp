#pragma once

// Coherence quantifiers in the Fock basis: relative entropy of coherence,
// l1 norm of coherence, the closed-form maxima under a mean photon-number
// constraint, and the g2(0) correlation.

#include <string_view>

#include "coherence/fock.hpp"

namespace coherence::measures {

using fock::DensityMatrix;
using fock::NumberDistribution;
using fock::PureFockState;
using fock::TwoModePureState;

enum class LogBase { natural, two };

std::string_view to_string(LogBase base);
LogBase parse_log_base(std::string_view text);
/// Converts a value in nats to the requested base.
double in_base(double nats, LogBase base);

/// -sum g_n P_n log P_n with 0 log 0 = 0.
double shannon_entropy(const NumberDistribution& dist, LogBase base = LogBase::natural);

/// -sum lambda log lambda over eigenvalues; eigenvalues in [-1e-10, 0) are
/// treated as 0, anything more negative is an invalid state.
double von_neumann_entropy(const DensityMatrix& rho, LogBase base = LogBase::natural);

/// S(diag rho) - S(rho). Pure inputs reduce to the Shannon entropy of the
/// number distribution.
double rel_ent_coherence(const PureFockState& state, LogBase base = LogBase::natural);
double rel_ent_coherence(const DensityMatrix& rho, LogBase base = LogBase::natural);
double rel_ent_coherence(const TwoModePureState& state, LogBase base = LogBase::natural);

/// Error bar on an entropy computed from a truncated state:
/// tail (1 + |log tail|), in the requested base.
double entropy_error_bar(double tail_bound, LogBase base = LogBase::natural);

/// Pure path: (sum sqrt P_n)^2 - 1.
double l1_coherence(const PureFockState& state);
/// Dense path: sum_{i != j} |rho_ij|.
double l1_coherence(const DensityMatrix& rho);
/// (sum sqrt P_n)^2 - 1 for a bare distribution (real nonnegative amplitudes).
double l1_coherence(const NumberDistribution& dist);

/// <a^dag a^dag a a> / <n>^2
double g2_zero(const PureFockState& state);

/// (nbar+1) log(nbar+1) - nbar log nbar, 0 at nbar = 0.
double max_rel_ent_coherence(double nbar, LogBase base = LogBase::natural);

/// sum_n nbar_t^n / (nbar_t+1)^(n+1) ln C(n+d-1, d-1), in nats.
double s_d_series(unsigned d, double nbar_t, double tol = 1e-14);

double max_rel_ent_coherence_multimode(unsigned d, double nbar_t, LogBase base = LogBase::natural);

}  // namespace coherence::measures
