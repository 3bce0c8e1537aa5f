#pragma once

// Quadrature covariance matrices with hbar = 1, x = (a + a^dag)/sqrt2,
// p = (a - a^dag)/(sqrt2 i). The vacuum has gamma = identity and a pure
// Gaussian state has det gamma = 1.

#include "coherence/fock.hpp"

namespace coherence::gaussian {

struct CovarianceMatrix {
  double xx = 1.0;
  double xp = 0.0;
  double pp = 1.0;

  double det() const { return xx * pp - xp * xp; }
};

/// gamma from the moments <a>, <a^2>, <a^dag a> of the state, using the
/// symmetrized x-p covariance.
CovarianceMatrix covariance_matrix(const fock::PureFockState& state);

/// gamma of the zero-phase pure thermal-distribution state from its series
/// representation (polylogarithm for <a>, sqrt((n+1)(n+2)) series for <a^2>).
CovarianceMatrix pstd_covariance_closed_form(double nbar, double tol = 1e-14);

double det_gamma(const CovarianceMatrix& gamma);

}  // namespace coherence::gaussian
