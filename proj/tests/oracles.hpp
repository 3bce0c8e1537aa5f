// Independent reference computations used only by the tests. They favor
// directness over speed and share no code with the library.
#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

inline long double log_factorial(long long n) {
  long double s = 0.0L;
  for (long long k = 2; k <= n; ++k) s += std::log(static_cast<long double>(k));
  return s;
}

// Pascal's triangle up to row n_max, in long double.
inline std::vector<std::vector<long double>> pascal(int n_max) {
  std::vector<std::vector<long double>> rows(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    rows[n].assign(n + 1, 1.0L);
    for (int k = 1; k < n; ++k) rows[n][k] = rows[n - 1][k - 1] + rows[n - 1][k];
  }
  return rows;
}

// sum_{n>=1} sqrt(n) q^n by direct summation of `terms` terms.
inline long double polylog_neg_half(long double q, long long terms) {
  long double s = 0.0L, qn = 1.0L;
  for (long long n = 1; n <= terms; ++n) {
    qn *= q;
    s += std::sqrt(static_cast<long double>(n)) * qn;
  }
  return s;
}

// Physicists' Hermite polynomial by the three-term recurrence, unscaled.
inline Complex hermite(unsigned n, Complex z) {
  Complex h0 = 1.0, h1 = 2.0 * z;
  if (n == 0) return h0;
  for (unsigned k = 1; k < n; ++k) {
    const Complex h2 = 2.0 * z * h1 - 2.0 * static_cast<double>(k) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

inline Eigen::MatrixXcd annihilation(int dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// D(alpha) S(xi) |0> with xi = r e^{i theta}, by matrix exponentials in a
// truncated space of dimension `dim`.
inline Eigen::VectorXcd displaced_squeezed(Complex alpha, double r, double theta, int dim) {
  const Eigen::MatrixXcd a = annihilation(dim);
  const Eigen::MatrixXcd ad = a.adjoint();
  const Complex xi = std::polar(r, theta);
  const Eigen::MatrixXcd gen_s = 0.5 * (std::conj(xi) * a * a - xi * ad * ad);
  const Eigen::MatrixXcd gen_d = alpha * ad - std::conj(alpha) * a;
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(dim);
  vac(0) = 1.0;
  const Eigen::MatrixXcd s = gen_s.exp();
  const Eigen::MatrixXcd d = gen_d.exp();
  return d * (s * vac);
}

// Two-mode state as a matrix c(n1, n2); applies exp[theta (a^dag b - a b^dag)].
inline Eigen::MatrixXcd beam_split(const Eigen::MatrixXcd& c, double theta) {
  const int dim = static_cast<int>(c.rows());
  const Eigen::MatrixXcd a = annihilation(dim);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd ak = Eigen::kroneckerProduct(a, id);
  Eigen::MatrixXcd bk = Eigen::kroneckerProduct(id, a);
  const Eigen::MatrixXcd gen = theta * (ak.adjoint() * bk - ak * bk.adjoint());
  Eigen::VectorXcd v(dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) v(i * dim + j) = c(i, j);
  const Eigen::VectorXcd w = gen.exp() * v;
  Eigen::MatrixXcd out(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out(i, j) = w(i * dim + j);
  return out;
}

inline double shannon(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s -= x * std::log(x);
  return s;
}

// Hermitian eigenvalue entropy via a generic complex eigen solver.
inline double von_neumann(const Eigen::MatrixXcd& rho) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(rho);
  double s = 0.0;
  for (int i = 0; i < rho.rows(); ++i) {
    const double l = es.eigenvalues()(i).real();
    if (l > 1e-300) s -= l * std::log(l);
  }
  return s;
}

}  // namespace oracle
