#ifndef SUNIRREP_FOCK_HPP
#define SUNIRREP_FOCK_HPP

// Truncated Fock-space ladder matrices of a single oscillator mode.  These
// carry the exact continuum algebra on any state whose support stays below
// the truncation edge, which makes them the reference for discrete-grid
// matrix elements.

#include <Eigen/Dense>

#include "sunirrep/common.hpp"

namespace sunirrep {

/// x = (a^dag + a)/sqrt(2), tridiagonal, dimension `dim`.
inline Eigen::MatrixXd fock_position(int dim) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(dim, dim);
  for (int m = 1; m < dim; ++m) {
    const double v = std::sqrt(m / 2.0);
    x(m - 1, m) = v;
    x(m, m - 1) = v;
  }
  return x;
}

/// p = i (a^dag - a)/sqrt(2).
inline Mat fock_momentum(int dim) {
  Mat p = Mat::Zero(dim, dim);
  for (int m = 1; m < dim; ++m) {
    const double v = std::sqrt(m / 2.0);
    p(m, m - 1) = cplx(0.0, v);   // a^dag part
    p(m - 1, m) = cplx(0.0, -v);  // a part
  }
  return p;
}

/// Exact continuum matrix element <m'| x^a p^b |m>, computed on a Fock
/// truncation just large enough that no support is lost.
inline cplx fock_matrix_element(int mprime, int a, int b, int m) {
  if (m < 0 || mprime < 0 || a < 0 || b < 0)
    throw std::domain_error("fock_matrix_element: negative argument");
  const int dim = std::max(m, mprime) + a + b + 2;
  const Eigen::MatrixXd x = fock_position(dim);
  const Mat p = fock_momentum(dim);
  Vec v = Vec::Zero(dim);
  v(m) = 1.0;
  for (int t = 0; t < b; ++t) v = p * v;
  for (int t = 0; t < a; ++t) v = x * v;
  return v(mprime);
}

}  // namespace sunirrep

#endif
