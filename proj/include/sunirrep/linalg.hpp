#ifndef SUNIRREP_LINALG_HPP
#define SUNIRREP_LINALG_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "sunirrep/common.hpp"

namespace sunirrep {

/// exp(i * scale * H) for Hermitian H, through the eigendecomposition.
/// The result is unitary up to rounding regardless of the norm of H.
inline Mat expm_i_hermitian(const Mat& H, double scale = 1.0) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("expm_i_hermitian: eigendecomposition failed");
  const auto& w = es.eigenvalues();
  Vec phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    phases(i) = std::exp(cplx(0.0, scale * w(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Operator 2-norm (largest singular value).
inline double spectral_norm(const Mat& A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(A);
  return svd.singularValues()(0);
}

inline double unitarity_defect(const Mat& U) {
  return spectral_norm(U.adjoint() * U - Mat::Identity(U.rows(), U.cols()));
}

}  // namespace sunirrep

#endif
