#include "grpd/matrix.hpp"

#include <cmath>

namespace grpd {

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

double operator_norm(const Matrix& m) {
  if (!all_finite(m)) throw NumericalError("operator_norm: non-finite entry");
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double deviation_from_identity(const Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("deviation_from_identity: matrix not square");
  return operator_norm(m - Matrix::Identity(m.rows(), m.cols()));
}

Matrix checked_inverse(const Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("checked_inverse: matrix not square");
  if (!all_finite(m)) throw NumericalError("checked_inverse: non-finite entry");
  if (m.rows() == 0) return m;
  Matrix inv = Eigen::PartialPivLU<Matrix>(m).inverse();
  if (!all_finite(inv)) throw NumericalError("checked_inverse: singular matrix");
  return inv;
}

namespace {

Matrix hermitian_power(const Matrix& h, double exponent, double min_eigenvalue) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("hermitian_sqrt: matrix not square");
  if (!all_finite(h)) throw NumericalError("hermitian_sqrt: non-finite entry");
  if (h.rows() == 0) return h;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw NumericalError("hermitian_sqrt: eigendecomposition failed");
  Eigen::VectorXd lam = es.eigenvalues();
  if (lam(0) <= min_eigenvalue)
    throw NumericalError("hermitian_sqrt: eigenvalue below positivity floor");
  Eigen::VectorXd powered(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) powered(i) = std::pow(lam(i), exponent);
  return es.eigenvectors() * powered.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Matrix hermitian_sqrt(const Matrix& h, double min_eigenvalue) {
  return hermitian_power(h, 0.5, min_eigenvalue);
}

Matrix hermitian_inv_sqrt(const Matrix& h, double min_eigenvalue) {
  return hermitian_power(h, -0.5, min_eigenvalue);
}

}  // namespace grpd
