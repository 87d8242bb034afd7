#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace grpd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Raised when a numerical kernel cannot deliver its contract (singular
// input, indefinite Gram matrix, non-finite data, iteration budget spent).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool all_finite(const Matrix& m);

// Largest singular value (spectral norm). Errors on non-finite entries;
// an empty matrix has norm 0.
double operator_norm(const Matrix& m);

// ||m - I|| where I has the same shape as m (m must be square).
double deviation_from_identity(const Matrix& m);

// Inverse by partial-pivot LU. Throws NumericalError when the result is
// not finite (singular or degenerate input).
Matrix checked_inverse(const Matrix& m);

// Hermitian square root / inverse square root via eigendecomposition.
// Eigenvalues at or below min_eigenvalue are an error, never clamped.
Matrix hermitian_sqrt(const Matrix& h, double min_eigenvalue = 1e-12);
Matrix hermitian_inv_sqrt(const Matrix& h, double min_eigenvalue = 1e-12);

}  // namespace grpd
