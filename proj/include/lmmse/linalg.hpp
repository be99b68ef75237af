#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <string_view>

namespace lmmse {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative Frobenius asymmetry ||C - C^T||_F / ||C||_F (0 for the zero matrix).
double relative_asymmetry(const Matrix& c);

inline Matrix symmetrized(const Matrix& c) { return 0.5 * (c + c.transpose()); }

/// Relative Frobenius distance ||a - b||_F / max(||a||_F, ||b||_F).
double relative_difference(const Matrix& a, const Matrix& b);

/// Cholesky of an SPD matrix. On failure retries once with jitter
/// 1e-12 * trace / dim on the diagonal, then throws NumericalSingularity.
Eigen::LLT<Matrix> spd_cholesky(const Matrix& c, std::string_view what);

/// Solves C X = B for SPD C through spd_cholesky.
Matrix spd_solve(const Matrix& c, const Matrix& b, std::string_view what);

/// Inverse of an SPD matrix, symmetrized.
Matrix spd_inverse(const Matrix& c, std::string_view what);

/// Ascending eigenvalues of a symmetric matrix.
Vector symmetric_eigenvalues(const Matrix& c);

/// Symmetric C^{-1/2} from the eigendecomposition of SPD C.
Matrix symmetric_inverse_sqrt(const Matrix& c, std::string_view what);

/// ||C||_2 for symmetric PSD C.
double spectral_norm_psd(const Matrix& c);

}  // namespace lmmse
