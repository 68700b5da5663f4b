#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace liftkin {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Matrix exponential by scaling-and-squaring with a [13/13] Pade approximant.
/// All matrices in this library are small (at most ~6x6 after the Van Loan
/// doubling), so the fixed high-order approximant is used unconditionally.
Matrix expm(const Matrix& A);

/// Largest singular value.
double spectral_norm(const Matrix& A);

/// Eigenvalues of a real square matrix, unordered.
std::vector<std::complex<double>> eigenvalues(const Matrix& A);

/// Solve the continuous Lyapunov equation A X + X A^T + Q = 0 for X.
/// Uses the Kronecker-product linearization; fine for the tiny blocks here.
Matrix lyapunov_solve(const Matrix& A, const Matrix& Q);

/// Integrated noise covariance Q_h = \int_0^h e^{sA} Q e^{sA^T} ds via the
/// block matrix exponential of [[-A, Q],[0, A^T]] (Van Loan construction).
Matrix van_loan_covariance(const Matrix& A, const Matrix& Q, double h);

/// Same integral, choosing the better-conditioned route: Van Loan for short
/// horizons, and the exact identity Q_h = S - e^{hA} S e^{hA^T} (with S the
/// stationary Lyapunov solution) once e^{hA} is strongly contractive, where
/// the Van Loan block exponential would limit the absolute accuracy.
Matrix ou_covariance(const Matrix& A, const Matrix& Q, double h);

/// One-step law of the linear SDE dX = A X dt + Sigma dW over a step h:
/// X_{t+h} | X_t ~ N(E X_t, Qh) with E = e^{hA}.
struct OUTransition {
    Matrix E;           ///< e^{hA}
    Matrix Qh;          ///< integrated noise covariance
    Matrix noise_chol;  ///< lower-triangular factor, Qh = L L^T (zero if noiseless)
    double h = 0.0;
};

/// Build the exact transition for (A, Sigma, h). Throws NonPSD if Qh fails
/// Cholesky beyond a 1e-12 diagonal regularization.
OUTransition make_ou_transition(const Matrix& A, const Matrix& Sigma, double h);

} // namespace liftkin
