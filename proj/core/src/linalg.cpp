#include "liftkin/linalg.hpp"

#include "liftkin/errors.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace liftkin {

Matrix expm(const Matrix& A) {
    // Higham (2005), [13/13] Pade with scaling and squaring.
    static const double pade13_coeffs[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    static const double theta13 = 5.371920351148152;

    const auto n = A.rows();
    const double norm = A.cwiseAbs().colwise().sum().maxCoeff(); // 1-norm
    int squarings = 0;
    if (norm > theta13)
        squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));

    const Matrix As = A / std::ldexp(1.0, squarings);
    const Matrix A2 = As * As;
    const Matrix A4 = A2 * A2;
    const Matrix A6 = A2 * A4;
    const Matrix I = Matrix::Identity(n, n);

    const double* b = pade13_coeffs;
    Matrix U = As * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) +
                     b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
    Matrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) +
               b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;

    Matrix R = (V - U).partialPivLu().solve(V + U);
    for (int i = 0; i < squarings; ++i)
        R = R * R;
    return R;
}

double spectral_norm(const Matrix& A) {
    return Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
}

std::vector<std::complex<double>> eigenvalues(const Matrix& A) {
    Eigen::EigenSolver<Matrix> es(A, /*computeEigenvectors=*/false);
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

Matrix lyapunov_solve(const Matrix& A, const Matrix& Q) {
    const auto n = A.rows();
    // vec(AX + XA^T) = (I (x) A + A (x) I) vec(X)
    Matrix K = Matrix::Zero(n * n, n * n);
    const Matrix I = Matrix::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                for (Eigen::Index l = 0; l < n; ++l)
                    K(i * n + j, k * n + l) = I(i, k) * A(j, l) + A(i, k) * I(j, l);
    Vector q(n * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            q(i * n + j) = -Q(i, j);
    Vector x = K.fullPivLu().solve(q);
    Matrix X(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            X(i, j) = x(i * n + j);
    // symmetrize away roundoff
    return 0.5 * (X + X.transpose());
}

Matrix van_loan_covariance(const Matrix& A, const Matrix& Q, double h) {
    const auto n = A.rows();
    Matrix B = Matrix::Zero(2 * n, 2 * n);
    B.topLeftCorner(n, n) = -A;
    B.topRightCorner(n, n) = Q;
    B.bottomRightCorner(n, n) = A.transpose();
    const Matrix E = expm(h * B);
    // exp(hB) = [[e^{-hA}, G],[0, e^{hA^T}]] with e^{hA} G = Q_h
    const Matrix G = E.topRightCorner(n, n);
    const Matrix F3 = E.bottomRightCorner(n, n); // e^{hA^T}
    Matrix Qh = F3.transpose() * G;
    return 0.5 * (Qh + Qh.transpose());
}

Matrix ou_covariance(const Matrix& A, const Matrix& Q, double h) {
    const Matrix E = expm(h * A);
    if (spectral_norm(E) < 0.5) {
        // strongly contractive: S - E S E^T is exact and keeps full absolute
        // precision where the Van Loan exponential has already saturated
        const Matrix S = lyapunov_solve(A, Q);
        Matrix Qh = S - E * S * E.transpose();
        return 0.5 * (Qh + Qh.transpose());
    }
    return van_loan_covariance(A, Q, h);
}

OUTransition make_ou_transition(const Matrix& A, const Matrix& Sigma, double h) {
    OUTransition tr;
    tr.h = h;
    tr.E = expm(h * A);
    const Matrix Q = Sigma * Sigma.transpose();
    tr.Qh = ou_covariance(A, Q, h);

    const auto n = A.rows();
    if (tr.Qh.cwiseAbs().maxCoeff() == 0.0) {
        tr.noise_chol = Matrix::Zero(n, n); // deterministic flow
        return tr;
    }
    Eigen::LLT<Matrix> llt(tr.Qh);
    if (llt.info() == Eigen::Success) {
        tr.noise_chol = llt.matrixL();
        return tr;
    }
    const double reg = 1e-12 * std::max(1.0, tr.Qh.trace() / static_cast<double>(n));
    Eigen::LLT<Matrix> llt2(tr.Qh + reg * Matrix::Identity(n, n));
    if (llt2.info() != Eigen::Success)
        throw NonPSD("OU step covariance is not positive semidefinite");
    tr.noise_chol = llt2.matrixL();
    return tr;
}

} // namespace liftkin
