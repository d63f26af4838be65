#include "dnls/linalg.hpp"

#include <lapacke.h>

#include <cmath>

namespace dnls {

EigPairs eig_real_general(const Eigen::MatrixXd& A) {
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXd a = A;  // row-major copy not needed, pass column-major
    Rvec wr(n), wi(n);
    Eigen::MatrixXd vr(n, n);
    const int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n,
                                   wr.data(), wi.data(), nullptr, n, vr.data(), n);
    if (info != 0) throw std::runtime_error("dgeev failed");

    EigPairs out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int j = 0; j < n; ++j) out.values[j] = cplx{wr[j], wi[j]};
    // conjugate pairs packed as consecutive (re, im) columns
    for (int j = 0; j < n;) {
        if (wi[j] != 0 && j + 1 < n) {
            out.vectors.col(j) = vr.col(j).cast<cplx>() +
                                 cplx{0, 1} * vr.col(j + 1).cast<cplx>();
            out.vectors.col(j + 1) = vr.col(j).cast<cplx>() -
                                     cplx{0, 1} * vr.col(j + 1).cast<cplx>();
            j += 2;
        } else {
            out.vectors.col(j) = vr.col(j).cast<cplx>();
            j += 1;
        }
    }
    return out;
}

EigPairs eig_complex_general(const Eigen::MatrixXcd& A) {
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXcd a = A;
    Cvec w(n);
    Eigen::MatrixXcd vr(n, n);
    const int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, 'N', 'V', n,
        reinterpret_cast<lapack_complex_double*>(a.data()), n,
        reinterpret_cast<lapack_complex_double*>(w.data()),
        nullptr, n, reinterpret_cast<lapack_complex_double*>(vr.data()), n);
    if (info != 0) throw std::runtime_error("zgeev failed");
    return EigPairs{std::move(w), std::move(vr)};
}

Eigen::VectorXd eig_symmetric_values(const Eigen::MatrixXd& A) {
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXd a = A;
    Eigen::VectorXd w(n);
    const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'U', n, a.data(), n,
                                    w.data());
    if (info != 0) throw std::runtime_error("dsyevd failed");
    return w;
}

Eigen::VectorXcd solve_complex(const Eigen::MatrixXcd& A,
                               const Eigen::VectorXcd& rhs, double* cond_out) {
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXcd lu = A;
    const double anorm = lu.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
    Eigen::VectorXcd x = rhs;
    std::vector<lapack_int> ipiv(n);
    int info = LAPACKE_zgesv(LAPACK_COL_MAJOR, n, 1,
                             reinterpret_cast<lapack_complex_double*>(lu.data()),
                             n, ipiv.data(),
                             reinterpret_cast<lapack_complex_double*>(x.data()),
                             n);
    if (info != 0) throw ResonanceError("zgesv: singular system");

    double rcond = 0;
    info = LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', n,
                          reinterpret_cast<lapack_complex_double*>(lu.data()),
                          n, anorm, &rcond);
    if (info != 0) throw std::runtime_error("zgecon failed");
    if (cond_out) *cond_out = rcond > 0 ? 1.0 / rcond : INFINITY;
    if (!(rcond > 1e-12))
        throw ResonanceError("linear system condition number exceeds 1e12");
    return x;
}

}  // namespace dnls
