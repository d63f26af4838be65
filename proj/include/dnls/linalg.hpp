#pragma once

#include <Eigen/Dense>

#include "dnls/types.hpp"

namespace dnls {

struct EigPairs {
    Cvec values;
    // Right eigenvectors, column j matches values[j].
    Eigen::MatrixXcd vectors;
};

// LAPACK dgeev on a real dense matrix, complex eigenpairs unpacked.
EigPairs eig_real_general(const Eigen::MatrixXd& A);

// LAPACK zgeev.
EigPairs eig_complex_general(const Eigen::MatrixXcd& A);

// LAPACK dsyevd, eigenvalues ascending (matrix must be symmetric).
Eigen::VectorXd eig_symmetric_values(const Eigen::MatrixXd& A);

// LAPACK zgesv with a zgecon condition estimate; throws ResonanceError when
// rcond < 1e-12 (cond > 1e12).
Eigen::VectorXcd solve_complex(const Eigen::MatrixXcd& A,
                               const Eigen::VectorXcd& rhs,
                               double* cond_out = nullptr);

}  // namespace dnls
