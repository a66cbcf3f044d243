#pragma once

#include <Eigen/Dense>

namespace ptwell {

struct HermitianEigen {
    Eigen::VectorXd values;      // ascending
    Eigen::MatrixXcd vectors;    // columns match values
    int sweeps = 0;
};

// Cyclic Jacobi diagonalization of a Hermitian matrix (the strictly lower
// triangle is ignored). Each rotation first removes the phase of the pivot,
// then applies a real plane rotation. Meant for small dense matrices.
HermitianEigen jacobi_eigen(const Eigen::MatrixXcd& a, double tol = 1e-15, int max_sweeps = 100);

}  // namespace ptwell
