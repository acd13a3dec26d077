#pragma once

#include <Eigen/Dense>
#include <complex>

#include "blockent/errors.hpp"

namespace blockent {

using Complex = std::complex<double>;

// Dense complex square matrix. Thin value wrapper around Eigen that pins the
// two construction invariants every downstream routine relies on: squareness
// and finiteness of all entries.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(Eigen::MatrixXcd m);

    static ComplexMatrix Zero(Eigen::Index dim);
    static ComplexMatrix Identity(Eigen::Index dim);

    Eigen::Index dim() const { return data.rows(); }

    Eigen::MatrixXcd data;
};

// Entrywise max |m - m^dag|; 0 for exactly Hermitian input.
double hermiticity_deviation(const Eigen::MatrixXcd& m);

// Tolerance below which a matrix counts as Hermitian and is symmetrized
// before eigensolving.
inline constexpr double kHermitianTol = 1e-9;

struct HermitianEigen {
    Eigen::VectorXd values;    // ascending
    Eigen::MatrixXcd vectors;  // orthonormal columns, values(i) <-> vectors.col(i)
};

// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
// (m + m^dag)/2 when within kHermitianTol; beyond that throws NotHermitian.
HermitianEigen eig_hermitian(const ComplexMatrix& m);

// V diag(exp(c*lambda_i)) V^dag. Throws Overflow when any c*lambda_i > 700,
// which is just under the double exp() range.
ComplexMatrix expm_hermitian_scaled(const ComplexMatrix& m, double c);

// Kronecker product with the first factor on the slow index (QS left of E in
// every joint basis used here).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { QS, E };

// Joint indices are s-major throughout: index = s*dim_e + e.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Eigen::Index dim_s, Eigen::Index dim_e,
                            Subsystem keep);

ComplexMatrix partial_transpose(const ComplexMatrix& rho, Eigen::Index dim_s, Eigen::Index dim_e,
                                Subsystem which);

// Number of eigenvalues above tol * (largest eigenvalue); input must be
// Hermitian PSD up to tolerance.
Eigen::Index numeric_rank(const ComplexMatrix& m, double tol);

}  // namespace blockent
