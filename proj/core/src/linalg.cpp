#include "blockent/linalg.hpp"

#include <cmath>

namespace blockent {

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd m) : data(std::move(m)) {
    if (data.rows() != data.cols()) {
        throw DimensionMismatch("ComplexMatrix must be square, got " +
                                std::to_string(data.rows()) + "x" + std::to_string(data.cols()));
    }
    if (!data.allFinite()) {
        throw InvalidState("ComplexMatrix entries must be finite");
    }
}

ComplexMatrix ComplexMatrix::Zero(Eigen::Index dim) {
    return ComplexMatrix(Eigen::MatrixXcd::Zero(dim, dim));
}

ComplexMatrix ComplexMatrix::Identity(Eigen::Index dim) {
    return ComplexMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

double hermiticity_deviation(const Eigen::MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
    const double dev = hermiticity_deviation(m.data);
    if (dev > kHermitianTol) {
        throw NotHermitian(dev);
    }
    // Rounding accumulated upstream (Gibbs products, partial traces) is
    // swallowed here once instead of in every caller.
    const Eigen::MatrixXcd sym = 0.5 * (m.data + m.data.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error("Hermitian eigensolver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expm_hermitian_scaled(const ComplexMatrix& m, double c) {
    const HermitianEigen eig = eig_hermitian(m);
    Eigen::VectorXd scaled = c * eig.values;
    if (scaled.size() > 0 && scaled.maxCoeff() > 700.0) {
        throw Overflow("exp argument " + std::to_string(scaled.maxCoeff()) +
                       " exceeds the double range");
    }
    const Eigen::VectorXd w = scaled.array().exp();
    return ComplexMatrix(eig.vectors * w.asDiagonal() * eig.vectors.adjoint());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index da = a.dim(), db = b.dim();
    Eigen::MatrixXcd out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < da; ++j) {
            out.block(i * db, j * db, db, db) = a.data(i, j) * b.data;
        }
    }
    return ComplexMatrix(std::move(out));
}

namespace {

void check_joint_dims(const ComplexMatrix& rho, Eigen::Index dim_s, Eigen::Index dim_e) {
    if (dim_s <= 0 || dim_e <= 0 || rho.dim() != dim_s * dim_e) {
        throw DimensionMismatch("joint dimension " + std::to_string(rho.dim()) +
                                " does not factor as " + std::to_string(dim_s) + "*" +
                                std::to_string(dim_e));
    }
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& rho, Eigen::Index dim_s, Eigen::Index dim_e,
                            Subsystem keep) {
    check_joint_dims(rho, dim_s, dim_e);
    if (keep == Subsystem::QS) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_s, dim_s);
        for (Eigen::Index s = 0; s < dim_s; ++s) {
            for (Eigen::Index t = 0; t < dim_s; ++t) {
                Complex acc{0, 0};
                for (Eigen::Index e = 0; e < dim_e; ++e) {
                    acc += rho.data(s * dim_e + e, t * dim_e + e);
                }
                out(s, t) = acc;
            }
        }
        return ComplexMatrix(std::move(out));
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_e, dim_e);
    for (Eigen::Index e = 0; e < dim_e; ++e) {
        for (Eigen::Index f = 0; f < dim_e; ++f) {
            Complex acc{0, 0};
            for (Eigen::Index s = 0; s < dim_s; ++s) {
                acc += rho.data(s * dim_e + e, s * dim_e + f);
            }
            out(e, f) = acc;
        }
    }
    return ComplexMatrix(std::move(out));
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, Eigen::Index dim_s, Eigen::Index dim_e,
                                Subsystem which) {
    check_joint_dims(rho, dim_s, dim_e);
    Eigen::MatrixXcd out(rho.dim(), rho.dim());
    for (Eigen::Index s = 0; s < dim_s; ++s) {
        for (Eigen::Index t = 0; t < dim_s; ++t) {
            for (Eigen::Index e = 0; e < dim_e; ++e) {
                for (Eigen::Index f = 0; f < dim_e; ++f) {
                    const Eigen::Index row = s * dim_e + e, col = t * dim_e + f;
                    const Eigen::Index src_row = which == Subsystem::E ? s * dim_e + f : t * dim_e + e;
                    const Eigen::Index src_col = which == Subsystem::E ? t * dim_e + e : s * dim_e + f;
                    out(row, col) = rho.data(src_row, src_col);
                }
            }
        }
    }
    return ComplexMatrix(std::move(out));
}

Eigen::Index numeric_rank(const ComplexMatrix& m, double tol) {
    const HermitianEigen eig = eig_hermitian(m);
    const double top = eig.values.size() > 0 ? eig.values.maxCoeff() : 0.0;
    if (top <= 0.0) {
        return 0;
    }
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        if (eig.values(i) > tol * top) {
            ++rank;
        }
    }
    return rank;
}

}  // namespace blockent
