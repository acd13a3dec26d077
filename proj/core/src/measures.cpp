#include "blockent/measures.hpp"

#include <algorithm>
#include <cmath>

#include "blockent/parallel.hpp"

namespace blockent {

std::string method_name(Method m) {
    switch (m) {
        case Method::wootters_eof:
            return "wootters_eof";
        case Method::negativity:
            return "negativity";
        case Method::sampled_linear_entropy_roof:
            return "sampled_linear_entropy_roof";
        case Method::block_average:
            return "block_average";
    }
    return "unknown";
}

double binary_entropy(double x) {
    if (x < -1e-12 || x > 1.0 + 1e-12) {
        throw DomainError("binary_entropy argument " + std::to_string(x) + " outside [0, 1]");
    }
    x = std::clamp(x, 0.0, 1.0);
    if (x == 0.0 || x == 1.0) {
        return 0.0;
    }
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

namespace {

// Hermitian PSD square root with sub-tolerance negative eigenvalues clamped
// to zero (Gibbs and compression rounding produces them).
Eigen::MatrixXcd psd_sqrt(const ComplexMatrix& rho) {
    const HermitianEigen eig = eig_hermitian(rho);
    Eigen::VectorXd roots(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        roots(i) = eig.values(i) > 0 ? std::sqrt(eig.values(i)) : 0.0;
    }
    return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

Eigen::Matrix4cd spin_flip_kernel() {
    // sigma_y (x) sigma_y is real: antidiagonal (-1, 1, 1, -1).
    Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
    y(0, 3) = -1;
    y(1, 2) = 1;
    y(2, 1) = 1;
    y(3, 0) = -1;
    return y;
}

}  // namespace

double wootters_concurrence(const ComplexMatrix& rho4) {
    if (rho4.dim() != 4) {
        throw DimensionMismatch("concurrence needs a 4x4 two-qubit state, got dim " +
                                std::to_string(rho4.dim()));
    }
    require_valid(BipartiteState(2, 2, rho4));

    // The lambda_i are the square roots of the eigenvalues of rho rho~ with
    // rho~ = Y rho* Y, Y = sigma_y (x) sigma_y. Equivalently they are the
    // singular values of B = sqrt(rho) Y conj(sqrt(rho)), since
    // B B^dag = sqrt(rho) rho~ sqrt(rho) is similar to rho rho~. The SVD
    // route avoids taking square roots of eigenvalues near zero, where
    // solver noise of size eps would blow up to sqrt(eps).
    const Eigen::MatrixXcd sq = psd_sqrt(rho4);
    const Eigen::MatrixXcd b = sq * spin_flip_kernel() * sq.conjugate();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
    const Eigen::VectorXd& lambda = svd.singularValues();  // descending
    const double c = lambda(0) - lambda(1) - lambda(2) - lambda(3);
    return std::max(0.0, c);
}

double wootters_eof(const ComplexMatrix& rho4) {
    const double c = wootters_concurrence(rho4);
    const double root = std::sqrt(std::max(0.0, 1.0 - c * c));
    return binary_entropy((1.0 + root) / 2.0);
}

double negativity(const BipartiteState& state) {
    require_valid(state);
    const ComplexMatrix pt =
        partial_transpose(state.rho, state.dim_s, state.dim_e, Subsystem::E);
    const HermitianEigen eig = eig_hermitian(pt);
    double total = 0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        if (eig.values(i) < 0) {
            total -= eig.values(i);
        }
    }
    return total;
}

namespace {

// Compress the E factor of a 2 x n_i block onto the span of the E-marginal
// eigenvectors given as columns of w (n_i x 2). A local isometry on E leaves
// entanglement unchanged, so the Wootters value of the result is exact.
ComplexMatrix compress_to_two_qubit(const ComplexMatrix& rho, Eigen::Index n_i,
                                    const Eigen::MatrixXcd& w) {
    Eigen::MatrixXcd out(4, 4);
    for (Eigen::Index s = 0; s < 2; ++s) {
        for (Eigen::Index t = 0; t < 2; ++t) {
            out.block(s * 2, t * 2, 2, 2) =
                w.adjoint() * rho.data.block(s * n_i, t * n_i, n_i, n_i) * w;
        }
    }
    const double tr = out.trace().real();
    out /= tr;
    // Exact Hermiticity can drift by an ulp through the congruence; the
    // Wootters path re-checks against the 1e-9 gate.
    out = ((out + out.adjoint()) / 2.0).eval();
    return ComplexMatrix(std::move(out));
}

}  // namespace

BlockMeasure block_entanglement(const ComplexMatrix& rho_block, Eigen::Index dim_s,
                                Eigen::Index n_i, const MeasurePolicy& policy) {
    if (rho_block.dim() != dim_s * n_i) {
        throw DimensionMismatch("block dimension " + std::to_string(rho_block.dim()) +
                                " does not equal dim_s * N_i");
    }
    require_valid(BipartiteState(dim_s, n_i, rho_block));

    if (dim_s == 2 && n_i == 2) {
        return {wootters_eof(rho_block), Method::wootters_eof};
    }
    if (dim_s == 2 && n_i == 1) {
        // One-dimensional environment: necessarily a product state.
        return {0.0, Method::wootters_eof};
    }
    if (dim_s == 2) {
        const ComplexMatrix rho_e = partial_trace(rho_block, dim_s, n_i, Subsystem::E);
        const HermitianEigen eig = eig_hermitian(rho_e);
        Eigen::Index support = 0;
        for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
            if (eig.values(i) > kBlockTol) {
                ++support;
            }
        }
        if (support <= 2) {
            // Top-two eigenvectors of the E marginal; eigenvalues ascend, so
            // they sit in the last two columns.
            const Eigen::MatrixXcd w = eig.vectors.rightCols(2);
            return {wootters_eof(compress_to_two_qubit(rho_block, n_i, w)),
                    Method::wootters_eof};
        }
    }
    const PureMeasure measure = [](const PureBipartiteState& psi) {
        return linear_entropy_entanglement(psi);
    };
    const RoofResult roof =
        minimize_roof(rho_block, dim_s, n_i, measure, policy.budget, policy.seed);
    return {roof.value, Method::sampled_linear_entropy_roof};
}

MeasureResult block_averaged_entanglement(const BipartiteState& state, double tol,
                                          const MeasurePolicy& policy) {
    const BlockDecomposition decomp = detect_blocks(state, tol);
    std::vector<BlockMeasure> per(decomp.blocks.size());
    parallel_for(static_cast<long>(decomp.blocks.size()), [&](long i) {
        const Block& block = decomp.blocks[static_cast<std::size_t>(i)];
        per[static_cast<std::size_t>(i)] = block_entanglement(
            block.rho_block, decomp.dim_s,
            static_cast<Eigen::Index>(block.e_indices.size()), policy);
    });

    MeasureResult result;
    result.method = Method::block_average;
    for (std::size_t i = 0; i < decomp.blocks.size(); ++i) {
        MeasureResult::PerBlock entry;
        entry.block_id = i;
        entry.p = decomp.blocks[i].p;
        entry.value = per[i].value;
        entry.method = per[i].method;
        result.per_block.push_back(entry);
        result.value += entry.p * entry.value;
    }
    return result;
}

}  // namespace blockent
