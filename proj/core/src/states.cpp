#include "blockent/states.hpp"

#include <cmath>

namespace blockent {

BipartiteState::BipartiteState(Eigen::Index s, Eigen::Index e, ComplexMatrix r)
    : dim_s(s), dim_e(e), rho(std::move(r)) {
    if (dim_s <= 0 || dim_e <= 0 || rho.dim() != dim_s * dim_e) {
        throw DimensionMismatch("state dimension " + std::to_string(rho.dim()) +
                                " does not match " + std::to_string(dim_s) + "x" +
                                std::to_string(dim_e));
    }
}

ValidationReport validate(const BipartiteState& state) {
    ValidationReport report;
    report.hermiticity_deviation = hermiticity_deviation(state.rho.data);
    report.trace_deviation = std::abs(state.rho.data.trace() - Complex{1, 0});
    if (report.hermiticity_deviation <= kHermitianTol) {
        report.min_eigenvalue = eig_hermitian(state.rho).values.minCoeff();
    } else {
        // No Hermitian spectrum to speak of; report the worst outcome so the
        // overall verdict stays negative.
        report.min_eigenvalue = -1.0;
    }
    return report;
}

void require_valid(const BipartiteState& state) {
    const ValidationReport report = validate(state);
    if (!report.hermitian_ok()) {
        throw InvalidState("density matrix not Hermitian, deviation " +
                           std::to_string(report.hermiticity_deviation));
    }
    if (!report.trace_ok()) {
        throw InvalidState("density matrix trace differs from 1 by " +
                           std::to_string(report.trace_deviation));
    }
    if (!report.positive_ok()) {
        throw InvalidState("density matrix has negative eigenvalue " +
                           std::to_string(report.min_eigenvalue));
    }
}

PureBipartiteState::PureBipartiteState(Eigen::Index s, Eigen::Index e, Eigen::VectorXcd amp)
    : dim_s(s), dim_e(e), amplitudes(std::move(amp)) {
    if (dim_s <= 0 || dim_e <= 0 || amplitudes.size() != dim_s * dim_e) {
        throw DimensionMismatch("amplitude vector length " + std::to_string(amplitudes.size()) +
                                " does not match " + std::to_string(dim_s) + "x" +
                                std::to_string(dim_e));
    }
    if (!amplitudes.allFinite()) {
        throw InvalidState("amplitudes must be finite");
    }
    if (std::abs(amplitudes.norm() - 1.0) > 1e-10) {
        throw InvalidState("pure state norm deviates from 1 by " +
                           std::to_string(std::abs(amplitudes.norm() - 1.0)));
    }
}

BipartiteState PureBipartiteState::projector() const {
    return BipartiteState(dim_s, dim_e, ComplexMatrix(amplitudes * amplitudes.adjoint()));
}

ComplexMatrix reduced_state(const PureBipartiteState& psi, Subsystem keep) {
    // amplitudes as a dim_s x dim_e array: A(s, e) = psi[(s, e)].
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
        psi.amplitudes.data(), psi.dim_s, psi.dim_e);
    if (keep == Subsystem::QS) {
        return ComplexMatrix(a * a.adjoint());
    }
    return ComplexMatrix(a.transpose() * a.conjugate());
}

double linear_entropy_entanglement(const PureBipartiteState& psi) {
    // Tr rho_E^2 = Tr rho_S^2 for a pure state, so reduce over the smaller
    // subsystem; the roof sampler calls this in a tight loop.
    const Subsystem side = psi.dim_s <= psi.dim_e ? Subsystem::QS : Subsystem::E;
    const ComplexMatrix red = reduced_state(psi, side);
    const double purity = red.data.cwiseAbs2().sum();
    return 2.0 * (1.0 - purity);
}

double von_neumann_entropy(const ComplexMatrix& rho) {
    const HermitianEigen eig = eig_hermitian(rho);
    double h = 0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        const double lambda = eig.values(i);
        if (lambda > 0) {
            h -= lambda * std::log2(lambda);
        }
    }
    return h;
}

}  // namespace blockent
