#pragma once

#include <Eigen/Dense>

#include "blockent/linalg.hpp"

namespace blockent {

// Density matrix of a QS x E system. dim_s is the QS dimension (M), dim_e the
// environment dimension (N); rho is (M*N) x (M*N) in the s-major basis.
struct BipartiteState {
    Eigen::Index dim_s = 0;
    Eigen::Index dim_e = 0;
    ComplexMatrix rho;

    BipartiteState() = default;
    BipartiteState(Eigen::Index dim_s, Eigen::Index dim_e, ComplexMatrix rho);
};

struct ValidationReport {
    double hermiticity_deviation = 0;
    double trace_deviation = 0;
    double min_eigenvalue = 0;

    bool hermitian_ok() const { return hermiticity_deviation <= 1e-9; }
    bool trace_ok() const { return trace_deviation <= 1e-9; }
    bool positive_ok() const { return min_eigenvalue >= -1e-9; }
    bool ok() const { return hermitian_ok() && trace_ok() && positive_ok(); }
};

ValidationReport validate(const BipartiteState& state);

// Throws InvalidState (with the failing check in the message) unless
// validate(state).ok().
void require_valid(const BipartiteState& state);

// Pure QS x E state; amplitudes in the s-major basis, unit norm within 1e-10.
struct PureBipartiteState {
    Eigen::Index dim_s = 0;
    Eigen::Index dim_e = 0;
    Eigen::VectorXcd amplitudes;

    PureBipartiteState() = default;
    PureBipartiteState(Eigen::Index dim_s, Eigen::Index dim_e, Eigen::VectorXcd amplitudes);

    BipartiteState projector() const;
};

// Reduced density matrix of the kept subsystem.
ComplexMatrix reduced_state(const PureBipartiteState& psi, Subsystem keep);

// Normalized linear entropy of the reduced state, 2(1 - Tr rho_E^2).
// Vanishes exactly on product states. For dim_s = 2 the range is [0, 1] with 1
// only for a maximally entangled pair of qubit-like levels; for larger QS the
// supremum is 2(1 - 1/d) with d the maximal Schmidt rank.
double linear_entropy_entanglement(const PureBipartiteState& psi);

// -sum lambda_i log2 lambda_i in bits, with 0 log 0 = 0. Input must be a
// Hermitian PSD unit-trace matrix.
double von_neumann_entropy(const ComplexMatrix& rho);

}  // namespace blockent
