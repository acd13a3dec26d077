#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "blockent/rng.hpp"
#include "blockent/states.hpp"

namespace blockent {

// Pure-state decomposition rho = sum_n P_n |psi_n><psi_n|. States need not be
// orthogonal; probabilities sum to 1.
struct Decomposition {
    Eigen::Index dim_s = 0;
    Eigen::Index dim_e = 0;
    std::vector<PureBipartiteState> states;
    std::vector<double> probs;

    Eigen::MatrixXcd reconstruct() const;
};

using PureMeasure = std::function<double(const PureBipartiteState&)>;

// All decompositions of rho arise from left-isometries applied to its
// weighted eigenvectors: psi~_n = sum_k U(n,k) sqrt(lambda_k) v_k. U must
// have orthonormal columns (U^dag U = I_r) and exactly r = rank(rho) of them.
Decomposition decompose_from_isometry(const ComplexMatrix& rho, Eigen::Index dim_s,
                                      Eigen::Index dim_e, const Eigen::MatrixXcd& isometry);

// sum_n P_n measure(psi_n).
double average_entanglement(const Decomposition& dec, const PureMeasure& measure);

struct RoofBudget {
    long samples = 512;
    long k_max = 0;  // 0 means r^2 at run time
    long refine_iters = 200;
};

struct RoofResult {
    double value = 0;
    Decomposition best;
};

// Upper-bound estimate of the convex roof of the given pure-state measure:
// sampled Haar isometries (member counts cycling r..k_max) followed by
// pairwise two-member rotations with a golden-section line search on the
// rotation angle. Deterministic for a fixed seed; nonincreasing in budget for
// a fixed seed prefix.
RoofResult minimize_roof(const ComplexMatrix& rho, Eigen::Index dim_s, Eigen::Index dim_e,
                         const PureMeasure& measure, const RoofBudget& budget,
                         std::uint64_t seed);

// A pure state cut along a two-set partition of the E indices:
// psi = alpha psi1 + beta psi2 with psi_i supported on its own set. Each
// branch is stored Schmidt-style over the QS basis, psi_i = sum_s x_i(s)
// |s> (x) |phi_i_s>, with x_i(s) >= 0 real (phases absorbed into phi) and
// phi_i_s normalized where x_i(s) > 0.
struct SuperpositionSplit {
    Eigen::Index dim_s = 0;
    Eigen::Index dim_e = 0;
    Complex alpha{0, 0};
    Complex beta{0, 0};
    PureBipartiteState psi1, psi2;
    Eigen::VectorXd x1, x2;                 // per-branch QS amplitudes, length dim_s
    std::vector<Eigen::VectorXcd> phi1, phi2;  // per-branch E states, length dim_s each
};

// Project psi onto the two E-index sets. Throws EmptyBranch when either
// projection carries less than 1e-12 of the amplitude, in which case the
// state is effectively confined to a single block.
SuperpositionSplit split_superposition(const PureBipartiteState& psi,
                                       const std::vector<Eigen::Index>& set1,
                                       const std::vector<Eigen::Index>& set2);

struct IdentityCheck {
    double lhs = 0;  // direct E(psi) - (|alpha|^2 E(psi1) + |beta|^2 E(psi2))
    double rhs = 0;  // closed form of the same difference
};

// Qubit (dim_s = 2) closed form of the entanglement lost by mixing the two
// branches instead of keeping their superposition:
//   lhs = rhs = 4|alpha|^2|beta|^2 [ (x1^2 - x2^2)^2
//                + |x1 y1 <phi1_0|phi1_1> - x2 y2 <phi2_0|phi2_1>|^2 ],
// which is manifestly nonnegative. Throws DimensionMismatch for dim_s != 2.
IdentityCheck difference_identity_check(const SuperpositionSplit& split);

// Direct evaluation of the same difference for any QS dimension; the return
// value is nonnegative up to numerical noise.
double qudit_difference_check(const SuperpositionSplit& split);

// Replace every member straddling the partition by its two block-confined
// branches, weighted P_n |alpha_n|^2 and P_n |beta_n|^2. Requires the target
// state of dec to be block diagonal across the partition; otherwise the
// reconstruction changes and NotBlockDiagonal is thrown (cross terms of the
// input reconstruction above 1e-8).
Decomposition strip_cross_terms(const Decomposition& dec,
                                const std::array<std::vector<Eigen::Index>, 2>& e_partition);

}  // namespace blockent
