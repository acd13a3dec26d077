#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blockent/blocks.hpp"
#include "blockent/roof.hpp"

namespace blockent {

enum class Method {
    wootters_eof,
    negativity,
    sampled_linear_entropy_roof,
    block_average,
};

std::string method_name(Method m);

struct MeasureResult {
    double value = 0;
    Method method = Method::block_average;
    struct PerBlock {
        std::size_t block_id = 0;
        double p = 0;
        double value = 0;
        Method method = Method::wootters_eof;
    };
    std::vector<PerBlock> per_block;
};

// -x log2 x - (1-x) log2 (1-x), endpoints 0. Inputs outside [0,1] by more
// than 1e-12 throw DomainError; within the slack they are clamped.
double binary_entropy(double x);

// Two-qubit concurrence C = max(0, l1 - l2 - l3 - l4). The l_i are computed
// as singular values of sqrt(rho) (sy (x) sy) conj(sqrt(rho)) rather than as
// square roots of eigenvalues of rho rho~: both orderings are the same
// spectrum, but the square root at 0 turns eigensolver noise of order eps
// into sqrt(eps) for near-pure states, which is fatal to the 1e-9 tolerances
// downstream.
double wootters_concurrence(const ComplexMatrix& rho4);

// Exact two-qubit entanglement of formation in bits,
// h((1 + sqrt(1 - C^2))/2).
double wootters_eof(const ComplexMatrix& rho4);

// Absolute sum of the negative eigenvalues of the E-partial transpose.
double negativity(const BipartiteState& state);

// Policy knobs shared by the per-block dispatch and the full-state average.
struct MeasurePolicy {
    RoofBudget budget;
    std::uint64_t seed = 0x5eedULL;
};

struct BlockMeasure {
    double value = 0;
    Method method = Method::wootters_eof;
};

// Per-block entanglement dispatch:
//   dim_s = 2, N_i = 2            -> Wootters EoF, exact;
//   dim_s = 2, E-marginal rank <= 2 -> compress E support to 2 dimensions
//                                      (local isometry, entanglement
//                                      preserved), then Wootters;
//   otherwise                      -> sampled linear-entropy roof, an upper
//                                     bound and labeled as such.
BlockMeasure block_entanglement(const ComplexMatrix& rho_block, Eigen::Index dim_s,
                                Eigen::Index n_i, const MeasurePolicy& policy = {});

// Detect blocks, then average: E(rho) = sum_n p_n E(rho_n). Blocks of zero
// probability are skipped.
MeasureResult block_averaged_entanglement(const BipartiteState& state, double tol = kBlockTol,
                                          const MeasurePolicy& policy = {});

}  // namespace blockent
