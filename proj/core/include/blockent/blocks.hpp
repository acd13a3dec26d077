#pragma once

#include <utility>
#include <vector>

#include "blockent/states.hpp"

namespace blockent {

inline constexpr double kBlockTol = 1e-10;

// One detected block: the E basis indices it occupies, its probability
// weight, and the normalized (unit-trace) restriction of rho to it. rho_block
// is (dim_s * e_indices.size()) squared, s-major over the kept E indices in
// ascending order.
struct Block {
    std::vector<Eigen::Index> e_indices;
    double p = 0;
    ComplexMatrix rho_block;
};

struct BlockDecomposition {
    Eigen::Index dim_s = 0;
    Eigen::Index dim_e = 0;
    std::vector<Block> blocks;
    // Components whose probability did not exceed the detection tolerance;
    // they carry no normalizable state and are excluded from averaging.
    std::vector<std::pair<std::vector<Eigen::Index>, double>> dropped;
};

// Partition the E indices into connected components of the coupling graph:
// e and e' are joined whenever some |rho[(s,e),(s',e')]| exceeds tol. Blocks
// are ordered by their smallest E index; within a block indices are sorted.
BlockDecomposition detect_blocks(const BipartiteState& state, double tol = kBlockTol);

struct BlockStructureCheck {
    bool ok = false;
    double max_violation = 0;  // largest |entry| crossing two claimed blocks
};

// True iff no entry of rho couples two different claimed blocks beyond tol.
// The claimed sets must partition [0, dim_e); otherwise PartitionInvalid.
BlockStructureCheck verify_block_structure(const BipartiteState& state,
                                           const std::vector<std::vector<Eigen::Index>>& claimed,
                                           double tol = kBlockTol);
BlockStructureCheck verify_block_structure(const BipartiteState& state,
                                           const BlockDecomposition& claimed,
                                           double tol = kBlockTol);

// Same coupling-graph partition applied to a Hamiltonian instead of a state.
// Any Gibbs state of h is guaranteed to be at least this block diagonal.
std::vector<std::vector<Eigen::Index>> detect_hamiltonian_blocks(const ComplexMatrix& h,
                                                                 Eigen::Index dim_s,
                                                                 Eigen::Index dim_e,
                                                                 double tol = kBlockTol);

// Rank criterion report: distillable-only entanglement is certified per block
// when rank(rho_n) <= max(M, N_i), and globally when rank(rho) <= max(M, N).
struct RankReport {
    struct PerBlock {
        Eigen::Index n_i = 0;
        Eigen::Index rank = 0;
        bool bound_excluded = false;
    };
    std::vector<PerBlock> per_block;
    Eigen::Index global_rank = 0;
    Eigen::Index global_bound = 0;
    bool global_excluded = false;
};

RankReport rank_report(const BipartiteState& state, const BlockDecomposition& decomp,
                       double tol = kBlockTol);

}  // namespace blockent
