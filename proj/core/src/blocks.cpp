#include "blockent/blocks.hpp"

#include <algorithm>
#include <numeric>

namespace blockent {

namespace {

// Union-find with path compression; the entry scan dominates the runtime so
// union by size is all the balancing needed.
class UnionFind {
  public:
    explicit UnionFind(Eigen::Index n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), Eigen::Index{0});
    }

    Eigen::Index find(Eigen::Index x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(Eigen::Index a, Eigen::Index b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return;
        }
        if (size_[a] < size_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        size_[a] += size_[b];
    }

  private:
    std::vector<Eigen::Index> parent_;
    std::vector<Eigen::Index> size_;
};

// Connected components of the E-coupling graph of a joint matrix: e and e'
// are coupled when any |M[(s,e),(s',e')]| exceeds tol. Components come out
// ordered by smallest member, members sorted.
std::vector<std::vector<Eigen::Index>> coupling_components(const Eigen::MatrixXcd& m,
                                                           Eigen::Index dim_s,
                                                           Eigen::Index dim_e, double tol) {
    UnionFind uf(dim_e);
    for (Eigen::Index s = 0; s < dim_s; ++s) {
        for (Eigen::Index t = 0; t < dim_s; ++t) {
            for (Eigen::Index e = 0; e < dim_e; ++e) {
                for (Eigen::Index f = e + 1; f < dim_e; ++f) {
                    if (std::abs(m(s * dim_e + e, t * dim_e + f)) > tol) {
                        uf.unite(e, f);
                    }
                }
            }
        }
    }
    std::vector<std::vector<Eigen::Index>> groups(dim_e);
    for (Eigen::Index e = 0; e < dim_e; ++e) {
        groups[uf.find(e)].push_back(e);
    }
    std::vector<std::vector<Eigen::Index>> components;
    for (auto& g : groups) {
        if (!g.empty()) {
            std::sort(g.begin(), g.end());
            components.push_back(std::move(g));
        }
    }
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

Eigen::MatrixXcd restrict_to_block(const Eigen::MatrixXcd& rho, Eigen::Index dim_s,
                                   Eigen::Index dim_e, const std::vector<Eigen::Index>& e_set) {
    const Eigen::Index n_i = static_cast<Eigen::Index>(e_set.size());
    Eigen::MatrixXcd out(dim_s * n_i, dim_s * n_i);
    for (Eigen::Index s = 0; s < dim_s; ++s) {
        for (Eigen::Index t = 0; t < dim_s; ++t) {
            for (Eigen::Index i = 0; i < n_i; ++i) {
                for (Eigen::Index j = 0; j < n_i; ++j) {
                    out(s * n_i + i, t * n_i + j) = rho(s * dim_e + e_set[i], t * dim_e + e_set[j]);
                }
            }
        }
    }
    return out;
}

}  // namespace

BlockDecomposition detect_blocks(const BipartiteState& state, double tol) {
    require_valid(state);
    if (tol <= 0) {
        throw InvalidState("detection tolerance must be positive");
    }
    BlockDecomposition decomp;
    decomp.dim_s = state.dim_s;
    decomp.dim_e = state.dim_e;
    const auto components =
        coupling_components(state.rho.data, state.dim_s, state.dim_e, tol);
    for (const auto& e_set : components) {
        Eigen::MatrixXcd restricted =
            restrict_to_block(state.rho.data, state.dim_s, state.dim_e, e_set);
        const double p = restricted.trace().real();
        if (p <= tol) {
            decomp.dropped.emplace_back(e_set, p);
            continue;
        }
        Block block;
        block.e_indices = e_set;
        block.p = p;
        block.rho_block = ComplexMatrix(restricted / p);
        decomp.blocks.push_back(std::move(block));
    }
    return decomp;
}

namespace {

void check_partition(const std::vector<std::vector<Eigen::Index>>& sets, Eigen::Index dim_e) {
    std::vector<int> seen(dim_e, 0);
    for (const auto& set : sets) {
        for (const Eigen::Index e : set) {
            if (e < 0 || e >= dim_e) {
                throw PartitionInvalid("E index " + std::to_string(e) + " outside [0, " +
                                       std::to_string(dim_e) + ")");
            }
            if (seen[e]++) {
                throw PartitionInvalid("E index " + std::to_string(e) +
                                       " claimed by two blocks");
            }
        }
    }
    for (Eigen::Index e = 0; e < dim_e; ++e) {
        if (!seen[e]) {
            throw PartitionInvalid("E index " + std::to_string(e) + " not claimed by any block");
        }
    }
}

}  // namespace

BlockStructureCheck verify_block_structure(const BipartiteState& state,
                                           const std::vector<std::vector<Eigen::Index>>& claimed,
                                           double tol) {
    check_partition(claimed, state.dim_e);
    std::vector<Eigen::Index> block_of(state.dim_e);
    for (std::size_t b = 0; b < claimed.size(); ++b) {
        for (const Eigen::Index e : claimed[b]) {
            block_of[e] = static_cast<Eigen::Index>(b);
        }
    }
    double worst = 0;
    for (Eigen::Index s = 0; s < state.dim_s; ++s) {
        for (Eigen::Index t = 0; t < state.dim_s; ++t) {
            for (Eigen::Index e = 0; e < state.dim_e; ++e) {
                for (Eigen::Index f = 0; f < state.dim_e; ++f) {
                    if (block_of[e] != block_of[f]) {
                        worst = std::max(
                            worst,
                            std::abs(state.rho.data(s * state.dim_e + e, t * state.dim_e + f)));
                    }
                }
            }
        }
    }
    return {worst <= tol, worst};
}

BlockStructureCheck verify_block_structure(const BipartiteState& state,
                                           const BlockDecomposition& claimed, double tol) {
    std::vector<std::vector<Eigen::Index>> sets;
    for (const auto& block : claimed.blocks) {
        sets.push_back(block.e_indices);
    }
    for (const auto& [e_set, p] : claimed.dropped) {
        sets.push_back(e_set);
    }
    return verify_block_structure(state, sets, tol);
}

std::vector<std::vector<Eigen::Index>> detect_hamiltonian_blocks(const ComplexMatrix& h,
                                                                 Eigen::Index dim_s,
                                                                 Eigen::Index dim_e, double tol) {
    if (h.dim() != dim_s * dim_e) {
        throw DimensionMismatch("Hamiltonian dimension does not factor as dim_s*dim_e");
    }
    const double dev = hermiticity_deviation(h.data);
    if (dev > kHermitianTol) {
        throw NotHermitian(dev);
    }
    return coupling_components(h.data, dim_s, dim_e, tol);
}

RankReport rank_report(const BipartiteState& state, const BlockDecomposition& decomp,
                       double tol) {
    RankReport report;
    for (const auto& block : decomp.blocks) {
        RankReport::PerBlock entry;
        entry.n_i = static_cast<Eigen::Index>(block.e_indices.size());
        entry.rank = numeric_rank(block.rho_block, tol);
        entry.bound_excluded = entry.rank <= std::max(decomp.dim_s, entry.n_i);
        report.per_block.push_back(entry);
    }
    report.global_rank = numeric_rank(state.rho, tol);
    report.global_bound = std::max(state.dim_s, state.dim_e);
    report.global_excluded = report.global_rank <= report.global_bound;
    return report;
}

}  // namespace blockent
