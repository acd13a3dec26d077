#include "blockent/verify.hpp"

#include <algorithm>
#include <cmath>

#include "blockent/measures.hpp"
#include "blockent/roof.hpp"

namespace blockent {

namespace {

PureBipartiteState random_pure(Eigen::Index dim_s, Eigen::Index dim_e, Rng& rng) {
    Eigen::VectorXcd v(dim_s * dim_e);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = rng.cnormal();
    }
    v /= v.norm();
    return PureBipartiteState(dim_s, dim_e, std::move(v));
}

// Unit-trace PSD matrix of full rank (generically) from a Gaussian square.
Eigen::MatrixXcd random_density(Eigen::Index dim, Rng& rng) {
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            g(i, j) = rng.cnormal();
        }
    }
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

// Two-block state: block 1 on the first n1 E indices, block 2 on the rest.
BipartiteState random_two_block_state(Eigen::Index dim_s, Eigen::Index n1, Eigen::Index n2,
                                      Rng& rng) {
    const Eigen::Index dim_e = n1 + n2;
    const Eigen::MatrixXcd b1 = random_density(dim_s * n1, rng);
    const Eigen::MatrixXcd b2 = random_density(dim_s * n2, rng);
    const double p = 0.2 + 0.6 * rng.uniform();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim_s * dim_e, dim_s * dim_e);
    const auto embed = [&](const Eigen::MatrixXcd& block, Eigen::Index offset,
                           Eigen::Index n_i, double weight) {
        for (Eigen::Index s = 0; s < dim_s; ++s) {
            for (Eigen::Index t = 0; t < dim_s; ++t) {
                for (Eigen::Index e = 0; e < n_i; ++e) {
                    for (Eigen::Index f = 0; f < n_i; ++f) {
                        rho(s * dim_e + offset + e, t * dim_e + offset + f) +=
                            weight * block(s * n_i + e, t * n_i + f);
                    }
                }
            }
        }
    };
    embed(b1, 0, n1, p);
    embed(b2, n1, n2, 1.0 - p);
    return BipartiteState(dim_s, dim_e, ComplexMatrix(std::move(rho)));
}

std::vector<Eigen::Index> index_range(Eigen::Index from, Eigen::Index to) {
    std::vector<Eigen::Index> out;
    for (Eigen::Index e = from; e < to; ++e) {
        out.push_back(e);
    }
    return out;
}

SuiteResult identity_suite(long trials, std::uint64_t base) {
    SuiteResult result{"difference_identity", 0, 0, 0,
                       "worst |direct - closed form| over random qubit splits"};
    for (long i = 0; i < trials; ++i) {
        Rng rng(mix_seed(base, static_cast<std::uint64_t>(i)));
        const PureBipartiteState psi = random_pure(2, 4, rng);
        SuperpositionSplit split;
        try {
            split = split_superposition(psi, index_range(0, 2), index_range(2, 4));
        } catch (const EmptyBranch&) {
            continue;  // measure-zero event for Gaussian amplitudes
        }
        const IdentityCheck check = difference_identity_check(split);
        double rhs = check.rhs;
#ifdef BLOCKENT_FAULT_IDENTITY_SIGN
        rhs = -rhs;  // test-only fault injection: the suite must catch this
#endif
        ++result.trials;
        const double gap = std::abs(check.lhs - rhs);
        result.worst = std::max(result.worst, gap);
        if (gap >= 1e-10 || check.lhs < -1e-12) {
            ++result.failures;
        }
    }
    return result;
}

SuiteResult qudit_suite(long trials, std::uint64_t base) {
    SuiteResult result{"qudit_inequality", 0, 0, 0,
                       "most negative direct difference over random qudit splits"};
    const Eigen::Index dims[] = {2, 3, 4};
    for (long i = 0; i < trials; ++i) {
        Rng rng(mix_seed(base, static_cast<std::uint64_t>(i)));
        const Eigen::Index dim_s = dims[i % 3];
        const PureBipartiteState psi = random_pure(dim_s, 4, rng);
        SuperpositionSplit split;
        try {
            split = split_superposition(psi, index_range(0, 2), index_range(2, 4));
        } catch (const EmptyBranch&) {
            continue;
        }
        const double lhs = qudit_difference_check(split);
        ++result.trials;
        result.worst = std::min(result.worst, lhs);
        if (lhs < -1e-12) {
            ++result.failures;
        }
    }
    return result;
}

SuiteResult stripping_suite(long trials, std::uint64_t base) {
    SuiteResult result{"decomposition_stripping", 0, 0, 0,
                       "worst increase of the average after stripping"};
    const PureMeasure measure = [](const PureBipartiteState& psi) {
        return linear_entropy_entanglement(psi);
    };
    const std::array<std::vector<Eigen::Index>, 2> partition = {index_range(0, 2),
                                                                index_range(2, 4)};
    for (long i = 0; i < trials; ++i) {
        Rng rng(mix_seed(base, static_cast<std::uint64_t>(i)));
        const BipartiteState state = random_two_block_state(2, 2, 2, rng);
        const Eigen::Index rank = numeric_rank(state.rho, 1e-12);
        const Eigen::Index members =
            rank + static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(rank + 1));
        const Eigen::MatrixXcd u = haar_isometry(members, rank, rng);
        const Decomposition a = decompose_from_isometry(state.rho, 2, 4, u);
        const Decomposition b = strip_cross_terms(a, partition);
        const double avg_a = average_entanglement(a, measure);
        const double avg_b = average_entanglement(b, measure);
        ++result.trials;
        result.worst = std::max(result.worst, avg_b - avg_a);
        if (avg_a < avg_b - 1e-10) {
            ++result.failures;
        }
    }
    return result;
}

SuiteResult negativity_suite(long trials, std::uint64_t base) {
    SuiteResult result{"negativity_additivity", 0, 0, 0,
                       "worst |whole-state value - block-weighted sum|"};
    const Eigen::Index qs_dims[] = {2, 3};
    const Eigen::Index env_dims[] = {2, 3};
    for (long i = 0; i < trials; ++i) {
        Rng rng(mix_seed(base, static_cast<std::uint64_t>(i)));
        const Eigen::Index dim_s = qs_dims[i % 2];
        const Eigen::Index n1 = env_dims[(i / 2) % 2];
        const Eigen::Index n2 = env_dims[(i / 4) % 2];
        const BipartiteState state = random_two_block_state(dim_s, n1, n2, rng);
        const double whole = negativity(state);
        const BlockDecomposition decomp = detect_blocks(state);
        double weighted = 0;
        for (const Block& block : decomp.blocks) {
            weighted +=
                block.p * negativity(BipartiteState(
                              dim_s, static_cast<Eigen::Index>(block.e_indices.size()),
                              block.rho_block));
        }
        ++result.trials;
        const double gap = std::abs(whole - weighted);
        result.worst = std::max(result.worst, gap);
        if (gap >= 1e-9) {
            ++result.failures;
        }
    }
    return result;
}

SuiteResult roof_suite(long trials, std::uint64_t base) {
    SuiteResult result{"roof_convergence", 0, 0, 0,
                       "worst |sampled roof - closed-form tangle roof| on Werner states"};
    const PureMeasure measure = [](const PureBipartiteState& psi) {
        return linear_entropy_entanglement(psi);
    };
    const double ps[] = {0.5, 0.8, 1.0 / 3.0};
    const long runs = std::max<long>(1, trials / 100);
    for (long i = 0; i < runs; ++i) {
        const double p = ps[i % 3];
        Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
        bell(0) = 1.0 / std::sqrt(2.0);
        bell(3) = 1.0 / std::sqrt(2.0);
        Eigen::MatrixXcd rho = p * (bell * bell.adjoint()) +
                               (1.0 - p) / 4.0 * Eigen::MatrixXcd::Identity(4, 4);
        const double c = std::max(0.0, (3.0 * p - 1.0) / 2.0);
        const double target = c * c;  // tangle roof of a two-qubit state
        const RoofResult roof = minimize_roof(ComplexMatrix(std::move(rho)), 2, 2, measure,
                                              RoofBudget{}, mix_seed(base, i));
        ++result.trials;
        const double gap = roof.value - target;
        result.worst = std::max(result.worst, std::abs(gap));
        if (gap > 2e-3 || gap < -1e-9) {
            ++result.failures;
        }
    }
    return result;
}

}  // namespace

std::vector<SuiteResult> run_verification(long trials, std::uint64_t seed) {
    if (trials < 1) {
        throw BudgetZero("verification needs at least one trial");
    }
    std::vector<SuiteResult> results;
    results.push_back(identity_suite(trials, mix_seed(seed, 1)));
    results.push_back(qudit_suite(trials, mix_seed(seed, 2)));
    results.push_back(stripping_suite(trials, mix_seed(seed, 3)));
    results.push_back(negativity_suite(trials, mix_seed(seed, 4)));
    results.push_back(roof_suite(trials, mix_seed(seed, 5)));
    return results;
}

bool all_passed(const std::vector<SuiteResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const SuiteResult& r) { return r.failures == 0; });
}

}  // namespace blockent
