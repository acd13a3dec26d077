// Acceptance gate: every release-blocking behavior of the library, one
// check per line. Each line starts with PASS or FAIL, names the behavior,
// and quotes the measured numbers next to the limits they are held to.
// The process exit code is the number of failed checks.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "blockent/blocks.hpp"
#include "blockent/io.hpp"
#include "blockent/linalg.hpp"
#include "blockent/measures.hpp"
#include "blockent/roof.hpp"
#include "blockent/states.hpp"
#include "blockent/thermal.hpp"
#include "fixtures.hpp"

using namespace blockent;

namespace {

int checks_run = 0;
int checks_failed = 0;

void report(bool pass, const std::string& name, const std::string& detail) {
    ++checks_run;
    if (!pass) {
        ++checks_failed;
    }
    std::printf("%s  %2d  %s  [%s]\n", pass ? "PASS" : "FAIL", checks_run, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const PureMeasure kLinearEntropy = [](const PureBipartiteState& psi) {
    return linear_entropy_entanglement(psi);
};

// Support rank under the same relative cutoff the decomposition sampler
// applies internally.
Eigen::Index support_rank(const ComplexMatrix& rho) { return numeric_rank(rho, 1e-12); }

std::string num(double v) { return format_number(v); }

void check_qubit_split_identity() {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(1001);
    double max_gap = 0;
    double min_direct = 0;
    for (int i = 0; i < 10000; ++i) {
        const PureBipartiteState psi = testfix::random_pure(2, 4, rng);
        const SuperpositionSplit split = split_superposition(
            psi, testfix::index_range(0, 2), testfix::index_range(2, 4));
        const IdentityCheck check = difference_identity_check(split);
        max_gap = std::max(max_gap, std::abs(check.lhs - check.rhs));
        min_direct = std::min(min_direct, check.lhs);
    }
    const double secs = seconds_since(start);
    report(max_gap < 1e-10 && min_direct >= -1e-12 && secs < 10.0,
           "qubit split: direct difference equals the closed form",
           "10000 splits, max |direct-closed| " + num(max_gap) + " < 1e-10, min direct " +
               num(min_direct) + " >= -1e-12, " + num(secs) + " s < 10 s");
}

void check_qudit_split_inequality() {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(2001);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const Eigen::Index dim_s = 2 + i % 3;
        const PureBipartiteState psi = testfix::random_pure(dim_s, 4, rng);
        const SuperpositionSplit split = split_superposition(
            psi, testfix::index_range(0, 2), testfix::index_range(2, 4));
        worst = std::min(worst, qudit_difference_check(split));
    }
    const double secs = seconds_since(start);
    report(worst >= -1e-12 && secs < 30.0,
           "qudit split: mixing the branches never raises entanglement",
           "1000 splits over QS dims 2-4, min difference " + num(worst) +
               " >= -1e-12, " + num(secs) + " s < 30 s");
}

void check_roof_against_block_tangles() {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(3001);
    double lowest = 0;
    double highest = 0;
    bool shapes_ok = true;
    for (int i = 0; i < 100; ++i) {
        const double p = 0.25 + 0.5 * rng.uniform();
        const BipartiteState state = testfix::two_block_state(2, 2, 2, p, rng);
        const BlockDecomposition decomp = detect_blocks(state);
        shapes_ok = shapes_ok && decomp.blocks.size() == 2;
        double target = 0;
        for (const Block& block : decomp.blocks) {
            const double c = wootters_concurrence(block.rho_block);
            target += block.p * c * c;
        }
        RoofBudget budget;
        budget.samples = 512;
        // Two rank-2 blocks decompose with at most four members each, so
        // mixes larger than eight members cannot be needed here.
        budget.k_max = 8;
        budget.refine_iters = 200;
        const RoofResult roof = minimize_roof(state.rho, 2, 4, kLinearEntropy, budget,
                                              mix_seed(3001, static_cast<std::uint64_t>(i)));
        const double gap = roof.value - target;
        lowest = std::min(lowest, gap);
        highest = std::max(highest, gap);
    }
    const double secs = seconds_since(start);
    report(shapes_ok && lowest >= -1e-9 && highest <= 2e-3 && secs < 300.0,
           "two-block roof matches the per-block tangle average",
           "100 states, roof minus target in [" + num(lowest) + ", " + num(highest) +
               "] within [-1e-9, 2e-3], " + num(secs) + " s < 300 s");
}

void check_stripping_monotone() {
    Rng rng(4001);
    const std::array<std::vector<Eigen::Index>, 2> partition = {
        testfix::index_range(0, 2), testfix::index_range(2, 4)};
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const double p = 0.2 + 0.6 * rng.uniform();
        const BipartiteState state = testfix::two_block_state(2, 2, 2, p, rng);
        const Eigen::Index rank = support_rank(state.rho);
        const Eigen::MatrixXcd u = haar_isometry(rank + i % 3, rank, rng);
        const Decomposition dec = decompose_from_isometry(state.rho, 2, 4, u);
        const Decomposition stripped = strip_cross_terms(dec, partition);
        worst = std::min(worst, average_entanglement(dec, kLinearEntropy) -
                                    average_entanglement(stripped, kLinearEntropy));
    }
    report(worst >= -1e-10, "stripping cross terms never raises the average",
           "1000 decompositions, min (original - stripped) " + num(worst) + " >= -1e-10");
}

void check_negativity_block_sum() {
    Rng rng(5001);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const Eigen::Index n1 = 2 + i % 2;
        const Eigen::Index n2 = 2 + (i / 2) % 2;
        const double p = 0.2 + 0.6 * rng.uniform();
        const BipartiteState state = testfix::two_block_state(2, n1, n2, p, rng);
        const double whole = negativity(state);
        double parts = 0;
        for (const Block& block : detect_blocks(state).blocks) {
            const Eigen::Index n_i = static_cast<Eigen::Index>(block.e_indices.size());
            parts += block.p * negativity(BipartiteState(2, n_i, block.rho_block));
        }
        worst = std::max(worst, std::abs(whole - parts));
    }
    report(worst < 1e-9, "negativity sums over blocks",
           "1000 states, max |whole - weighted parts| " + num(worst) + " < 1e-9");
}

void check_reference_two_block_state() {
    const BipartiteState state = testfix::two_block_fixture();
    const BlockDecomposition decomp = detect_blocks(state);
    const bool blocks_ok = decomp.blocks.size() == 2 && decomp.dropped.empty() &&
                           decomp.blocks[0].e_indices == std::vector<Eigen::Index>{0, 1} &&
                           decomp.blocks[1].e_indices == std::vector<Eigen::Index>{2, 3};
    const double eof = block_averaged_entanglement(state).value;
    const double neg = negativity(state);
    const RankReport ranks = rank_report(state, decomp);
    bool ranks_ok = ranks.per_block.size() == 2;
    for (const RankReport::PerBlock& entry : ranks.per_block) {
        ranks_ok = ranks_ok && entry.rank == 2 && entry.bound_excluded;
    }
    report(blocks_ok && std::abs(eof) < 1e-9 && std::abs(neg) < 1e-9 && ranks_ok,
           "reference two-block state: separable with bound entanglement excluded",
           "blocks {0,1},{2,3} " + std::string(blocks_ok ? "found" : "wrong") + ", EoF " +
               num(eof) + " and negativity " + num(neg) +
               " within 1e-9 of 0, per-block rank 2 excluded " +
               (ranks_ok ? "yes" : "no"));
}

std::vector<SweepRecord> g_mid_default_k100;

double peak_of(const std::vector<SweepRecord>& records, std::size_t* index = nullptr) {
    double peak = -1;
    std::size_t at = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].e_total > peak) {
            peak = records[i].e_total;
            at = i;
        }
    }
    if (index != nullptr) {
        *index = at;
    }
    return peak;
}

void check_detuned_regime() {
    bool pass = true;
    std::ostringstream detail;
    for (const int k : {1, 10, 100}) {
        const ModelSpec spec = ModelSpec::make(k, 1.0);
        const std::vector<SweepRecord> probe = sweep(spec, temperature_grid(400, 0.25));
        const double cold = probe.front().e_total;

        const std::vector<SweepRecord> wide = sweep(spec, temperature_grid(400, 15.0));
        std::size_t peak_at = 0;
        const double peak = peak_of(wide, &peak_at);
        const bool interior = peak_at > 0 && peak_at + 1 < wide.size();
        const std::optional<double> death = sudden_death_temperature(wide);

        pass = pass && cold < 1e-6 && peak > 0 && interior && death.has_value();
        detail << "K=" << k << ": cold " << num(cold) << " < 1e-6, peak " << num(peak)
               << " interior, death " << (death ? num(*death) : "none") << "; ";

        if (k == 10) {
            std::set<double> component_deaths;
            const std::size_t last = wide.size() - 1;
            for (std::size_t c = 0; c < wide.front().components.size(); ++c) {
                std::size_t last_alive = wide.size();
                for (std::size_t i = wide.size(); i-- > 0;) {
                    if (wide[i].components[c].contribution >= 1e-9) {
                        last_alive = i;
                        break;
                    }
                }
                if (last_alive < last) {
                    component_deaths.insert(wide[last_alive + 1].T);
                }
            }
            pass = pass && component_deaths.size() >= 2;
            detail << "K=10 distinct component deaths " << component_deaths.size()
                   << " >= 2; ";
        }
        if (k == 100) {
            const auto start = std::chrono::steady_clock::now();
            g_mid_default_k100 = sweep(spec, temperature_grid());
            const double secs = seconds_since(start);
            pass = pass && secs < 60.0;
            detail << "K=100 default sweep " << num(secs) << " s < 60 s";
        }
    }
    report(pass, "detuned sweeps: cold start, interior peak, finite death", detail.str());
}

void check_zero_detuning_regime() {
    bool pass = true;
    std::ostringstream detail;
    for (const int k : {1, 10, 100}) {
        const ModelSpec spec = ModelSpec::make(k, 0.0);
        const std::vector<SweepRecord> wide = sweep(spec, temperature_grid(400, 15.0));
        const double first = wide.front().e_total;
        double worst_rise = 0;
        for (std::size_t i = 1; i < wide.size(); ++i) {
            worst_rise = std::max(worst_rise, wide[i].e_total - wide[i - 1].e_total);
        }
        const std::optional<double> death = sudden_death_temperature(wide);
        double weight_spread = 0;
        for (const SweepRecord& record : wide) {
            double lo = 1.0;
            double hi = 0.0;
            for (const SweepComponent& comp : record.components) {
                lo = std::min(lo, comp.p);
                hi = std::max(hi, comp.p);
            }
            weight_spread = std::max(weight_spread, hi - lo);
        }
        pass = pass && first > 0.1 && worst_rise <= 1e-9 && death.has_value() &&
               weight_spread <= 1e-9;
        detail << "K=" << k << ": first " << num(first) << " > 0.1, worst rise "
               << num(worst_rise) << " <= 1e-9, death "
               << (death ? num(*death) : "none") << ", weight spread "
               << num(weight_spread) << " <= 1e-9; ";
    }
    report(pass, "zero-detuning sweeps: monotone decay from an entangled start",
           detail.str());
}

void check_excluded_levels_regime() {
    bool pass = true;
    std::ostringstream detail;
    for (const int k : {1, 10, 100}) {
        const ModelSpec inf_spec = ModelSpec::make(k, 1.0, ModelSpec::SepMode::infinite);
        const std::vector<SweepRecord> persistent = sweep(inf_spec, temperature_grid());
        bool positive = true;
        for (const SweepRecord& record : persistent) {
            positive = positive && record.e_total > 0.0;
        }
        const double max_inf = peak_of(persistent);

        const double max_mid =
            k == 100 ? peak_of(g_mid_default_k100)
                     : peak_of(sweep(ModelSpec::make(k, 1.0), temperature_grid()));
        pass = pass && positive && max_inf < max_mid;
        detail << "K=" << k << ": all points positive " << (positive ? "yes" : "no")
               << ", max " << num(max_inf) << " < finite-mode max " << num(max_mid)
               << " " << (max_inf < max_mid ? "holds" : "VIOLATED") << "; ";
    }
    report(pass, "excluded-levels sweeps: entanglement persists with a smaller peak",
           detail.str());
}

void check_negative_sector_regime() {
    bool pass = true;
    std::ostringstream detail;
    for (const int k : {1, 10}) {
        ModelSpec spec = ModelSpec::make(k, 1.0);
        std::vector<int> subset;
        for (int m = -k; m <= 0; ++m) {
            subset.push_back(m);
        }
        spec.m_subset = std::move(subset);
        const std::vector<SweepRecord> records = sweep(spec, temperature_grid());
        const double first = records.front().e_total;
        pass = pass && first > 0.0;
        detail << "K=" << k << ": first " << num(first) << " > 0";
        if (k == 1) {
            double interior = 0;
            for (std::size_t i = 1; i + 1 < records.size(); ++i) {
                interior = std::max(interior, records[i].e_total);
            }
            pass = pass && interior > first;
            detail << ", interior max " << num(interior) << " above the first point "
                   << (interior > first ? "yes" : "no");
        }
        detail << "; ";
    }
    report(pass, "negative-sector sweeps: entangled ground state, initial growth",
           detail.str());
}

void check_two_path_consistency() {
    const ModelSpec spec = ModelSpec::make(10, 1.0);
    const std::vector<double> temps = {0.05, 0.5, 2.0};
    const std::vector<SweepRecord> direct = sweep(spec, temps);
    const AssembledHamiltonian assembled = assemble_full_hamiltonian(spec);
    double worst = 0;
    for (std::size_t i = 0; i < temps.size(); ++i) {
        ComplexMatrix gibbs = expm_hermitian_scaled(assembled.h, -1.0 / temps[i]);
        gibbs.data /= gibbs.data.trace().real();
        const BipartiteState state(assembled.dim_s, assembled.dim_e, gibbs);
        const double value = block_averaged_entanglement(state).value;
        worst = std::max(worst, std::abs(value - direct[i].e_total));
    }
    report(worst < 1e-8, "specialized sweep agrees with full-matrix analysis",
           "K=10 at T in {0.05, 0.5, 2}, max |difference| " + num(worst) + " < 1e-8");
}

void check_concurrence_references() {
    Eigen::MatrixXcd bell = Eigen::MatrixXcd::Zero(4, 4);
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    const ComplexMatrix bell_rho(std::move(bell));
    const double bell_c = wootters_concurrence(bell_rho);
    const double bell_e = wootters_eof(bell_rho);

    double worst = 0;
    for (const double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
        const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
        worst = std::max(worst, std::abs(wootters_concurrence(testfix::werner(p)) - expected));
    }
    report(std::abs(bell_c - 1.0) < 1e-12 && std::abs(bell_e - 1.0) < 1e-12 &&
               worst < 1e-10,
           "two-qubit concurrence reference points",
           "Bell C " + num(bell_c) + " and EoF " + num(bell_e) +
               " within 1e-12 of 1, depolarized-family max error " + num(worst) +
               " < 1e-10");
}

}  // namespace

int main() {
    check_qubit_split_identity();
    check_qudit_split_inequality();
    check_roof_against_block_tangles();
    check_stripping_monotone();
    check_negativity_block_sum();
    check_reference_two_block_state();
    check_detuned_regime();
    check_zero_detuning_regime();
    check_excluded_levels_regime();
    check_negative_sector_regime();
    check_two_path_consistency();
    check_concurrence_references();

    std::printf("%d of %d checks passed\n", checks_run - checks_failed, checks_run);
    return checks_failed;
}
