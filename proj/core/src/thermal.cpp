#include "blockent/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blockent/measures.hpp"
#include "blockent/parallel.hpp"

namespace blockent {

ModelSpec ModelSpec::make(int K, double omega, SepMode mode) {
    if (K < 1) {
        throw OutOfRange("K must be a positive integer, got " + std::to_string(K));
    }
    ModelSpec spec;
    spec.K = K;
    spec.alpha = 1.0 / std::sqrt(static_cast<double>(K));
    spec.omega = omega;
    spec.separable_mode = mode;
    return spec;
}

std::vector<int> ModelSpec::m_values() const {
    if (K < 1) {
        throw OutOfRange("K must be a positive integer, got " + std::to_string(K));
    }
    if (m_subset) {
        if (m_subset->empty()) {
            throw OutOfRange("m subset must not be empty");
        }
        std::vector<int> ms = *m_subset;
        std::sort(ms.begin(), ms.end());
        ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
        if (ms.front() < -K || ms.back() > K) {
            throw OutOfRange("m subset leaves the range [-K, K]");
        }
        return ms;
    }
    std::vector<int> ms;
    ms.reserve(static_cast<std::size_t>(2 * K + 1));
    for (int m = -K; m <= K; ++m) {
        ms.push_back(m);
    }
    return ms;
}

ComplexMatrix build_block(const ModelSpec& spec, int m) {
    if (spec.K < 1) {
        throw OutOfRange("K must be a positive integer");
    }
    if (spec.alpha <= 0) {
        throw OutOfRange("alpha must be positive");
    }
    if (m < -spec.K || m > spec.K) {
        throw OutOfRange("m = " + std::to_string(m) + " outside [-K, K] for K = " +
                         std::to_string(spec.K));
    }
    const double a = spec.alpha;
    const double md = static_cast<double>(m);
    const double kd = static_cast<double>(spec.K);
    const double e1 = a * (md + spec.omega / 2.0);
    const double e2 = -a * (md + 1.0 + spec.omega / 2.0);
    const double coupling = a * std::sqrt(kd * (kd + 1.0) - md * (md + 1.0));

    if (spec.separable_mode == ModelSpec::SepMode::infinite) {
        // The separable levels carry no finite energy; only the coupled
        // subspace {|up m1>, |down m2>} survives, and the 2x2 dimension is
        // the marker for the exclusion.
        Eigen::MatrixXcd h(2, 2);
        h << e1, coupling, coupling, e2;
        return ComplexMatrix(std::move(h));
    }

    const double em = spec.separable_mode == ModelSpec::SepMode::midpoint
                          ? (e1 + e2) / 2.0
                          : spec.explicit_em;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(4, 4);
    h(0, 0) = e1;
    h(0, 3) = coupling;
    h(1, 1) = em;
    h(2, 2) = em;
    h(3, 0) = coupling;
    h(3, 3) = e2;
    return ComplexMatrix(std::move(h));
}

GibbsBlocks gibbs_blocks(const ModelSpec& spec, double T) {
    if (!(T > 0)) {
        throw NonPositiveTemperature("temperature must be positive, got " + std::to_string(T));
    }
    const std::vector<int> ms = spec.m_values();
    std::vector<HermitianEigen> eigs;
    eigs.reserve(ms.size());
    double ground = std::numeric_limits<double>::infinity();
    for (const int m : ms) {
        eigs.push_back(eig_hermitian(build_block(spec, m)));
        ground = std::min(ground, eigs.back().values(0));
    }

    // All energies are measured from the global ground state before
    // exponentiation; the raw Boltzmann sums overflow double range at low T
    // for the parameter ranges of interest, the shifted ones never do.
    GibbsBlocks out;
    std::vector<Eigen::VectorXd> weights(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const Eigen::VectorXd& values = eigs[i].values;
        Eigen::VectorXd w(values.size());
        for (Eigen::Index j = 0; j < values.size(); ++j) {
            // std::exp underflows to exactly zero for very negative
            // arguments; Eigen's vectorized exp saturates near 1e-308 and
            // would keep dead sectors alive.
            w(j) = std::exp(-(values(j) - ground) / T);
        }
        weights[i] = std::move(w);
        out.z += weights[i].sum();
    }
    for (std::size_t i = 0; i < ms.size(); ++i) {
        GibbsBlock block;
        block.m = ms[i];
        const double w = weights[i].sum();
        block.p = w / out.z;
        if (block.p > 0) {
            const Eigen::VectorXd spectrum = weights[i] / w;
            block.rho = ComplexMatrix(eigs[i].vectors * spectrum.asDiagonal() *
                                      eigs[i].vectors.adjoint());
        }
        out.blocks.push_back(std::move(block));
    }
    return out;
}

namespace {

// Entanglement of one Gibbs block. Finite modes give a qubit x {m1, m2}
// state directly; in infinite mode the stored 2x2 matrix lives on the
// coupled pair {|up m1>, |down m2>} and embeds at the X-shaped corners of
// the same 2 x 2 layout.
double block_eof(const ComplexMatrix& rho) {
    if (rho.dim() == 4) {
        return wootters_eof(rho);
    }
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(4, 4);
    full(0, 0) = rho.data(0, 0);
    full(0, 3) = rho.data(0, 1);
    full(3, 0) = rho.data(1, 0);
    full(3, 3) = rho.data(1, 1);
    return wootters_eof(ComplexMatrix(std::move(full)));
}

}  // namespace

std::vector<SweepRecord> sweep(const ModelSpec& spec, const std::vector<double>& temperatures) {
    if (temperatures.empty()) {
        throw OutOfRange("temperature list must not be empty");
    }
    for (std::size_t i = 0; i < temperatures.size(); ++i) {
        if (!(temperatures[i] > 0)) {
            throw NonPositiveTemperature("temperatures must be positive");
        }
        if (i > 0 && temperatures[i] <= temperatures[i - 1]) {
            throw OutOfRange("temperatures must be strictly ascending");
        }
    }

    std::vector<SweepRecord> records(temperatures.size());
    parallel_for(static_cast<long>(temperatures.size()), [&](long i) {
        const double t = temperatures[static_cast<std::size_t>(i)];
        const GibbsBlocks gibbs = gibbs_blocks(spec, t);
        SweepRecord record;
        record.T = t;
        record.z = gibbs.z;
        for (const GibbsBlock& block : gibbs.blocks) {
            SweepComponent comp;
            comp.m = block.m;
            comp.p = block.p;
            comp.contribution = block.p > 0 ? block.p * block_eof(block.rho) : 0.0;
            record.e_total += comp.contribution;
            record.components.push_back(comp);
        }
        records[static_cast<std::size_t>(i)] = std::move(record);
    });
    return records;
}

std::optional<double> sudden_death_temperature(const std::vector<SweepRecord>& records,
                                               double eps) {
    if (records.empty()) {
        return std::nullopt;
    }
    if (!(eps > 0)) {
        throw DomainError("eps must be positive");
    }
    std::size_t last_alive = records.size();
    for (std::size_t i = records.size(); i-- > 0;) {
        if (records[i].e_total >= eps) {
            last_alive = i;
            break;
        }
    }
    if (last_alive == records.size()) {
        return records.front().T;  // never above eps anywhere
    }
    if (last_alive + 1 == records.size()) {
        return std::nullopt;  // still entangled at the final point
    }
    return records[last_alive + 1].T;
}

AssembledHamiltonian assemble_full_hamiltonian(const ModelSpec& spec) {
    if (spec.separable_mode == ModelSpec::SepMode::infinite) {
        throw InfiniteModeUnsupported(
            "infinite separable energies have no full-matrix representation");
    }
    const std::vector<int> ms = spec.m_values();
    AssembledHamiltonian out;
    out.dim_e = 2 * static_cast<Eigen::Index>(ms.size());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * out.dim_e, 2 * out.dim_e);
    for (std::size_t b = 0; b < ms.size(); ++b) {
        const ComplexMatrix block = build_block(spec, ms[b]);
        // Block basis index s*2 + j maps to joint s-major index
        // s*dim_e + (2b + j), j = 0 for m1 and 1 for m2.
        for (Eigen::Index row = 0; row < 4; ++row) {
            for (Eigen::Index col = 0; col < 4; ++col) {
                const Eigen::Index s = row / 2;
                const Eigen::Index t = col / 2;
                const Eigen::Index e = 2 * static_cast<Eigen::Index>(b) + row % 2;
                const Eigen::Index f = 2 * static_cast<Eigen::Index>(b) + col % 2;
                h(s * out.dim_e + e, t * out.dim_e + f) = block.data(row, col);
            }
        }
    }
    out.h = ComplexMatrix(std::move(h));
    return out;
}

std::vector<double> temperature_grid(int points, double t_max, double t_min) {
    if (points < 1) {
        throw OutOfRange("grid needs at least one point");
    }
    if (!(t_min >= 0) || !(t_max > t_min)) {
        throw OutOfRange("grid needs 0 <= t_min < t_max");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int i = 1; i <= points; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(points);
        grid.push_back(t_min + (t_max - t_min) * std::pow(frac, 1.5));
    }
    return grid;
}

}  // namespace blockent
