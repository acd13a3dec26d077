#pragma once

#include <optional>
#include <vector>

#include "blockent/states.hpp"

namespace blockent {

// Parameters of the block Hamiltonian family: a qubit exchanging excitation
// with an angular-momentum-like environment sector m in {-K..K}, with
//   H^m = [[E_m1, 0, 0, M_m], [0, E_m, 0, 0], [0, 0, E_m, 0], [M_m, 0, 0, E_m2]]
// on the block basis {|up m1>, |up m2>, |down m1>, |down m2>},
//   E_m1 = alpha (m + Omega/2), E_m2 = -alpha (m + 1 + Omega/2),
//   M_m = alpha sqrt(K(K+1) - m(m+1)).
// The uncoupled (separable) levels sit at E_m, fixed by separable_mode.
struct ModelSpec {
    enum class SepMode {
        midpoint,   // E_m = (E_m1 + E_m2)/2
        infinite,   // separable levels excluded from the spectrum altogether
        explicit_value,
    };

    int K = 1;
    double alpha = 1.0;  // energy scale, eV
    double omega = 0.0;
    SepMode separable_mode = SepMode::midpoint;
    double explicit_em = 0.0;                  // used only for explicit_value
    std::optional<std::vector<int>> m_subset;  // default: all of {-K..K}

    // alpha defaults to 1/sqrt(K).
    static ModelSpec make(int K, double omega, SepMode mode = SepMode::midpoint);

    std::vector<int> m_values() const;
};

// The 4x4 block matrix for finite separable modes. In infinite mode the
// separable levels have no numeric energy; the coupled 2x2 restriction on
// {|up m1>, |down m2>} is returned instead, and the reduced dimension is the
// flag for the exclusion.
ComplexMatrix build_block(const ModelSpec& spec, int m);

struct GibbsBlock {
    int m = 0;
    double p = 0;
    ComplexMatrix rho;  // 4x4, or 2x2 in infinite mode; empty when p underflows to 0
};

struct GibbsBlocks {
    std::vector<GibbsBlock> blocks;  // ordered by ascending m
    // Partition function referenced to the global ground state, i.e.
    // sum_m Tr exp(-beta (H^m - E0)). The raw sum overflows the double range
    // at low temperature for the parameter sets of interest, so the shifted
    // value is what is reported everywhere.
    double z = 0;
};

// Gibbs weights and per-block states at temperature T (k_B = 1, energies in
// eV). All energies are shifted by the global minimum eigenvalue before
// exponentiation; blocks whose shifted weight underflows to exactly zero get
// p = 0 and no state.
GibbsBlocks gibbs_blocks(const ModelSpec& spec, double T);

struct SweepComponent {
    int m = 0;
    double p = 0;
    double contribution = 0;  // p_m * E(rho_m)
};

struct SweepRecord {
    double T = 0;
    double e_total = 0;  // block-averaged EoF, bits
    std::vector<SweepComponent> components;
    double z = 0;  // ground-referenced, see GibbsBlocks
};

// Entanglement-versus-temperature sweep: per temperature, Gibbs blocks, then
// Wootters EoF of each (qubit x two-level-E) block and the probability-
// weighted average.
std::vector<SweepRecord> sweep(const ModelSpec& spec, const std::vector<double>& temperatures);

// Smallest recorded T from which E_total stays below eps to the end of the
// sweep; nullopt when entanglement is still present at the last point.
std::optional<double> sudden_death_temperature(const std::vector<SweepRecord>& records,
                                               double eps = 1e-9);

struct AssembledHamiltonian {
    ComplexMatrix h;
    Eigen::Index dim_s = 2;
    Eigen::Index dim_e = 0;  // 2 * number of m blocks
};

// Full Hamiltonian as one s-major matrix. E basis: blocks in ascending m,
// the (m1, m2) pair of each block on consecutive indices. Requires a finite
// separable mode.
AssembledHamiltonian assemble_full_hamiltonian(const ModelSpec& spec);

// The default sweep grid: `points` values t_min + (t_max - t_min) (i/n)^1.5,
// i = 1..n. Dense near the low end where the sharp features live.
std::vector<double> temperature_grid(int points = 400, double t_max = 5.0, double t_min = 0.0);

}  // namespace blockent
