// Command-line front end: thermal sweeps of the block model, analysis of
// user-supplied density matrices, block-structure reports, and the
// randomized self-verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 invalid
// input state.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "blockent/blocks.hpp"
#include "blockent/io.hpp"
#include "blockent/measures.hpp"
#include "blockent/thermal.hpp"
#include "blockent/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalidState = 3;

blockent::ModelSpec::SepMode parse_mode(const std::string& text, double& explicit_em) {
    if (text == "midpoint") {
        return blockent::ModelSpec::SepMode::midpoint;
    }
    if (text == "infinite") {
        return blockent::ModelSpec::SepMode::infinite;
    }
    const std::string prefix = "explicit:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string value = text.substr(prefix.size());
        std::size_t used = 0;
        try {
            explicit_em = std::stod(value, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used == value.size() && !value.empty()) {
            return blockent::ModelSpec::SepMode::explicit_value;
        }
    }
    throw CLI::ValidationError("--mode",
                               "expected midpoint, infinite, or explicit:<value>, got \"" +
                                   text + "\"");
}

struct SweepOptions {
    int K = 1;
    double omega = 0;
    std::optional<double> alpha;
    std::string mode = "midpoint";
    std::optional<int> m_min;
    std::optional<int> m_max;
    double t_min = 0;
    double t_max = 5.0;
    int t_points = 400;
    std::string out_path;
    std::uint64_t seed = 0;
};

int run_sweep(const SweepOptions& opt) {
    double explicit_em = 0;
    const blockent::ModelSpec::SepMode mode = parse_mode(opt.mode, explicit_em);
    blockent::ModelSpec spec = blockent::ModelSpec::make(opt.K, opt.omega, mode);
    spec.explicit_em = explicit_em;
    if (opt.alpha) {
        spec.alpha = *opt.alpha;
    }
    if (opt.m_min || opt.m_max) {
        std::vector<int> subset;
        for (int m = opt.m_min.value_or(-opt.K); m <= opt.m_max.value_or(opt.K); ++m) {
            subset.push_back(m);
        }
        spec.m_subset = std::move(subset);
    }

    const std::vector<double> grid =
        blockent::temperature_grid(opt.t_points, opt.t_max, opt.t_min);
    const std::vector<blockent::SweepRecord> records = blockent::sweep(spec, grid);

    if (opt.out_path.empty()) {
        blockent::write_sweep_csv(std::cout, records);
    } else {
        std::ofstream out(opt.out_path);
        if (!out) {
            std::cerr << "error: cannot open --out path " << opt.out_path << "\n";
            return kExitUsage;
        }
        blockent::write_sweep_csv(out, records);
    }
    return kExitOk;
}

struct AnalyzeOptions {
    std::string path;
    double tol = 1e-10;
    std::vector<long> budget;
    long k_max = 0;
    std::uint64_t seed = 0x5eedULL;
};

blockent::MeasurePolicy make_policy(const AnalyzeOptions& opt) {
    blockent::MeasurePolicy policy;
    if (!opt.budget.empty()) {
        policy.budget.samples = opt.budget[0];
    }
    if (opt.budget.size() > 1) {
        policy.budget.refine_iters = opt.budget[1];
    }
    policy.budget.k_max = opt.k_max;
    policy.seed = opt.seed;
    return policy;
}

int run_analyze(const AnalyzeOptions& opt) {
    const blockent::BipartiteState state = blockent::read_matrix_file(opt.path);
    const blockent::BlockDecomposition decomp = blockent::detect_blocks(state, opt.tol);
    const blockent::RankReport ranks = blockent::rank_report(state, decomp);
    const blockent::MeasureResult measure =
        blockent::block_averaged_entanglement(state, opt.tol, make_policy(opt));
    const double neg = blockent::negativity(state);
    std::cout << blockent::analyze_report_json(state, decomp, ranks, measure, neg) << "\n";
    return kExitOk;
}

struct BlocksOptions {
    std::string path;
    double tol = 1e-10;
    std::string assert_blocks;
};

int run_blocks(const BlocksOptions& opt) {
    const blockent::BipartiteState state = blockent::read_matrix_file(opt.path);
    const blockent::BlockDecomposition decomp = blockent::detect_blocks(state, opt.tol);
    const blockent::RankReport ranks = blockent::rank_report(state, decomp);
    std::cout << blockent::blocks_report_json(state, decomp, ranks) << "\n";
    if (!opt.assert_blocks.empty()) {
        const auto claimed = blockent::parse_block_sets(opt.assert_blocks);
        const blockent::BlockStructureCheck check =
            blockent::verify_block_structure(state, claimed, opt.tol);
        if (!check.ok) {
            std::cerr << "claimed block structure violated, max cross entry "
                      << blockent::format_number(check.max_violation) << "\n";
            return kExitVerifyFailure;
        }
        std::cout << "claimed block structure holds, max cross entry "
                  << blockent::format_number(check.max_violation) << "\n";
    }
    return kExitOk;
}

struct VerifyOptions {
    long trials = 1000;
    std::uint64_t seed = 1;
};

int run_verify(const VerifyOptions& opt) {
    const std::vector<blockent::SuiteResult> results =
        blockent::run_verification(opt.trials, opt.seed);
    for (const blockent::SuiteResult& suite : results) {
        std::cout << "suite " << suite.name << ": trials " << suite.trials << ", failures "
                  << suite.failures << ", worst " << blockent::format_number(suite.worst)
                  << "  (" << suite.detail << ")\n";
    }
    if (!blockent::all_passed(results)) {
        std::cout << "FAIL\n";
        return kExitVerifyFailure;
    }
    std::cout << "all suites passed\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convex-roof entanglement of block-diagonal density matrices"};
    app.require_subcommand(1);

    SweepOptions sweep_opt;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Entanglement-versus-temperature sweep of the block model, CSV output");
    sweep->add_option("--K", sweep_opt.K, "Largest |m| sector of the model")->required();
    sweep->add_option("--omega", sweep_opt.omega, "Magnetic-field parameter");
    sweep->add_option("--alpha", sweep_opt.alpha, "Energy scale in eV (default 1/sqrt(K))");
    sweep->add_option("--mode", sweep_opt.mode,
                      "Separable-level mode: midpoint, infinite, or explicit:<value>");
    sweep->add_option("--m-min", sweep_opt.m_min, "Smallest m to include");
    sweep->add_option("--m-max", sweep_opt.m_max, "Largest m to include");
    sweep->add_option("--t-min", sweep_opt.t_min, "Grid lower edge (open), eV");
    sweep->add_option("--t-max", sweep_opt.t_max, "Grid upper edge, eV");
    sweep->add_option("--t-points", sweep_opt.t_points, "Number of grid points");
    sweep->add_option("--out", sweep_opt.out_path, "Write CSV here instead of stdout");
    sweep->add_option("--seed", sweep_opt.seed, "Random seed (reserved; sweep is closed-form)");

    AnalyzeOptions analyze_opt;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "Full entanglement report for a density-matrix JSON file");
    analyze->add_option("path", analyze_opt.path, "Matrix file (JSON)")->required();
    analyze->add_option("--tol", analyze_opt.tol, "Block-detection tolerance");
    analyze->add_option("--budget", analyze_opt.budget,
                        "Sampler budget: samples [refine_iters]")
        ->expected(1, 2);
    analyze->add_option("--k-max", analyze_opt.k_max,
                        "Decomposition size cap (0 = rank squared)");
    analyze->add_option("--seed", analyze_opt.seed, "Sampler seed");

    BlocksOptions blocks_opt;
    CLI::App* blocks =
        app.add_subcommand("blocks", "Block-structure report for a density-matrix JSON file");
    blocks->add_option("path", blocks_opt.path, "Matrix file (JSON)")->required();
    blocks->add_option("--tol", blocks_opt.tol, "Block-detection tolerance");
    blocks->add_option("--assert-blocks", blocks_opt.assert_blocks,
                       "Claimed partition to check, e.g. \"0,1;2,3\"");

    VerifyOptions verify_opt;
    CLI::App* verify =
        app.add_subcommand("verify", "Randomized self-verification of the core identities");
    verify->add_option("--trials", verify_opt.trials, "Trials per suite");
    verify->add_option("--seed", verify_opt.seed, "Base seed for all suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help and friends
        }
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sweep->parsed()) {
            return run_sweep(sweep_opt);
        }
        if (analyze->parsed()) {
            return run_analyze(analyze_opt);
        }
        if (blocks->parsed()) {
            return run_blocks(blocks_opt);
        }
        if (verify->parsed()) {
            return run_verify(verify_opt);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const blockent::InvalidState& e) {
        std::cerr << "invalid input state: " << e.what() << "\n";
        return kExitInvalidState;
    } catch (const blockent::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
