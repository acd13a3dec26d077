#pragma once

#include <iosfwd>
#include <string>

#include "blockent/measures.hpp"
#include "blockent/thermal.hpp"

namespace blockent {

// Matrix files are JSON objects
//   { "dim_s": M, "dim_e": N, "layout": "s-major",
//     "re": [[..],..], "im": [[..],..] }
// with re and im dense (M*N)^2 row-major arrays. Parse errors throw Error;
// a syntactically valid file whose matrix fails state validation throws
// InvalidState.
BipartiteState read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const BipartiteState& state);

// All numeric output uses 12 significant digits.
std::string format_number(double v);

// CSV contract: header `T,E_total,Z` plus one `comp_m=<m>` column per block
// component (p_m * E(rho_m)), then one row per temperature, then a footer
// comment line reporting the sudden-death temperature or its absence.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);

// JSON reports for the analyze/blocks commands, returned as printable text.
std::string analyze_report_json(const BipartiteState& state, const BlockDecomposition& decomp,
                                const RankReport& ranks, const MeasureResult& measure,
                                double negativity_total);
std::string blocks_report_json(const BipartiteState& state, const BlockDecomposition& decomp,
                               const RankReport& ranks);

// "0,1;2,3" -> {{0,1},{2,3}}; used by the --assert-blocks flag.
std::vector<std::vector<Eigen::Index>> parse_block_sets(const std::string& text);

}  // namespace blockent
