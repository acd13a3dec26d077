#include "blockent/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "json.hpp"

namespace blockent {

namespace {

using nlohmann::json;

// Round a value to the 12 significant digits every emitted number carries, so
// JSON payloads agree digit-for-digit with the CSV/stdout formatting.
double rounded(double v) { return std::stod(format_number(v)); }

json matrix_part(const Eigen::MatrixXcd& m, bool imaginary) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(imaginary ? m(i, j).imag() : m(i, j).real());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

BipartiteState read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open matrix file: " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw Error("matrix file " + path + " is not valid JSON: " + e.what());
    }

    try {
        const auto dim_s = doc.at("dim_s").get<Eigen::Index>();
        const auto dim_e = doc.at("dim_e").get<Eigen::Index>();
        const auto layout = doc.at("layout").get<std::string>();
        if (layout != "s-major") {
            throw Error("matrix file layout must be \"s-major\", got \"" + layout + "\"");
        }
        if (dim_s < 1 || dim_e < 1) {
            throw Error("matrix file dimensions must be positive");
        }
        const Eigen::Index dim = dim_s * dim_e;
        const json& re = doc.at("re");
        const json& im = doc.at("im");
        if (static_cast<Eigen::Index>(re.size()) != dim ||
            static_cast<Eigen::Index>(im.size()) != dim) {
            throw Error("matrix file re/im must have dim_s*dim_e rows");
        }
        Eigen::MatrixXcd m(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            const json& re_row = re.at(static_cast<std::size_t>(i));
            const json& im_row = im.at(static_cast<std::size_t>(i));
            if (static_cast<Eigen::Index>(re_row.size()) != dim ||
                static_cast<Eigen::Index>(im_row.size()) != dim) {
                throw Error("matrix file re/im rows must have dim_s*dim_e entries");
            }
            for (Eigen::Index j = 0; j < dim; ++j) {
                m(i, j) = Complex(re_row.at(static_cast<std::size_t>(j)).get<double>(),
                                  im_row.at(static_cast<std::size_t>(j)).get<double>());
            }
        }
        BipartiteState state(dim_s, dim_e, ComplexMatrix(std::move(m)));
        require_valid(state);
        return state;
    } catch (const json::exception& e) {
        throw Error("matrix file " + path + " has missing or mistyped fields: " + e.what());
    }
}

void write_matrix_file(const std::string& path, const BipartiteState& state) {
    json doc;
    doc["dim_s"] = state.dim_s;
    doc["dim_e"] = state.dim_e;
    doc["layout"] = "s-major";
    doc["re"] = matrix_part(state.rho.data, false);
    doc["im"] = matrix_part(state.rho.data, true);
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write matrix file: " + path);
    }
    out << doc.dump(2) << "\n";
}

std::string format_number(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return buffer;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    if (records.empty()) {
        return;
    }
    out << "T,E_total,Z";
    for (const SweepComponent& comp : records.front().components) {
        out << ",comp_m=" << comp.m;
    }
    out << "\n";
    for (const SweepRecord& record : records) {
        out << format_number(record.T) << "," << format_number(record.e_total) << ","
            << format_number(record.z);
        for (const SweepComponent& comp : record.components) {
            out << "," << format_number(comp.contribution);
        }
        out << "\n";
    }
    const std::optional<double> death = sudden_death_temperature(records);
    if (death) {
        out << "# sudden_death_T = " << format_number(*death) << "\n";
    } else {
        out << "# sudden_death_T = none (entanglement persists through the last grid point)\n";
    }
}

namespace {

json block_entries(const BlockDecomposition& decomp, const RankReport& ranks) {
    json blocks = json::array();
    for (std::size_t i = 0; i < decomp.blocks.size(); ++i) {
        json entry;
        entry["e_indices"] = decomp.blocks[i].e_indices;
        entry["p"] = rounded(decomp.blocks[i].p);
        entry["rank"] = ranks.per_block[i].rank;
        entry["bound_excluded"] = ranks.per_block[i].bound_excluded;
        blocks.push_back(std::move(entry));
    }
    return blocks;
}

json dropped_entries(const BlockDecomposition& decomp) {
    json dropped = json::array();
    for (const auto& [e_indices, p] : decomp.dropped) {
        json entry;
        entry["e_indices"] = e_indices;
        entry["p"] = rounded(p);
        dropped.push_back(std::move(entry));
    }
    return dropped;
}

json validation_entry(const BipartiteState& state) {
    const ValidationReport report = validate(state);
    json out;
    out["hermiticity_deviation"] = rounded(report.hermiticity_deviation);
    out["trace_deviation"] = rounded(report.trace_deviation);
    out["min_eigenvalue"] = rounded(report.min_eigenvalue);
    out["ok"] = report.ok();
    return out;
}

json global_rank_entry(const RankReport& ranks) {
    json global;
    global["rank"] = ranks.global_rank;
    global["bound"] = ranks.global_bound;
    global["bound_excluded"] = ranks.global_excluded;
    return global;
}

}  // namespace

std::string analyze_report_json(const BipartiteState& state, const BlockDecomposition& decomp,
                                const RankReport& ranks, const MeasureResult& measure,
                                double negativity_total) {
    json doc;
    doc["dim_s"] = state.dim_s;
    doc["dim_e"] = state.dim_e;
    doc["validation"] = validation_entry(state);
    json blocks = block_entries(decomp, ranks);
    for (std::size_t i = 0; i < measure.per_block.size(); ++i) {
        blocks[i]["entanglement"] = rounded(measure.per_block[i].value);
        blocks[i]["method"] = method_name(measure.per_block[i].method);
    }
    doc["blocks"] = std::move(blocks);
    doc["dropped"] = dropped_entries(decomp);
    doc["global"] = global_rank_entry(ranks);
    doc["total"] = {{"value", rounded(measure.value)}, {"method", method_name(measure.method)}};
    doc["negativity"] = rounded(negativity_total);
    return doc.dump(2);
}

std::string blocks_report_json(const BipartiteState& state, const BlockDecomposition& decomp,
                               const RankReport& ranks) {
    json doc;
    doc["dim_s"] = state.dim_s;
    doc["dim_e"] = state.dim_e;
    doc["blocks"] = block_entries(decomp, ranks);
    doc["dropped"] = dropped_entries(decomp);
    doc["global"] = global_rank_entry(ranks);
    return doc.dump(2);
}

std::vector<std::vector<Eigen::Index>> parse_block_sets(const std::string& text) {
    std::vector<std::vector<Eigen::Index>> sets;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t stop = std::min(text.find(';', start), text.size());
        const std::string group = text.substr(start, stop - start);
        std::vector<Eigen::Index> indices;
        std::size_t pos = 0;
        while (pos <= group.size()) {
            const std::size_t comma = std::min(group.find(',', pos), group.size());
            const std::string token = group.substr(pos, comma - pos);
            if (token.empty()) {
                throw Error("empty index in block set specification \"" + text + "\"");
            }
            std::size_t used = 0;
            long value = 0;
            try {
                value = std::stol(token, &used);
            } catch (const std::exception&) {
                throw Error("bad index \"" + token + "\" in block set specification");
            }
            if (used != token.size() || value < 0) {
                throw Error("bad index \"" + token + "\" in block set specification");
            }
            indices.push_back(static_cast<Eigen::Index>(value));
            pos = comma + 1;
        }
        sets.push_back(std::move(indices));
        start = stop + 1;
    }
    return sets;
}

}  // namespace blockent
