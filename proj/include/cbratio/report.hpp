#pragma once

// Deterministic report rendering. All three formats (table, csv, json) are
// produced from the same measured structures and the same 6-decimal
// formatting, so their numeric content is identical by construction. The
// json format additionally carries full-precision values under "raw"
// (non-finite raw values appear as the strings "inf"/"-inf", an undefined
// ratio as null).

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cbratio/cost_benefit.hpp"
#include "cbratio/scenarios.hpp"

namespace cbr::cli {

enum class ReportFormat { Table, Csv, Json };

inline ReportFormat parse_format(const std::string& text) {
    if (text == "table") return ReportFormat::Table;
    if (text == "csv") return ReportFormat::Csv;
    if (text == "json") return ReportFormat::Json;
    throw ValidationError("bad-format",
                          "unknown format '" + text + "' (expected table, csv or json)");
}

/// Fixed 6-decimal rendering; infinities as literal "inf"/"-inf" tokens.
inline std::string format_bits(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    std::string s = buf;
    if (s == "-0.000000") s = "0.000000";
    return s;
}

inline std::string format_ratio(const StageMeasures& m) {
    return m.ratio_defined ? format_bits(m.ratio) : "undef";
}

struct PipelineRun {
    std::string name;
    bool ground_truth_mode = false;
    PipelineReport report;
};

struct ComparisonRun {
    std::string name;
    std::vector<StageMeasures> ranked;
};

struct ScenarioRun {
    std::string id;
    std::string knowledge;
    std::string divergence;
    std::string input_alphabet;
    std::size_t input_letters = 0;
    std::string output_alphabet;
    std::size_t output_letters = 0;
    StageMeasures measures;
};

namespace detail {

using nlohmann::ordered_json;

// raw values for the json format: full doubles, with non-finite values as
// tokens (JSON has no infinity)
inline ordered_json raw_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

struct TextTable {
    std::vector<std::string> header;
    std::vector<bool> right_align;
    std::vector<std::vector<std::string>> rows;

    void print(std::ostream& out) const {
        std::vector<std::size_t> width(header.size());
        for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                width[c] = std::max(width[c], row[c].size());
            }
        }
        auto print_row = [&](const std::vector<std::string>& row) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out << "  ";
                const std::size_t pad = width[c] - row[c].size();
                if (right_align[c]) out << std::string(pad, ' ') << row[c];
                else out << row[c] << std::string(pad, ' ');
            }
            out << '\n';
        };
        print_row(header);
        for (const auto& row : rows) print_row(row);
    }
};

inline std::vector<std::string> measure_cells(const StageMeasures& m, bool with_pd_input) {
    std::vector<std::string> cells = {m.stage_name, format_bits(m.h_in), format_bits(m.h_out),
                                      format_bits(m.ac), format_bits(m.pd.bits)};
    if (with_pd_input) {
        cells.push_back(m.pd_vs_stage_input ? format_bits(m.pd_vs_stage_input->bits) : "-");
    }
    cells.push_back(format_bits(m.benefit));
    cells.push_back(format_bits(m.cost.amount) + " " + to_string(m.cost.unit));
    cells.push_back(format_ratio(m));
    return cells;
}

inline ordered_json measure_json(const StageMeasures& m, bool with_pd_input) {
    ordered_json j;
    j["name"] = m.stage_name;
    j["h_in"] = format_bits(m.h_in);
    j["h_out"] = format_bits(m.h_out);
    j["ac"] = format_bits(m.ac);
    j["pd"] = format_bits(m.pd.bits);
    if (with_pd_input && m.pd_vs_stage_input) {
        j["pd_vs_input"] = format_bits(m.pd_vs_stage_input->bits);
    }
    j["benefit"] = format_bits(m.benefit);
    j["cost_amount"] = format_bits(m.cost.amount);
    j["cost_unit"] = to_string(m.cost.unit);
    j["ratio"] = format_ratio(m);
    ordered_json raw;
    raw["h_in"] = raw_number(m.h_in);
    raw["h_out"] = raw_number(m.h_out);
    raw["ac"] = raw_number(m.ac);
    raw["pd"] = raw_number(m.pd.bits);
    if (with_pd_input && m.pd_vs_stage_input) {
        raw["pd_vs_input"] = raw_number(m.pd_vs_stage_input->bits);
    }
    raw["benefit"] = raw_number(m.benefit);
    raw["cost_amount"] = raw_number(m.cost.amount);
    raw["ratio"] = m.ratio_defined ? raw_number(m.ratio) : ordered_json(nullptr);
    j["raw"] = std::move(raw);
    return j;
}

struct Cumulative {
    double benefit;
    CostSpec cost;
    bool ratio_defined;
    double ratio;
};

inline Cumulative cumulative_of(const PipelineReport& report) {
    Cumulative c{report.cumulative_benefit, report.cumulative_cost, false, 0.0};
    if (report.cumulative_cost.amount > 0.0) {
        c.ratio_defined = true;
        c.ratio = report.cumulative_benefit / report.cumulative_cost.amount;
    }
    return c;
}

} // namespace detail

inline void render_pipelines(const std::vector<PipelineRun>& runs, ReportFormat format,
                             std::ostream& out) {
    const bool with_pd_input = [&runs] {
        for (const auto& run : runs) {
            if (run.ground_truth_mode) return true;
        }
        return false;
    }();

    switch (format) {
        case ReportFormat::Table: {
            if (runs.empty()) {
                out << "(no pipelines)\n";
                return;
            }
            bool first = true;
            for (const auto& run : runs) {
                if (!first) out << '\n';
                first = false;
                out << "pipeline: " << run.name << '\n';
                detail::TextTable table;
                table.header = {"stage", "h_in", "h_out", "ac", "pd"};
                if (with_pd_input) table.header.push_back("pd_input");
                table.header.insert(table.header.end(), {"benefit", "cost", "ratio"});
                table.right_align.assign(table.header.size(), true);
                table.right_align[0] = false;
                for (const auto& m : run.report.stages) {
                    table.rows.push_back(detail::measure_cells(m, with_pd_input));
                }
                const auto total = detail::cumulative_of(run.report);
                std::vector<std::string> total_row = {"total", "-", "-", "-", "-"};
                if (with_pd_input) total_row.push_back("-");
                total_row.push_back(format_bits(total.benefit));
                total_row.push_back(format_bits(total.cost.amount) + " " +
                                    to_string(total.cost.unit));
                total_row.push_back(total.ratio_defined ? format_bits(total.ratio) : "undef");
                table.rows.push_back(std::move(total_row));
                table.print(out);

                out << "entropy trajectory: ";
                for (std::size_t k = 0; k < run.report.entropy_trajectory.size(); ++k) {
                    if (k) out << " -> ";
                    out << format_bits(run.report.entropy_trajectory[k]);
                }
                out << '\n';
            }
            return;
        }
        case ReportFormat::Csv: {
            out << "pipeline,row,name,h_in,h_out,ac,pd,";
            if (with_pd_input) out << "pd_input,";
            out << "benefit,cost_amount,cost_unit,ratio\n";
            for (const auto& run : runs) {
                const std::string pipeline = detail::csv_escape(run.name);
                for (const auto& m : run.report.stages) {
                    out << pipeline << ",stage," << detail::csv_escape(m.stage_name) << ','
                        << format_bits(m.h_in) << ',' << format_bits(m.h_out) << ','
                        << format_bits(m.ac) << ',' << format_bits(m.pd.bits) << ',';
                    if (with_pd_input) {
                        out << (m.pd_vs_stage_input ? format_bits(m.pd_vs_stage_input->bits)
                                                    : std::string())
                            << ',';
                    }
                    out << format_bits(m.benefit) << ',' << format_bits(m.cost.amount) << ','
                        << to_string(m.cost.unit) << ',' << format_ratio(m) << '\n';
                }
                const auto total = detail::cumulative_of(run.report);
                out << pipeline << ",total,,,,,";
                if (with_pd_input) out << ',';
                out << ',' << format_bits(total.benefit) << ',' << format_bits(total.cost.amount)
                    << ',' << to_string(total.cost.unit) << ','
                    << (total.ratio_defined ? format_bits(total.ratio) : "undef") << '\n';
                for (std::size_t k = 0; k < run.report.entropy_trajectory.size(); ++k) {
                    out << pipeline << ",entropy,step" << k << ','
                        << format_bits(run.report.entropy_trajectory[k]) << ",,,";
                    if (with_pd_input) out << ',';
                    out << ",,,,\n";
                }
            }
            return;
        }
        case ReportFormat::Json: {
            detail::ordered_json pipelines = detail::ordered_json::array();
            for (const auto& run : runs) {
                detail::ordered_json p;
                p["name"] = run.name;
                p["stages"] = detail::ordered_json::array();
                for (const auto& m : run.report.stages) {
                    p["stages"].push_back(detail::measure_json(m, with_pd_input));
                }
                const auto total = detail::cumulative_of(run.report);
                detail::ordered_json cumulative;
                cumulative["benefit"] = format_bits(total.benefit);
                cumulative["cost_amount"] = format_bits(total.cost.amount);
                cumulative["cost_unit"] = to_string(total.cost.unit);
                cumulative["ratio"] =
                    total.ratio_defined ? format_bits(total.ratio) : "undef";
                detail::ordered_json raw;
                raw["benefit"] = detail::raw_number(total.benefit);
                raw["cost_amount"] = detail::raw_number(total.cost.amount);
                raw["ratio"] = total.ratio_defined ? detail::raw_number(total.ratio)
                                                   : detail::ordered_json(nullptr);
                cumulative["raw"] = std::move(raw);
                p["cumulative"] = std::move(cumulative);
                detail::ordered_json trajectory = detail::ordered_json::array();
                detail::ordered_json trajectory_raw = detail::ordered_json::array();
                for (double h : run.report.entropy_trajectory) {
                    trajectory.push_back(format_bits(h));
                    trajectory_raw.push_back(detail::raw_number(h));
                }
                p["entropy_trajectory"] = std::move(trajectory);
                p["entropy_trajectory_raw"] = std::move(trajectory_raw);
                pipelines.push_back(std::move(p));
            }
            detail::ordered_json wrapper;
            wrapper["pipelines"] = std::move(pipelines);
            out << wrapper.dump(2) << '\n';
            return;
        }
    }
}

inline void render_comparison(const ComparisonRun& run, ReportFormat format, std::ostream& out) {
    switch (format) {
        case ReportFormat::Table: {
            out << "comparison: " << run.name << '\n';
            detail::TextTable table;
            table.header = {"rank", "stage", "h_in", "h_out", "ac", "pd", "benefit", "cost",
                            "ratio"};
            table.right_align.assign(table.header.size(), true);
            table.right_align[1] = false;
            for (std::size_t r = 0; r < run.ranked.size(); ++r) {
                std::vector<std::string> row = {std::to_string(r + 1)};
                auto cells = detail::measure_cells(run.ranked[r], false);
                row.insert(row.end(), cells.begin(), cells.end());
                table.rows.push_back(std::move(row));
            }
            table.print(out);
            return;
        }
        case ReportFormat::Csv: {
            out << "comparison,rank,name,h_in,h_out,ac,pd,benefit,cost_amount,cost_unit,ratio\n";
            for (std::size_t r = 0; r < run.ranked.size(); ++r) {
                const auto& m = run.ranked[r];
                out << detail::csv_escape(run.name) << ',' << (r + 1) << ','
                    << detail::csv_escape(m.stage_name) << ',' << format_bits(m.h_in) << ','
                    << format_bits(m.h_out) << ',' << format_bits(m.ac) << ','
                    << format_bits(m.pd.bits) << ',' << format_bits(m.benefit) << ','
                    << format_bits(m.cost.amount) << ',' << to_string(m.cost.unit) << ','
                    << format_ratio(m) << '\n';
            }
            return;
        }
        case ReportFormat::Json: {
            detail::ordered_json root;
            root["comparison"] = run.name;
            root["candidates"] = detail::ordered_json::array();
            for (std::size_t r = 0; r < run.ranked.size(); ++r) {
                detail::ordered_json c = detail::measure_json(run.ranked[r], false);
                detail::ordered_json entry;
                entry["rank"] = r + 1;
                for (auto& [key, value] : c.items()) entry[key] = std::move(value);
                root["candidates"].push_back(std::move(entry));
            }
            out << root.dump(2) << '\n';
            return;
        }
    }
}

inline void render_scenario(const ScenarioRun& run, ReportFormat format, std::ostream& out) {
    switch (format) {
        case ReportFormat::Table: {
            out << "scenario: " << run.id << '\n';
            out << "input alphabet: " << run.input_alphabet << " (" << run.input_letters
                << " letters)\n";
            out << "output alphabet: " << run.output_alphabet << " (" << run.output_letters
                << " letters)\n";
            out << "knowledge: " << run.knowledge << '\n';
            out << "divergence: " << run.divergence << "\n\n";
            detail::TextTable table;
            table.header = {"stage", "h_in", "h_out", "ac", "pd", "benefit", "cost", "ratio"};
            table.right_align.assign(table.header.size(), true);
            table.right_align[0] = false;
            table.rows.push_back(detail::measure_cells(run.measures, false));
            table.print(out);
            return;
        }
        case ReportFormat::Csv: {
            const auto& m = run.measures;
            out << "scenario,knowledge,divergence,input_letters,output_letters,name,h_in,h_out,"
                   "ac,pd,benefit,cost_amount,cost_unit,ratio\n";
            out << detail::csv_escape(run.id) << ',' << detail::csv_escape(run.knowledge) << ','
                << detail::csv_escape(run.divergence) << ',' << run.input_letters << ','
                << run.output_letters << ',' << detail::csv_escape(m.stage_name) << ','
                << format_bits(m.h_in) << ',' << format_bits(m.h_out) << ','
                << format_bits(m.ac) << ',' << format_bits(m.pd.bits) << ','
                << format_bits(m.benefit) << ',' << format_bits(m.cost.amount) << ','
                << to_string(m.cost.unit) << ',' << format_ratio(m) << '\n';
            return;
        }
        case ReportFormat::Json: {
            detail::ordered_json root;
            root["scenario"] = run.id;
            root["knowledge"] = run.knowledge;
            root["divergence"] = run.divergence;
            root["input_alphabet"] = run.input_alphabet;
            root["input_letters"] = run.input_letters;
            root["output_alphabet"] = run.output_alphabet;
            root["output_letters"] = run.output_letters;
            root["measures"] = detail::measure_json(run.measures, false);
            out << root.dump(2) << '\n';
            return;
        }
    }
}

inline void render_scenario_list(std::ostream& out) {
    out << "available scenarios:\n";
    std::size_t width = 0;
    for (const auto& info : list_scenarios()) width = std::max(width, info.id.size());
    for (const auto& info : list_scenarios()) {
        out << "  " << info.id << std::string(width - info.id.size() + 2, ' ') << info.summary
            << '\n';
    }
}

} // namespace cbr::cli
