#pragma once

// Command-line front end. Subcommands:
//
//   validate <spec>                       parse and validate only
//   analyze  <spec> [--pipeline NAME]     measure pipelines
//   compare  <spec> --comparison NAME     rank candidate stages
//   scenario list                         built-in scenario catalog
//   scenario run <kind> [params]          measure one built-in scenario
//
// Exit codes: 0 success, 1 usage error, 2 parse/validation error,
// 3 analysis error (e.g. a chaining mismatch). Reports go to the output
// stream, diagnostics to the error stream; output for a given input is
// byte-identical across runs.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cbratio/report.hpp"
#include "cbratio/scenarios.hpp"
#include "cbratio/spec_doc.hpp"

namespace cbr::cli {

namespace detail {

inline std::string read_spec_text(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw ParseError("cannot open spec file '" + path + "'");
    }
    std::ostringstream ss;
    ss << file.rdbuf();
    return ss.str();
}

// "A:90-100,B:80-89,..." -> bins
inline std::vector<GradeBin> parse_bins(const std::string& text) {
    std::vector<GradeBin> bins;
    std::istringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const auto colon = item.find(':');
        const auto dash = item.find('-', colon == std::string::npos ? 0 : colon + 1);
        if (colon == std::string::npos || dash == std::string::npos) {
            throw ValidationError("bad-bins",
                                  "cannot read bin '" + item +
                                      "' (expected <grade>:<lo>-<hi>, e.g. A:90-100)");
        }
        GradeBin bin;
        bin.grade = item.substr(0, colon);
        try {
            bin.lo = std::stoi(item.substr(colon + 1, dash - colon - 1));
            bin.hi = std::stoi(item.substr(dash + 1));
        } catch (const std::exception&) {
            throw ValidationError("bad-bins", "cannot read bin range in '" + item + "'");
        }
        bins.push_back(std::move(bin));
    }
    if (bins.empty()) {
        throw ValidationError("bad-bins", "empty bin list");
    }
    return bins;
}

struct ScenarioFlags {
    std::string knowledge = "uniform-preimage";
    std::string divergence = "kl";
    std::string format = "table";
    double cost = 1.0;
    std::string bins;
    std::size_t values = 10001;
    std::size_t pixels = 1000;
    std::size_t nodes = 3;
    std::size_t kmax = 3;
    std::size_t cells_in = 100;
    std::size_t cells_out = 10;
};

inline ScenarioSpec scenario_spec_for(const std::string& kind, const ScenarioFlags& flags) {
    if (kind == "city-filter") return CityFilter{};
    if (kind == "grade-quantizer") {
        GradeQuantizer spec;
        if (!flags.bins.empty()) spec.bins = parse_bins(flags.bins);
        return spec;
    }
    if (kind == "bar-height-quantizer") return BarHeightQuantizer{flags.values, flags.pixels};
    if (kind == "edge-bundling") return EdgeBundling{flags.nodes, flags.kmax};
    if (kind == "grid-map") return GridMap{flags.cells_in, flags.cells_out};
    std::string known;
    for (const auto& info : list_scenarios()) {
        if (!known.empty()) known += ", ";
        known += info.id;
    }
    throw ValidationError("bad-parameter",
                          "unknown scenario '" + kind + "' (known: " + known + ")");
}

inline int run_scenario(const std::string& kind, const ScenarioFlags& flags, std::ostream& out,
                        std::ostream& err) {
    ScenarioSpec spec{CityFilter{}};
    DivergenceKind divergence = DivergenceKind::kl();
    ReportFormat format = ReportFormat::Table;
    try {
        spec = scenario_spec_for(kind, flags);
        divergence = DivergenceKind::parse(flags.divergence);
        format = parse_format(flags.format);
        if (flags.knowledge != "uniform-preimage" && flags.knowledge != "posterior") {
            throw ValidationError("bad-parameter", "unknown knowledge '" + flags.knowledge +
                                                       "' (expected uniform-preimage or "
                                                       "posterior)");
        }
        if (!(flags.cost >= 0.0)) {
            throw ValidationError("negative-cost", "--cost must be non-negative");
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        ScenarioBuild build = build_scenario(spec);
        KnowledgeModelRef knowledge =
            (flags.knowledge == "posterior")
                ? KnowledgeModel::posterior(build.transformation, build.uniform_input)
                : KnowledgeModel::uniform_preimage(build.transformation);
        Stage stage{build.transformation, knowledge,
                    CostSpec{flags.cost, CostUnit::Abstract, false}, divergence, kind};

        ScenarioRun run;
        run.id = kind;
        run.knowledge = flags.knowledge;
        run.divergence = divergence.to_string();
        run.input_alphabet = build.input->name();
        run.input_letters = build.input->size();
        run.output_alphabet = build.transformation->output()->name();
        run.output_letters = build.transformation->output()->size();
        run.measures = measure_stage(build.uniform_input, stage);

        std::ostringstream buffer;
        render_scenario(run, format, buffer);
        out << buffer.str();
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace detail

/// Run the command line. Returns the process exit code; reports are written
/// to `out`, diagnostics to `err`, and `in` backs the "-" spec path.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               std::istream& in = std::cin) {
    CLI::App app{"information-theoretic cost-benefit analysis of data-transformation pipelines"};
    app.name("cbratio");

    std::string spec_path;
    std::string pipeline_name;
    std::string comparison_name;
    std::string format_name = "table";
    std::string scenario_kind;
    detail::ScenarioFlags flags;

    CLI::App* validate = app.add_subcommand("validate", "parse and validate a spec document");
    validate->add_option("spec", spec_path, "spec file path, or - for the input stream")
        ->required();

    CLI::App* analyze = app.add_subcommand("analyze", "measure pipelines from a spec document");
    analyze->add_option("spec", spec_path, "spec file path, or - for the input stream")
        ->required();
    analyze->add_option("--pipeline", pipeline_name,
                        "measure one pipeline (default: all, in declaration order)");
    analyze->add_option("--format", format_name, "table, csv or json");

    CLI::App* compare =
        app.add_subcommand("compare", "rank candidate stages from a spec document");
    compare->add_option("spec", spec_path, "spec file path, or - for the input stream")
        ->required();
    compare->add_option("--comparison", comparison_name, "name of the comparison to run")
        ->required();
    compare->add_option("--format", format_name, "table, csv or json");

    CLI::App* scenario = app.add_subcommand("scenario", "built-in worked scenarios");
    scenario->require_subcommand(1);
    CLI::App* scenario_list = scenario->add_subcommand("list", "list the scenario catalog");
    CLI::App* scenario_run = scenario->add_subcommand("run", "measure one built-in scenario");
    scenario_run->add_option("kind", scenario_kind, "scenario id (see: scenario list)")
        ->required();
    scenario_run->add_option("--knowledge", flags.knowledge,
                             "uniform-preimage or posterior (default uniform-preimage)");
    scenario_run->add_option("--divergence", flags.divergence,
                             "kl, js or clamped-kl:<cap> (default kl)");
    scenario_run->add_option("--format", flags.format, "table, csv or json");
    scenario_run->add_option("--cost", flags.cost, "stage cost amount (default 1)");
    scenario_run->add_option("--bins", flags.bins,
                             "grade-quantizer bins, e.g. A:90-100,B:80-89,...");
    scenario_run->add_option("--values", flags.values, "bar-height-quantizer input values");
    scenario_run->add_option("--pixels", flags.pixels, "bar-height-quantizer pixel heights");
    scenario_run->add_option("--nodes", flags.nodes, "edge-bundling node count");
    scenario_run->add_option("--kmax", flags.kmax, "edge-bundling maximum multiplicity");
    scenario_run->add_option("--cells-in", flags.cells_in, "grid-map input positions");
    scenario_run->add_option("--cells-out", flags.cells_out, "grid-map output cells");

    app.require_subcommand(1);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    if (*scenario_list) {
        render_scenario_list(out);
        return 0;
    }
    if (*scenario_run) {
        return detail::run_scenario(scenario_kind, flags, out, err);
    }

    // document-based commands: load + parse (exit 2 on failure)
    SpecDocument doc;
    try {
        doc = parse_spec(detail::read_spec_text(spec_path, in));
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    if (*validate) {
        out << "valid: version " << doc.version << ", " << doc.alphabets.size()
            << " alphabets, " << doc.pmfs.size() << " pmfs, " << doc.transformations.size()
            << " transformations, " << doc.knowledge.size() << " knowledge models, "
            << doc.stages.size() << " stages, " << doc.pipelines.size() << " pipelines, "
            << doc.comparisons.size() << " comparisons\n";
        return 0;
    }

    ReportFormat format = ReportFormat::Table;
    try {
        format = parse_format(format_name);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    if (*analyze) {
        std::vector<std::pair<std::string, PipelineEntry>> selected;
        if (pipeline_name.empty()) {
            selected = doc.pipelines;
        } else {
            try {
                selected.emplace_back(pipeline_name, doc.find_pipeline(pipeline_name));
            } catch (const Error& e) {
                err << "error: " << e.what() << '\n';
                return 2;
            }
        }
        try {
            std::vector<PipelineRun> runs;
            runs.reserve(selected.size());
            for (const auto& [name, entry] : selected) {
                const Pmf& input = doc.find_pmf(entry.input_pmf);
                std::vector<Stage> stages;
                stages.reserve(entry.stage_names.size());
                for (const std::string& s : entry.stage_names) {
                    stages.push_back(doc.find_stage(s).stage);
                }
                PipelineRun run;
                run.name = name;
                if (entry.ground_truth_pmf.empty()) {
                    run.report = measure_pipeline(input, stages);
                } else {
                    run.ground_truth_mode = true;
                    run.report =
                        measure_pipeline(input, stages, doc.find_pmf(entry.ground_truth_pmf));
                }
                runs.push_back(std::move(run));
            }
            std::ostringstream buffer;
            render_pipelines(runs, format, buffer);
            out << buffer.str();
            return 0;
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
            return 3;
        }
    }

    // compare
    const ComparisonEntry* entry = nullptr;
    try {
        entry = &doc.find_comparison(comparison_name);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    try {
        const Pmf& input = doc.find_pmf(entry->input_pmf);
        std::vector<Stage> candidates;
        candidates.reserve(entry->candidate_names.size());
        for (const std::string& s : entry->candidate_names) {
            candidates.push_back(doc.find_stage(s).stage);
        }
        ComparisonRun run;
        run.name = comparison_name;
        run.ranked = compare_processes(input, candidates);
        std::ostringstream buffer;
        render_comparison(run, format, buffer);
        out << buffer.str();
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace cbr::cli
