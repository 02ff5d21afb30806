#pragma once

// The spec document: a JSON file (schema version 1) declaring alphabets,
// PMFs, transformations, knowledge recipes, stages, pipelines and
// comparisons by name. parse_spec fully validates it: every cross-reference
// must resolve and every local invariant must hold. Chaining of pipeline
// stages is checked later, at analysis time.
//
// Knowledge entries are recipes, not bound models: "uniform-preimage",
// "posterior:<pmf>" or an inline custom matrix. The concrete model is built
// per stage, with that stage's transformation as the forward map.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cbratio/cost_benefit.hpp"
#include "cbratio/errors.hpp"

namespace cbr::cli {

using json = nlohmann::ordered_json;

struct KnowledgeRecipe {
    KnowledgeModel::Kind kind = KnowledgeModel::Kind::UniformPreimage;
    std::string prior_pmf;                   // Posterior only
    std::vector<std::vector<double>> matrix; // Custom only
};

struct StageEntry {
    std::string transformation_name;
    std::string knowledge_name;
    Stage stage; // fully built at parse time
};

struct PipelineEntry {
    std::string input_pmf;
    std::vector<std::string> stage_names;
    std::string ground_truth_pmf; // empty = none
};

struct ComparisonEntry {
    std::string input_pmf;
    std::vector<std::string> candidate_names;
};

struct SpecDocument {
    int version = 1;
    std::vector<std::pair<std::string, AlphabetRef>> alphabets;
    std::vector<std::pair<std::string, Pmf>> pmfs;
    std::vector<std::pair<std::string, TransformationRef>> transformations;
    std::vector<std::pair<std::string, KnowledgeRecipe>> knowledge;
    std::vector<std::pair<std::string, StageEntry>> stages;
    std::vector<std::pair<std::string, PipelineEntry>> pipelines;
    std::vector<std::pair<std::string, ComparisonEntry>> comparisons;

    const AlphabetRef& find_alphabet(const std::string& name) const {
        for (const auto& [n, v] : alphabets) {
            if (n == name) return v;
        }
        throw UnresolvedReferenceError(name, "undefined alphabet '" + name + "'");
    }
    const Pmf& find_pmf(const std::string& name) const {
        for (const auto& [n, v] : pmfs) {
            if (n == name) return v;
        }
        throw UnresolvedReferenceError(name, "undefined pmf '" + name + "'");
    }
    const TransformationRef& find_transformation(const std::string& name) const {
        for (const auto& [n, v] : transformations) {
            if (n == name) return v;
        }
        throw UnresolvedReferenceError(name, "undefined transformation '" + name + "'");
    }
    const KnowledgeRecipe& find_knowledge(const std::string& name) const {
        for (const auto& [n, v] : knowledge) {
            if (n == name) return v;
        }
        throw UnresolvedReferenceError(name, "undefined knowledge model '" + name + "'");
    }
    const StageEntry& find_stage(const std::string& name) const {
        for (const auto& [n, v] : stages) {
            if (n == name) return v;
        }
        throw UnresolvedReferenceError(name, "undefined stage '" + name + "'");
    }
    const PipelineEntry& find_pipeline(const std::string& name) const {
        for (const auto& [n, v] : pipelines) {
            if (n == name) return v;
        }
        throw UnresolvedReferenceError(name, "undefined pipeline '" + name + "'");
    }
    const ComparisonEntry& find_comparison(const std::string& name) const {
        for (const auto& [n, v] : comparisons) {
            if (n == name) return v;
        }
        throw UnresolvedReferenceError(name, "undefined comparison '" + name + "'");
    }
};

namespace detail {

inline void expect_kind(const json& j, json::value_t kind, const std::string& path) {
    static const auto describe = [](json::value_t t) {
        switch (t) {
            case json::value_t::object: return "an object";
            case json::value_t::array: return "an array";
            case json::value_t::string: return "a string";
            case json::value_t::boolean: return "a boolean";
            default: return "a number";
        }
    };
    const bool ok = (kind == json::value_t::number_float) ? j.is_number() : j.type() == kind;
    if (!ok) {
        throw ValidationError("bad-type", path + " must be " + describe(kind));
    }
}

inline const json& member(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ValidationError("missing-field", path + " is missing '" + key + "'");
    }
    return *it;
}

inline void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                                const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ValidationError("unknown-key", path + " has unknown key '" + key + "'");
        }
    }
}

inline std::vector<double> number_array(const json& j, const std::string& path) {
    expect_kind(j, json::value_t::array, path);
    std::vector<double> values;
    values.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        expect_kind(j[i], json::value_t::number_float, path + "[" + std::to_string(i) + "]");
        values.push_back(j[i].get<double>());
    }
    return values;
}

inline std::vector<std::vector<double>> matrix_of(const json& j, const std::string& path) {
    expect_kind(j, json::value_t::array, path);
    std::vector<std::vector<double>> rows;
    rows.reserve(j.size());
    for (std::size_t r = 0; r < j.size(); ++r) {
        rows.push_back(number_array(j[r], path + "[" + std::to_string(r) + "]"));
    }
    return rows;
}

inline std::vector<std::string> string_array(const json& j, const std::string& path) {
    expect_kind(j, json::value_t::array, path);
    std::vector<std::string> values;
    values.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        expect_kind(j[i], json::value_t::string, path + "[" + std::to_string(i) + "]");
        values.push_back(j[i].get<std::string>());
    }
    return values;
}

inline KnowledgeRecipe knowledge_recipe(const json& j, const SpecDocument& doc,
                                        const std::string& path) {
    KnowledgeRecipe recipe;
    if (j.is_string()) {
        const std::string text = j.get<std::string>();
        if (text == "uniform-preimage") {
            recipe.kind = KnowledgeModel::Kind::UniformPreimage;
            return recipe;
        }
        constexpr std::string_view prefix = "posterior:";
        if (text.rfind(prefix, 0) == 0) {
            recipe.kind = KnowledgeModel::Kind::Posterior;
            recipe.prior_pmf = text.substr(prefix.size());
            doc.find_pmf(recipe.prior_pmf); // must resolve
            return recipe;
        }
        throw ValidationError("bad-knowledge",
                              path + ": expected 'uniform-preimage', 'posterior:<pmf>' or an "
                                     "inline matrix, got '" +
                                  text + "'");
    }
    if (j.is_object()) {
        reject_unknown_keys(j, {"matrix"}, path);
        recipe.kind = KnowledgeModel::Kind::Custom;
        recipe.matrix = matrix_of(member(j, "matrix", path), path + ".matrix");
        return recipe;
    }
    if (j.is_array()) {
        recipe.kind = KnowledgeModel::Kind::Custom;
        recipe.matrix = matrix_of(j, path);
        return recipe;
    }
    throw ValidationError("bad-knowledge",
                          path + ": expected 'uniform-preimage', 'posterior:<pmf>' or an inline "
                                 "matrix");
}

inline KnowledgeModelRef build_knowledge(const KnowledgeRecipe& recipe,
                                         const TransformationRef& forward,
                                         const SpecDocument& doc, const std::string& name) {
    switch (recipe.kind) {
        case KnowledgeModel::Kind::UniformPreimage:
            return KnowledgeModel::uniform_preimage(forward, name);
        case KnowledgeModel::Kind::Posterior:
            return KnowledgeModel::posterior(forward, doc.find_pmf(recipe.prior_pmf), name);
        case KnowledgeModel::Kind::Custom:
            return KnowledgeModel::custom(forward, recipe.matrix, name);
    }
    throw ValidationError("bad-knowledge", "unhandled knowledge kind for '" + name + "'");
}

inline CostSpec cost_spec(const json& j, const std::string& path) {
    expect_kind(j, json::value_t::object, path);
    reject_unknown_keys(j, {"amount", "unit", "includes_reconstruction"}, path);
    CostSpec cost;
    const json& amount = member(j, "amount", path);
    expect_kind(amount, json::value_t::number_float, path + ".amount");
    cost.amount = amount.get<double>();
    if (!(cost.amount >= 0.0)) {
        throw ValidationError("negative-cost", path + ".amount must be non-negative");
    }
    if (auto it = j.find("unit"); it != j.end()) {
        expect_kind(*it, json::value_t::string, path + ".unit");
        cost.unit = parse_cost_unit(it->get<std::string>());
    }
    if (auto it = j.find("includes_reconstruction"); it != j.end()) {
        expect_kind(*it, json::value_t::boolean, path + ".includes_reconstruction");
        cost.includes_reconstruction = it->get<bool>();
    }
    return cost;
}

} // namespace detail

/// Parse and validate a spec document. Syntax problems raise ParseError
/// (with the position nlohmann reports), unresolved names raise
/// UnresolvedReferenceError, anything else raises the library's validation
/// errors. A returned document is fully resolved.
inline SpecDocument parse_spec(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    detail::expect_kind(root, json::value_t::object, "document");
    detail::reject_unknown_keys(root,
                                {"version", "alphabets", "pmfs", "transformations", "knowledge",
                                 "stages", "pipelines", "comparisons"},
                                "document");

    SpecDocument doc;
    auto version_it = root.find("version");
    if (version_it == root.end()) {
        throw ValidationError("missing-version", "document is missing 'version'");
    }
    if (!version_it->is_number_integer()) {
        throw ValidationError("bad-type", "document version must be an integer");
    }
    doc.version = version_it->get<int>();
    if (doc.version != 1) {
        throw ValidationError("unsupported-version",
                              "document version " + std::to_string(doc.version) +
                                  " is not supported (expected 1)");
    }

    auto section = [&root](const char* key) -> const json* {
        auto it = root.find(key);
        if (it == root.end()) return nullptr;
        detail::expect_kind(*it, json::value_t::object, key);
        return &*it;
    };

    if (const json* alphabets = section("alphabets")) {
        for (const auto& [name, def] : alphabets->items()) {
            const std::string path = "alphabets." + name;
            doc.alphabets.emplace_back(name,
                                       Alphabet::create(name, detail::string_array(def, path)));
        }
    }
    if (const json* pmfs = section("pmfs")) {
        for (const auto& [name, def] : pmfs->items()) {
            const std::string path = "pmfs." + name;
            detail::expect_kind(def, json::value_t::object, path);
            detail::reject_unknown_keys(def, {"alphabet", "weights"}, path);
            const json& alphabet = detail::member(def, "alphabet", path);
            detail::expect_kind(alphabet, json::value_t::string, path + ".alphabet");
            const AlphabetRef& a = doc.find_alphabet(alphabet.get<std::string>());
            doc.pmfs.emplace_back(
                name, make_pmf(a, detail::number_array(detail::member(def, "weights", path),
                                                       path + ".weights")));
        }
    }
    if (const json* transformations = section("transformations")) {
        for (const auto& [name, def] : transformations->items()) {
            const std::string path = "transformations." + name;
            detail::expect_kind(def, json::value_t::object, path);
            detail::reject_unknown_keys(def, {"input", "output", "map", "matrix"}, path);
            const json& input = detail::member(def, "input", path);
            const json& output = detail::member(def, "output", path);
            detail::expect_kind(input, json::value_t::string, path + ".input");
            detail::expect_kind(output, json::value_t::string, path + ".output");
            const AlphabetRef& in = doc.find_alphabet(input.get<std::string>());
            const AlphabetRef& out = doc.find_alphabet(output.get<std::string>());

            const bool has_map = def.contains("map");
            const bool has_matrix = def.contains("matrix");
            if (has_map == has_matrix) {
                throw ValidationError("bad-transformation",
                                      path + " needs exactly one of 'map' or 'matrix'");
            }
            if (has_map) {
                const json& map_json = def["map"];
                detail::expect_kind(map_json, json::value_t::array, path + ".map");
                std::vector<std::size_t> map;
                map.reserve(map_json.size());
                for (std::size_t i = 0; i < map_json.size(); ++i) {
                    const std::string entry_path = path + ".map[" + std::to_string(i) + "]";
                    if (!map_json[i].is_number_unsigned()) {
                        throw ValidationError("bad-type",
                                              entry_path + " must be a non-negative integer");
                    }
                    map.push_back(map_json[i].get<std::size_t>());
                }
                doc.transformations.emplace_back(
                    name, Transformation::deterministic(in, out, std::move(map), name));
            } else {
                doc.transformations.emplace_back(
                    name, Transformation::stochastic(
                              in, out, detail::matrix_of(def["matrix"], path + ".matrix"),
                              name));
            }
        }
    }
    if (const json* knowledge = section("knowledge")) {
        for (const auto& [name, def] : knowledge->items()) {
            doc.knowledge.emplace_back(
                name, detail::knowledge_recipe(def, doc, "knowledge." + name));
        }
    }
    if (const json* stages = section("stages")) {
        for (const auto& [name, def] : stages->items()) {
            const std::string path = "stages." + name;
            detail::expect_kind(def, json::value_t::object, path);
            detail::reject_unknown_keys(def, {"transformation", "knowledge", "cost", "divergence"},
                                        path);
            StageEntry entry;
            const json& tname = detail::member(def, "transformation", path);
            detail::expect_kind(tname, json::value_t::string, path + ".transformation");
            entry.transformation_name = tname.get<std::string>();
            const json& kname = detail::member(def, "knowledge", path);
            detail::expect_kind(kname, json::value_t::string, path + ".knowledge");
            entry.knowledge_name = kname.get<std::string>();

            const TransformationRef& t = doc.find_transformation(entry.transformation_name);
            const KnowledgeRecipe& recipe = doc.find_knowledge(entry.knowledge_name);

            CostSpec cost;
            if (auto it = def.find("cost"); it != def.end()) {
                cost = detail::cost_spec(*it, path + ".cost");
            }
            DivergenceKind kind = DivergenceKind::kl();
            if (auto it = def.find("divergence"); it != def.end()) {
                detail::expect_kind(*it, json::value_t::string, path + ".divergence");
                kind = DivergenceKind::parse(it->get<std::string>());
            }
            entry.stage = Stage{t, detail::build_knowledge(recipe, t, doc, entry.knowledge_name),
                                cost, kind, name};
            doc.stages.emplace_back(name, std::move(entry));
        }
    }
    if (const json* pipelines = section("pipelines")) {
        for (const auto& [name, def] : pipelines->items()) {
            const std::string path = "pipelines." + name;
            detail::expect_kind(def, json::value_t::object, path);
            detail::reject_unknown_keys(def, {"input", "stages", "ground_truth"}, path);
            PipelineEntry entry;
            const json& input = detail::member(def, "input", path);
            detail::expect_kind(input, json::value_t::string, path + ".input");
            entry.input_pmf = input.get<std::string>();
            doc.find_pmf(entry.input_pmf);
            entry.stage_names = detail::string_array(detail::member(def, "stages", path),
                                                     path + ".stages");
            if (entry.stage_names.empty()) {
                throw ValidationError("empty-pipeline", path + " has no stages");
            }
            for (const std::string& s : entry.stage_names) doc.find_stage(s);
            if (auto it = def.find("ground_truth"); it != def.end()) {
                detail::expect_kind(*it, json::value_t::string, path + ".ground_truth");
                entry.ground_truth_pmf = it->get<std::string>();
                doc.find_pmf(entry.ground_truth_pmf);
            }
            doc.pipelines.emplace_back(name, std::move(entry));
        }
    }
    if (const json* comparisons = section("comparisons")) {
        for (const auto& [name, def] : comparisons->items()) {
            const std::string path = "comparisons." + name;
            detail::expect_kind(def, json::value_t::object, path);
            detail::reject_unknown_keys(def, {"input", "candidates"}, path);
            ComparisonEntry entry;
            const json& input = detail::member(def, "input", path);
            detail::expect_kind(input, json::value_t::string, path + ".input");
            entry.input_pmf = input.get<std::string>();
            doc.find_pmf(entry.input_pmf);
            entry.candidate_names = detail::string_array(detail::member(def, "candidates", path),
                                                         path + ".candidates");
            if (entry.candidate_names.empty()) {
                throw ValidationError("empty-comparison", path + " has no candidates");
            }
            for (const std::string& s : entry.candidate_names) doc.find_stage(s);
            doc.comparisons.emplace_back(name, std::move(entry));
        }
    }
    return doc;
}

/// Serialize a document back to schema-version-1 JSON. parse_spec applied
/// to the output reproduces an equivalent document.
inline std::string serialize_spec(const SpecDocument& doc) {
    json root = json::object();
    root["version"] = doc.version;

    if (!doc.alphabets.empty()) {
        json alphabets = json::object();
        for (const auto& [name, a] : doc.alphabets) {
            json labels = json::array();
            for (const Letter& l : a->letters()) labels.push_back(l.label);
            alphabets[name] = std::move(labels);
        }
        root["alphabets"] = std::move(alphabets);
    }
    if (!doc.pmfs.empty()) {
        json pmfs = json::object();
        for (const auto& [name, p] : doc.pmfs) {
            pmfs[name] = {{"alphabet", p.alphabet()->name()}, {"weights", p.probs()}};
        }
        root["pmfs"] = std::move(pmfs);
    }
    if (!doc.transformations.empty()) {
        json transformations = json::object();
        for (const auto& [name, t] : doc.transformations) {
            json def = {{"input", t->input()->name()}, {"output", t->output()->name()}};
            if (const auto* det = t->as_deterministic()) {
                def["map"] = det->map;
            } else {
                def["matrix"] = t->as_stochastic()->rows;
            }
            transformations[name] = std::move(def);
        }
        root["transformations"] = std::move(transformations);
    }
    if (!doc.knowledge.empty()) {
        json knowledge = json::object();
        for (const auto& [name, recipe] : doc.knowledge) {
            switch (recipe.kind) {
                case KnowledgeModel::Kind::UniformPreimage:
                    knowledge[name] = "uniform-preimage";
                    break;
                case KnowledgeModel::Kind::Posterior:
                    knowledge[name] = "posterior:" + recipe.prior_pmf;
                    break;
                case KnowledgeModel::Kind::Custom:
                    knowledge[name] = {{"matrix", recipe.matrix}};
                    break;
            }
        }
        root["knowledge"] = std::move(knowledge);
    }
    if (!doc.stages.empty()) {
        json stages = json::object();
        for (const auto& [name, entry] : doc.stages) {
            stages[name] = {{"transformation", entry.transformation_name},
                            {"knowledge", entry.knowledge_name},
                            {"cost",
                             {{"amount", entry.stage.cost.amount},
                              {"unit", to_string(entry.stage.cost.unit)},
                              {"includes_reconstruction",
                               entry.stage.cost.includes_reconstruction}}},
                            {"divergence", entry.stage.divergence_kind.to_string()}};
        }
        root["stages"] = std::move(stages);
    }
    if (!doc.pipelines.empty()) {
        json pipelines = json::object();
        for (const auto& [name, entry] : doc.pipelines) {
            json def = {{"input", entry.input_pmf}, {"stages", entry.stage_names}};
            if (!entry.ground_truth_pmf.empty()) {
                def["ground_truth"] = entry.ground_truth_pmf;
            }
            pipelines[name] = std::move(def);
        }
        root["pipelines"] = std::move(pipelines);
    }
    if (!doc.comparisons.empty()) {
        json comparisons = json::object();
        for (const auto& [name, entry] : doc.comparisons) {
            comparisons[name] = {{"input", entry.input_pmf},
                                 {"candidates", entry.candidate_names}};
        }
        root["comparisons"] = std::move(comparisons);
    }
    return root.dump(2) + "\n";
}

} // namespace cbr::cli
