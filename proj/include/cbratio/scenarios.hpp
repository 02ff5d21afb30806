#pragma once

// Ready-made worked scenarios: small many-to-one transformations that make
// the cost-benefit numbers concrete. Each generator returns the input
// alphabet, the forward transformation (which carries the output alphabet)
// and a uniform input PMF as the suggested starting distribution.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cbratio/errors.hpp"
#include "cbratio/pmf.hpp"
#include "cbratio/transform.hpp"

namespace cbr {

/// Datasets that may contain any subset of four cities (16 letters),
/// filtered by an algorithm that removes cities C and D (4 letters).
struct CityFilter {};

struct GradeBin {
    std::string grade;
    int lo = 0;
    int hi = 0;
};

inline std::vector<GradeBin> default_grade_bins() {
    return {{"A", 90, 100}, {"B", 80, 89}, {"C", 70, 79},
            {"D", 60, 69},  {"E", 50, 59}, {"F", 0, 49}};
}

/// Integer marks 0..100 binned into letter grades.
struct GradeQuantizer {
    std::vector<GradeBin> bins = default_grade_bins();
};

/// Integer values quantized onto pixel heights by floor scaling:
/// v -> floor(v * n_pixels / n_values).
struct BarHeightQuantizer {
    std::size_t n_values = 10001;
    std::size_t n_pixels = 1000;
};

/// Multigraph edge multisets over the unordered node pairs (per-pair
/// multiplicity 0..k_max) bundled down to per-pair presence patterns.
struct EdgeBundling {
    std::size_t n_nodes = 3;
    std::size_t k_max = 3;
};

/// 1-D positions binned proportionally onto a coarser grid:
/// i -> floor(i * n_cells_out / n_cells_in).
struct GridMap {
    std::size_t n_cells_in = 100;
    std::size_t n_cells_out = 10;
};

using ScenarioSpec =
    std::variant<CityFilter, GradeQuantizer, BarHeightQuantizer, EdgeBundling, GridMap>;

struct ScenarioBuild {
    AlphabetRef input;
    TransformationRef transformation;
    Pmf uniform_input;
};

namespace detail {

// Enumerable alphabets only; plain summation keeps rounding far below the
// test tolerances at this scale.
inline constexpr std::size_t kMaxScenarioLetters = std::size_t{1} << 20;

inline void require_count(std::size_t value, const char* what) {
    if (value < 1) {
        throw ValidationError("bad-parameter", std::string(what) + " must be at least 1");
    }
}

inline std::vector<std::string> integer_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return labels;
}

inline std::string subset_label(unsigned mask, const std::vector<std::string>& members) {
    std::string label = "{";
    bool first = true;
    for (std::size_t b = 0; b < members.size(); ++b) {
        if (mask & (1u << b)) {
            if (!first) label += ",";
            label += members[b];
            first = false;
        }
    }
    label += "}";
    return label;
}

inline ScenarioBuild build_city_filter() {
    const std::vector<std::string> cities = {"A", "B", "C", "D"};
    std::vector<std::string> in_labels;
    for (unsigned mask = 0; mask < 16; ++mask) in_labels.push_back(subset_label(mask, cities));
    std::vector<std::string> out_labels;
    for (unsigned mask = 0; mask < 4; ++mask) out_labels.push_back(subset_label(mask, cities));

    AlphabetRef input = Alphabet::create("city-datasets", std::move(in_labels));
    AlphabetRef output = Alphabet::create("filtered-city-datasets", std::move(out_labels));
    std::vector<std::size_t> map(16);
    for (unsigned mask = 0; mask < 16; ++mask) map[mask] = mask & 0x3u; // drop C and D
    TransformationRef f =
        Transformation::deterministic(input, output, std::move(map), "city-filter");
    return {input, f, uniform_pmf(input)};
}

inline ScenarioBuild build_grade_quantizer(const GradeQuantizer& spec) {
    if (spec.bins.empty()) {
        throw ValidationError("bad-bins", "grade quantizer needs at least one bin");
    }
    std::vector<int> owner(101, -1);
    std::vector<std::string> grade_labels;
    for (std::size_t g = 0; g < spec.bins.size(); ++g) {
        const GradeBin& bin = spec.bins[g];
        if (bin.lo < 0 || bin.hi > 100 || bin.lo > bin.hi) {
            throw ValidationError("bad-bins", "grade bin '" + bin.grade + "' has range " +
                                                  std::to_string(bin.lo) + ".." +
                                                  std::to_string(bin.hi));
        }
        for (int mark = bin.lo; mark <= bin.hi; ++mark) {
            if (owner[static_cast<std::size_t>(mark)] != -1) {
                throw ValidationError("bad-bins", "grade bins overlap at mark " +
                                                      std::to_string(mark));
            }
            owner[static_cast<std::size_t>(mark)] = static_cast<int>(g);
        }
        grade_labels.push_back(bin.grade);
    }
    for (int mark = 0; mark <= 100; ++mark) {
        if (owner[static_cast<std::size_t>(mark)] == -1) {
            throw ValidationError("bad-bins",
                                  "grade bins leave mark " + std::to_string(mark) + " uncovered");
        }
    }

    AlphabetRef input = Alphabet::create("marks", integer_labels(101));
    AlphabetRef output = Alphabet::create("grades", std::move(grade_labels));
    std::vector<std::size_t> map(101);
    for (std::size_t mark = 0; mark <= 100; ++mark) {
        map[mark] = static_cast<std::size_t>(owner[mark]);
    }
    TransformationRef f =
        Transformation::deterministic(input, output, std::move(map), "grade-quantizer");
    return {input, f, uniform_pmf(input)};
}

inline ScenarioBuild build_bar_height_quantizer(const BarHeightQuantizer& spec) {
    require_count(spec.n_values, "n_values");
    require_count(spec.n_pixels, "n_pixels");
    if (spec.n_values > kMaxScenarioLetters) {
        throw ValidationError("alphabet-too-large",
                              "bar-height quantizer with " + std::to_string(spec.n_values) +
                                  " values exceeds the enumerable limit");
    }
    AlphabetRef input = Alphabet::create("bar-values", integer_labels(spec.n_values));
    AlphabetRef output = Alphabet::create("bar-heights", integer_labels(spec.n_pixels));
    std::vector<std::size_t> map(spec.n_values);
    for (std::size_t v = 0; v < spec.n_values; ++v) {
        map[v] = (v * spec.n_pixels) / spec.n_values;
    }
    TransformationRef f =
        Transformation::deterministic(input, output, std::move(map), "bar-height-quantizer");
    return {input, f, uniform_pmf(input)};
}

inline ScenarioBuild build_edge_bundling(const EdgeBundling& spec) {
    require_count(spec.n_nodes, "n_nodes");
    require_count(spec.k_max, "k_max");
    const std::size_t pairs = spec.n_nodes * (spec.n_nodes - 1) / 2;
    const std::size_t radix = spec.k_max + 1;

    std::size_t in_size = 1;
    std::size_t out_size = 1;
    for (std::size_t p = 0; p < pairs; ++p) {
        if (in_size > kMaxScenarioLetters / radix) {
            throw ValidationError("alphabet-too-large",
                                  "edge bundling over " + std::to_string(spec.n_nodes) +
                                      " nodes with k_max " + std::to_string(spec.k_max) +
                                      " exceeds the enumerable limit");
        }
        in_size *= radix;
        out_size *= 2;
    }

    auto pattern_label = [pairs](std::size_t code, std::size_t base) {
        if (pairs == 0) return std::string("none");
        std::vector<std::size_t> digits(pairs, 0);
        for (std::size_t p = pairs; p-- > 0;) {
            digits[p] = code % base;
            code /= base;
        }
        std::string label;
        for (std::size_t p = 0; p < pairs; ++p) {
            if (p) label += "/";
            label += std::to_string(digits[p]);
        }
        return label;
    };

    std::vector<std::string> in_labels;
    in_labels.reserve(in_size);
    for (std::size_t code = 0; code < in_size; ++code) {
        in_labels.push_back(pattern_label(code, radix));
    }
    std::vector<std::string> out_labels;
    out_labels.reserve(out_size);
    for (std::size_t code = 0; code < out_size; ++code) {
        out_labels.push_back(pattern_label(code, 2));
    }

    AlphabetRef input = Alphabet::create("edge-multisets", std::move(in_labels));
    AlphabetRef output = Alphabet::create("edge-patterns", std::move(out_labels));

    // multiplicity m on a pair bundles to the presence bit 1[m > 0]
    std::vector<std::size_t> map(in_size);
    for (std::size_t code = 0; code < in_size; ++code) {
        std::size_t rest = code;
        std::size_t out_code = 0;
        std::vector<std::size_t> digits(pairs, 0);
        for (std::size_t p = pairs; p-- > 0;) {
            digits[p] = rest % radix;
            rest /= radix;
        }
        for (std::size_t p = 0; p < pairs; ++p) {
            out_code = out_code * 2 + (digits[p] > 0 ? 1 : 0);
        }
        map[code] = out_code;
    }
    TransformationRef f =
        Transformation::deterministic(input, output, std::move(map), "edge-bundling");
    return {input, f, uniform_pmf(input)};
}

inline ScenarioBuild build_grid_map(const GridMap& spec) {
    require_count(spec.n_cells_in, "n_cells_in");
    require_count(spec.n_cells_out, "n_cells_out");
    if (spec.n_cells_in > kMaxScenarioLetters) {
        throw ValidationError("alphabet-too-large",
                              "grid map with " + std::to_string(spec.n_cells_in) +
                                  " positions exceeds the enumerable limit");
    }
    AlphabetRef input = Alphabet::create("grid-positions", integer_labels(spec.n_cells_in));
    AlphabetRef output = Alphabet::create("grid-cells", integer_labels(spec.n_cells_out));
    std::vector<std::size_t> map(spec.n_cells_in);
    for (std::size_t i = 0; i < spec.n_cells_in; ++i) {
        map[i] = (i * spec.n_cells_out) / spec.n_cells_in;
    }
    TransformationRef f =
        Transformation::deterministic(input, output, std::move(map), "grid-map");
    return {input, f, uniform_pmf(input)};
}

} // namespace detail

inline ScenarioBuild build_scenario(const ScenarioSpec& spec) {
    return std::visit(
        [](const auto& s) -> ScenarioBuild {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CityFilter>) {
                return detail::build_city_filter();
            } else if constexpr (std::is_same_v<T, GradeQuantizer>) {
                return detail::build_grade_quantizer(s);
            } else if constexpr (std::is_same_v<T, BarHeightQuantizer>) {
                return detail::build_bar_height_quantizer(s);
            } else if constexpr (std::is_same_v<T, EdgeBundling>) {
                return detail::build_edge_bundling(s);
            } else {
                return detail::build_grid_map(s);
            }
        },
        spec);
}

struct ScenarioInfo {
    std::string id;
    std::string summary;
    ScenarioSpec defaults;
};

/// The fixed scenario catalog, in stable order.
inline const std::vector<ScenarioInfo>& list_scenarios() {
    static const std::vector<ScenarioInfo> catalog = {
        {"city-filter",
         "datasets over four cities (16-letter powerset) filtered down to the 4 subsets "
         "without C and D",
         CityFilter{}},
        {"grade-quantizer",
         "integer marks 0..100 binned into letter grades (defaults A:90-100, B:80-89, "
         "C:70-79, D:60-69, E:50-59, F:0-49)",
         GradeQuantizer{}},
        {"bar-height-quantizer",
         "integer values quantized onto pixel heights by floor scaling (defaults: 10001 "
         "values onto 1000 pixels)",
         BarHeightQuantizer{}},
        {"edge-bundling",
         "multigraph edge multisets bundled to per-pair presence patterns (defaults: 3 "
         "nodes, multiplicity up to 3)",
         EdgeBundling{}},
        {"grid-map",
         "1-D positions binned proportionally onto a coarser grid (defaults: 100 positions "
         "onto 10 cells)",
         GridMap{}},
    };
    return catalog;
}

} // namespace cbr
