#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "cbratio/pmf.hpp"
#include "cbratio/scenarios.hpp"

using namespace cbr;

namespace {

std::vector<std::size_t> preimage_sizes(const Transformation& f) {
    std::vector<std::size_t> counts(f.output()->size(), 0);
    for (std::size_t o : f.as_deterministic()->map) ++counts[o];
    return counts;
}

} // namespace

TEST_CASE("scenario catalog is fixed and ordered") {
    const auto& catalog = list_scenarios();
    REQUIRE(catalog.size() == 5);
    CHECK(catalog[0].id == "city-filter");
    CHECK(catalog[1].id == "grade-quantizer");
    CHECK(catalog[2].id == "bar-height-quantizer");
    CHECK(catalog[3].id == "edge-bundling");
    CHECK(catalog[4].id == "grid-map");
    for (const auto& info : catalog) {
        CHECK_FALSE(info.summary.empty());
    }
    // stable across calls
    const auto& again = list_scenarios();
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        CHECK(again[i].id == catalog[i].id);
        CHECK(again[i].summary == catalog[i].summary);
    }
}

TEST_CASE("city filter alphabet sizes and exact compression") {
    ScenarioBuild s = build_scenario(CityFilter{});
    CHECK(s.input->size() == 16);
    CHECK(s.transformation->output()->size() == 4);

    const double h_in = entropy(s.uniform_input);
    const double h_out = entropy(pushforward(s.uniform_input, *s.transformation));
    CHECK(std::abs(h_in - 4.0) < 1e-12);
    CHECK(std::abs(h_out - 2.0) < 1e-12);
    CHECK(std::abs((h_in - h_out) - 2.0) < 1e-12);
}

TEST_CASE("grade quantizer bins") {
    ScenarioBuild s = build_scenario(GradeQuantizer{});
    CHECK(s.input->size() == 101);
    CHECK(s.transformation->output()->size() == 6);

    auto counts = preimage_sizes(*s.transformation);
    CHECK(counts == std::vector<std::size_t>{11, 10, 10, 10, 10, 50});
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    CHECK(total == 101);

    SECTION("custom bins are honored") {
        GradeQuantizer spec;
        spec.bins = {{"pass", 50, 100}, {"fail", 0, 49}};
        ScenarioBuild s2 = build_scenario(spec);
        CHECK(s2.transformation->output()->size() == 2);
        auto counts2 = preimage_sizes(*s2.transformation);
        CHECK(counts2 == std::vector<std::size_t>{51, 50});
    }
    SECTION("gaps and overlaps are rejected") {
        GradeQuantizer gap;
        gap.bins = {{"hi", 51, 100}, {"lo", 0, 49}};
        CHECK_THROWS_AS(build_scenario(gap), ValidationError);
        GradeQuantizer overlap;
        overlap.bins = {{"hi", 49, 100}, {"lo", 0, 49}};
        CHECK_THROWS_AS(build_scenario(overlap), ValidationError);
    }
}

TEST_CASE("bar-height quantizer: every pixel takes 10 or 11 values") {
    ScenarioBuild s = build_scenario(BarHeightQuantizer{});
    CHECK(s.input->size() == 10001);
    CHECK(s.transformation->output()->size() == 1000);

    auto counts = preimage_sizes(*s.transformation);
    std::size_t total = 0;
    for (std::size_t c : counts) {
        CHECK((c == 10 || c == 11));
        total += c;
    }
    CHECK(total == 10001);
}

TEST_CASE("edge bundling alphabet sizes by enumeration") {
    SECTION("two nodes, multiplicity up to three") {
        ScenarioBuild s = build_scenario(EdgeBundling{2, 3});
        CHECK(s.input->size() == 4);
        CHECK(s.transformation->output()->size() == 2);
        // multiplicity 0 maps to absent, everything else to present
        const auto& map = s.transformation->as_deterministic()->map;
        CHECK(map == std::vector<std::size_t>{0, 1, 1, 1});
    }
    SECTION("sizes follow (k_max+1)^pairs for small cases") {
        for (std::size_t n = 1; n <= 3; ++n) {
            for (std::size_t k = 1; k <= 3; ++k) {
                ScenarioBuild s = build_scenario(EdgeBundling{n, k});
                const std::size_t pairs = n * (n - 1) / 2;
                std::size_t expect_in = 1;
                std::size_t expect_out = 1;
                for (std::size_t p = 0; p < pairs; ++p) {
                    expect_in *= (k + 1);
                    expect_out *= 2;
                }
                CHECK(s.input->size() == expect_in);
                CHECK(s.transformation->output()->size() == expect_out);
            }
        }
    }
    SECTION("oversized requests are rejected") {
        CHECK_THROWS_AS(build_scenario(EdgeBundling{8, 3}), ValidationError);
    }
}

TEST_CASE("grid map bins positions proportionally") {
    ScenarioBuild s = build_scenario(GridMap{});
    CHECK(s.input->size() == 100);
    CHECK(s.transformation->output()->size() == 10);
    auto counts = preimage_sizes(*s.transformation);
    for (std::size_t c : counts) CHECK(c == 10);
}

TEST_CASE("every generated transformation is total and partitions its input") {
    for (const auto& info : list_scenarios()) {
        ScenarioBuild s = build_scenario(info.defaults);
        const auto* det = s.transformation->as_deterministic();
        REQUIRE(det != nullptr);
        REQUIRE(det->map.size() == s.input->size());

        auto counts = preimage_sizes(*s.transformation);
        std::size_t total = 0;
        for (std::size_t c : counts) total += c;
        CHECK(total == s.input->size());

        // suggested input is uniform over the input alphabet
        CHECK(s.uniform_input.size() == s.input->size());
        for (double p : s.uniform_input.probs()) {
            CHECK(p == Catch::Approx(1.0 / static_cast<double>(s.input->size())).margin(1e-12));
        }
    }
}

TEST_CASE("scenario parameter validation") {
    CHECK_THROWS_AS(build_scenario(BarHeightQuantizer{0, 10}), ValidationError);
    CHECK_THROWS_AS(build_scenario(GridMap{0, 1}), ValidationError);
    CHECK_THROWS_AS(build_scenario(EdgeBundling{0, 1}), ValidationError);
    CHECK_THROWS_AS(build_scenario(EdgeBundling{2, 0}), ValidationError);
    GradeQuantizer empty;
    empty.bins.clear();
    CHECK_THROWS_AS(build_scenario(empty), ValidationError);
}
