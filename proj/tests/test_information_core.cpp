#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "cbratio/pmf.hpp"
#include "oracles.hpp"

using namespace cbr;

namespace {

AlphabetRef letters(const std::string& name, std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(name + std::to_string(i));
    return Alphabet::create(name, std::move(labels));
}

} // namespace

TEST_CASE("alphabet invariants") {
    auto a = letters("a", 3);
    CHECK(a->size() == 3);
    CHECK(a->letters()[0].id == 0);
    CHECK(a->letters()[2].label == "a2");
    CHECK(a->contains(Letter{1, "a1"}));
    CHECK_FALSE(a->contains(Letter{1, "a2"}));
    CHECK_FALSE(a->contains(Letter{7, "a1"}));

    CHECK_THROWS_AS(Alphabet::create("bad", {}), ValidationError);
    CHECK_THROWS_AS(Alphabet::create("bad", {"x", "x"}), ValidationError);
    CHECK_THROWS_AS(Alphabet::create("bad", {"x", ""}), ValidationError);

    // Identity, not structure: two alphabets with the same letters differ.
    auto b = letters("a", 3);
    CHECK(same_alphabet(a, a));
    CHECK_FALSE(same_alphabet(a, b));
}

TEST_CASE("make_pmf normalizes weights") {
    auto two = letters("t", 2);
    Pmf p = make_pmf(two, {1.0, 1.0});
    CHECK(p.probs()[0] == Catch::Approx(0.5).margin(1e-15));
    CHECK(p.probs()[1] == Catch::Approx(0.5).margin(1e-15));

    auto three = letters("u", 3);
    Pmf q = make_pmf(three, {2.0, 1.0, 1.0});
    CHECK(q.probs()[0] == Catch::Approx(0.5).margin(1e-15));
    CHECK(q.probs()[1] == Catch::Approx(0.25).margin(1e-15));
    CHECK(q.probs()[2] == Catch::Approx(0.25).margin(1e-15));
}

TEST_CASE("make_pmf rejects bad weights with distinct codes") {
    auto four = letters("f", 4);
    try {
        make_pmf(four, {0.0, 0.0, 0.0, 0.0});
        FAIL("expected zero-weight-sum");
    } catch (const ValidationError& e) {
        CHECK(e.code() == "zero-weight-sum");
    }
    try {
        make_pmf(four, {1.0, -0.5, 0.0, 0.0});
        FAIL("expected negative-weight");
    } catch (const ValidationError& e) {
        CHECK(e.code() == "negative-weight");
    }
    try {
        make_pmf(four, {1.0, 1.0});
        FAIL("expected length-mismatch");
    } catch (const ValidationError& e) {
        CHECK(e.code() == "length-mismatch");
    }
}

TEST_CASE("pmf validating constructor rejects instead of renormalizing") {
    auto two = letters("v", 2);
    CHECK_NOTHROW(Pmf(two, {0.5, 0.5}));
    CHECK_THROWS_AS(Pmf(two, {0.6, 0.6}), ValidationError);
    CHECK_THROWS_AS(Pmf(two, {1.2, -0.2}), ValidationError);
    CHECK_THROWS_AS(Pmf(two, {1.0}), ValidationError);
    // within tolerance passes
    CHECK_NOTHROW(Pmf(two, {0.5, 0.5 + 5e-10}));
}

TEST_CASE("entropy matches the textbook values") {
    auto sixteen = letters("s", 16);
    CHECK(entropy(uniform_pmf(sixteen)) == Catch::Approx(4.0).margin(1e-12));

    auto three = letters("p", 3);
    Pmf point = make_pmf(three, {1.0, 0.0, 0.0});
    CHECK(entropy(point) == 0.0);

    Pmf skew = make_pmf(three, {0.5, 0.25, 0.25});
    CHECK(entropy(skew) == Catch::Approx(1.5).margin(1e-12));
}

TEST_CASE("max_entropy") {
    CHECK(max_entropy(letters("a", 16)) == Catch::Approx(4.0).margin(1e-12));
    CHECK(max_entropy(letters("b", 1)) == 0.0);
    // high-precision reference for log2(101)
    CHECK(max_entropy(letters("c", 101)) ==
          Catch::Approx(6.6582114827517947).margin(1e-12));
}

TEST_CASE("entropy bounds and equality conditions") {
    std::mt19937 rng(20260810);
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> sizes(1, 40);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = sizes(rng);
        auto a = letters("r", n);
        std::vector<double> w(n);
        for (double& x : w) x = weight(rng);
        if (std::accumulate(w.begin(), w.end(), 0.0) == 0.0) w[0] = 1.0;
        Pmf p = make_pmf(a, w);

        const double h = entropy(p);
        CHECK(h >= 0.0);
        CHECK(h <= max_entropy(a) + 1e-9);
        CHECK(h == Catch::Approx(oracle::entropy_bits(p.probs())).margin(1e-12));

        double sum = 0.0;
        for (double x : p.probs()) sum += x;
        CHECK(sum == Catch::Approx(1.0).margin(1e-9));
    }

    // equality on the right iff uniform, on the left iff point mass
    auto a = letters("e", 8);
    CHECK(entropy(uniform_pmf(a)) == Catch::Approx(max_entropy(a)).margin(1e-9));
    Pmf nearly = make_pmf(a, {2, 1, 1, 1, 1, 1, 1, 1});
    CHECK(entropy(nearly) < max_entropy(a) - 1e-3);
    Pmf point = make_pmf(a, {0, 0, 0, 1, 0, 0, 0, 0});
    CHECK(entropy(point) == 0.0);
    Pmf spread = make_pmf(a, {1e-6, 0, 0, 1, 0, 0, 0, 0});
    CHECK(entropy(spread) > 0.0);
}

TEST_CASE("entropy is permutation invariant") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> weight(0.01, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 17;
        std::vector<std::string> labels;
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            labels.push_back("L" + std::to_string(i));
            w[i] = weight(rng);
        }
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);

        std::vector<std::string> shuffled_labels(n);
        std::vector<double> shuffled_w(n);
        for (std::size_t i = 0; i < n; ++i) {
            shuffled_labels[i] = labels[perm[i]];
            shuffled_w[i] = w[perm[i]];
        }

        Pmf p = make_pmf(Alphabet::create("orig", labels), w);
        Pmf q = make_pmf(Alphabet::create("perm", shuffled_labels), shuffled_w);
        CHECK(entropy(p) == Catch::Approx(entropy(q)).margin(1e-12));
    }
}
