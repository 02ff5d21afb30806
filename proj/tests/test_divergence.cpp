#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cbratio/divergence.hpp"
#include "oracles.hpp"

using namespace cbr;

namespace {

AlphabetRef letters(const std::string& name, std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(name + std::to_string(i));
    return Alphabet::create(name, std::move(labels));
}

Pmf random_pmf(const AlphabetRef& a, std::mt19937& rng, double floor = 0.0) {
    std::uniform_real_distribution<double> weight(floor, 1.0);
    std::vector<double> w(a->size());
    for (double& x : w) x = weight(rng);
    w[0] += 1e-6; // never all zero
    return make_pmf(a, w);
}

} // namespace

TEST_CASE("kl divergence on the canonical pairs") {
    auto two = letters("d", 2);
    Pmf p = make_pmf(two, {1.0, 0.0});
    Pmf q = make_pmf(two, {0.5, 0.5});

    CHECK(kl_divergence(q, q).bits == 0.0);
    CHECK(kl_divergence(p, q).bits == Catch::Approx(1.0).margin(1e-12));

    // absolute-continuity failure: mass where the reference has none
    DivergenceResult inf = kl_divergence(q, p);
    CHECK(inf.is_infinite());
    CHECK(inf.bits > 0.0);
}

TEST_CASE("kl rejects pmfs over different alphabets") {
    auto a = letters("a", 2);
    auto b = letters("b", 2);
    CHECK_THROWS_AS(kl_divergence(uniform_pmf(a), uniform_pmf(b)), AlphabetMismatchError);
}

TEST_CASE("js divergence: canonical values") {
    auto two = letters("j", 2);
    Pmf p = make_pmf(two, {1.0, 0.0});
    Pmf q = make_pmf(two, {0.0, 1.0});
    CHECK(js_divergence(p, p).bits == 0.0);
    CHECK(js_divergence(p, q).bits == Catch::Approx(1.0).margin(1e-12));

    // frozen from an independent high-precision evaluation of the formula
    Pmf r = make_pmf(two, {0.75, 0.25});
    Pmf s = make_pmf(two, {0.25, 0.75});
    CHECK(js_divergence(r, s).bits ==
          Catch::Approx(0.18872187554086714).margin(1e-12));
}

TEST_CASE("divergence dispatch") {
    auto two = letters("k", 2);
    Pmf p = make_pmf(two, {0.5, 0.5});
    Pmf q = make_pmf(two, {1.0, 0.0});

    SECTION("clamped-kl caps the infinite case") {
        DivergenceResult r = divergence(DivergenceKind::clamped_kl(10.0), p, q);
        CHECK_FALSE(r.is_infinite());
        CHECK(r.bits == 10.0);
        CHECK(r.kind.tag() == DivergenceKind::Tag::ClampedKL);
    }
    SECTION("kl of a pmf against itself is zero") {
        CHECK(divergence(DivergenceKind::kl(), p, p).bits == 0.0);
    }
    SECTION("js of disjoint point masses is one") {
        Pmf a = make_pmf(two, {1.0, 0.0});
        Pmf b = make_pmf(two, {0.0, 1.0});
        CHECK(divergence(DivergenceKind::jensen_shannon(), a, b).bits ==
              Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("clamped-kl equals kl below the cap") {
        Pmf a = make_pmf(two, {0.6, 0.4});
        Pmf b = make_pmf(two, {0.4, 0.6});
        const double kl = kl_divergence(a, b).bits;
        CHECK(divergence(DivergenceKind::clamped_kl(50.0), a, b).bits == kl);
    }
}

TEST_CASE("divergence kind parsing") {
    CHECK(DivergenceKind::parse("kl").tag() == DivergenceKind::Tag::KL);
    CHECK(DivergenceKind::parse("js").tag() == DivergenceKind::Tag::JensenShannon);
    DivergenceKind c = DivergenceKind::parse("clamped-kl:2.5");
    CHECK(c.tag() == DivergenceKind::Tag::ClampedKL);
    CHECK(c.cap() == 2.5);
    CHECK(c.to_string() == "clamped-kl:2.5");
    CHECK_THROWS_AS(DivergenceKind::parse("tv"), ValidationError);
    CHECK_THROWS_AS(DivergenceKind::parse("clamped-kl:nope"), ValidationError);
    CHECK_THROWS_AS(DivergenceKind::parse("clamped-kl:-1"), ValidationError);
    CHECK_THROWS_AS(DivergenceKind::clamped_kl(0.0), ValidationError);
}

TEST_CASE("kl asymmetry witness") {
    auto two = letters("w", 2);
    Pmf p = make_pmf(two, {0.9, 0.1});
    Pmf q = make_pmf(two, {0.5, 0.5});
    const double pq = kl_divergence(p, q).bits;
    const double qp = kl_divergence(q, p).bits;
    CHECK(pq != qp);
    CHECK(std::abs(pq - qp) > 1e-3);
}

TEST_CASE("divergence properties on randomized pairs") {
    std::mt19937 rng(20260810);
    auto a = letters("r", 12);
    for (int trial = 0; trial < 200; ++trial) {
        Pmf p = random_pmf(a, rng, 0.01);
        Pmf q = random_pmf(a, rng, 0.01);

        const double kl = kl_divergence(p, q).bits;
        CHECK(kl >= 0.0);
        CHECK(kl == Catch::Approx(oracle::kl_bits(p.probs(), q.probs())).margin(1e-10));

        const double js_pq = js_divergence(p, q).bits;
        const double js_qp = js_divergence(q, p).bits;
        CHECK(js_pq >= 0.0);
        CHECK(js_pq <= 1.0 + 1e-12);
        CHECK(js_pq == Catch::Approx(js_qp).margin(1e-12));
        CHECK(js_pq == Catch::Approx(oracle::js_bits(p.probs(), q.probs())).margin(1e-10));

        const double cap = 0.05;
        const double clamped = divergence(DivergenceKind::clamped_kl(cap), p, q).bits;
        CHECK(clamped <= cap);
        if (kl <= cap) CHECK(clamped == kl);
    }
}

TEST_CASE("divergence is zero iff the pmfs agree") {
    std::mt19937 rng(99);
    auto a = letters("z", 8);
    for (int trial = 0; trial < 50; ++trial) {
        Pmf p = random_pmf(a, rng, 0.05);
        CHECK(kl_divergence(p, p).bits == 0.0);
        CHECK(js_divergence(p, p).bits == 0.0);

        // perturb one coordinate pair well past the tolerance
        std::vector<double> w = p.probs();
        w[0] += 1e-3;
        w[1] = std::max(0.0, w[1] - 1e-3);
        Pmf q = make_pmf(a, w);
        CHECK(kl_divergence(p, q).bits > 1e-8);
        CHECK(js_divergence(p, q).bits > 1e-9);
    }
}
