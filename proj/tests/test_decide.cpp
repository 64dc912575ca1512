#include <catch2/catch_amalgamated.hpp>

#include "localeq/decide.hpp"
#include "localeq/orbit.hpp"
#include "localeq/rng.hpp"

using namespace localeq;

namespace {

LabeledGraph single_edge(const FieldSpec* f, int64_t label) {
    LabeledGraph g(f, 2);
    g.set(0, 1, f->from_int(label));
    return g;
}

LabeledGraph path3(const FieldSpec* f) {
    LabeledGraph g(f, 3);
    g.set(0, 1, f->one());
    g.set(1, 2, f->one());
    return g;
}

LabeledGraph triangle(const FieldSpec* f) {
    LabeledGraph g(f, 3);
    g.set(0, 1, f->one());
    g.set(1, 2, f->one());
    g.set(0, 2, f->one());
    return g;
}

std::vector<LabeledGraph> all_three_vertex_f3() {
    const FieldSpec* f = FieldSpec::prime(3);
    std::vector<LabeledGraph> out;
    for (uint64_t a = 0; a < 3; ++a)
        for (uint64_t b = 0; b < 3; ++b)
            for (uint64_t c = 0; c < 3; ++c) {
                LabeledGraph g(f, 3);
                if (a) g.set(0, 1, f->from_index(a));
                if (b) g.set(0, 2, f->from_index(b));
                if (c) g.set(1, 2, f->from_index(c));
                out.push_back(g);
            }
    return out;
}

}  // namespace

TEST_CASE("single-vertex pairs are always equivalent", "[decide]") {
    for (uint64_t q : {3ull, 9ull, 25ull}) {
        const FieldSpec* f = FieldSpec::of_order(q);
        Decision d = decide(LabeledGraph(f, 1), LabeledGraph(f, 1));
        REQUIRE(d.equivalent);
        REQUIRE(d.witness.has_value());
        CHECK(verify_witness(LabeledGraph(f, 1), LabeledGraph(f, 1), *d.witness));
    }
}

TEST_CASE("two-vertex closed forms", "[decide]") {
    const FieldSpec* f3 = FieldSpec::of_order(3);
    SECTION("nonzero labels are interchangeable") {
        Decision d = decide(single_edge(f3, 1), single_edge(f3, 2));
        REQUIRE(d.equivalent);
        CHECK(verify_witness(single_edge(f3, 1), single_edge(f3, 2), *d.witness));
        CHECK(equivalent_bruteforce(single_edge(f3, 1), single_edge(f3, 2)));
    }
    SECTION("edge presence is decisive") {
        Decision d = decide(single_edge(f3, 1), LabeledGraph(f3, 2));
        CHECK_FALSE(d.equivalent);
        CHECK_FALSE(d.witness.has_value());
        CHECK_FALSE(d.certificate.empty());
        CHECK_FALSE(equivalent_bruteforce(single_edge(f3, 1), LabeledGraph(f3, 2)));
    }
    SECTION("edgeless pairs") {
        Decision d = decide(LabeledGraph(f3, 2), LabeledGraph(f3, 2));
        REQUIRE(d.equivalent);
        CHECK(verify_witness(LabeledGraph(f3, 2), LabeledGraph(f3, 2), *d.witness));
    }
    SECTION("extension field labels") {
        const FieldSpec* f9 = FieldSpec::of_order(9);
        LabeledGraph a(f9, 2), b(f9, 2);
        a.set(0, 1, f9->element({0, 1}));
        b.set(0, 1, f9->element({1, 2}));
        Decision d = decide(a, b);
        REQUIRE(d.equivalent);
        CHECK(verify_witness(a, b, *d.witness));
    }
    SECTION("closed form covers the disconnected two-vertex case") {
        CHECK(decide(LabeledGraph(f3, 2), LabeledGraph(f3, 2)).equivalent);
    }
}

TEST_CASE("path and triangle are equivalent", "[decide]") {
    const FieldSpec* f3 = FieldSpec::of_order(3);
    Decision d = decide(path3(f3), triangle(f3));
    REQUIRE(d.equivalent);
    REQUIRE(d.witness.has_value());
    CHECK(verify_witness(path3(f3), triangle(f3), *d.witness));
    CHECK(d.stats.dim_lambda > 0);
    CHECK(d.stats.candidates > 0);
}

TEST_CASE("self-pairs are equivalent for random connected graphs", "[decide]") {
    Rng rng(0xdec1de5u);
    for (uint64_t q : {3ull, 5ull, 9ull}) {
        const FieldSpec* f = FieldSpec::of_order(q);
        for (size_t n : {3, 4, 5}) {
            LabeledGraph g = random_connected_graph(f, n, rng);
            Decision d = decide(g, g);
            REQUIRE(d.equivalent);
            CHECK(verify_witness(g, g, *d.witness));
        }
    }
}

TEST_CASE("decider agrees with brute force on three-vertex pairs", "[decide]") {
    auto graphs = all_three_vertex_f3();
    // Sampled ordered pairs; the full grid runs in the acceptance suite.
    Rng rng(0xacc0u);
    for (int trial = 0; trial < 40; ++trial) {
        const LabeledGraph& g = graphs[rng.below(graphs.size())];
        const LabeledGraph& h = graphs[rng.below(graphs.size())];
        Decision d = decide_general(g, h);
        bool oracle = equivalent_bruteforce(g, h);
        INFO("trial " << trial);
        CHECK(d.equivalent == oracle);
        if (d.equivalent) CHECK(verify_witness(g, h, *d.witness));
    }
}

TEST_CASE("verdicts are invariant under local operations", "[decide]") {
    Rng rng(0x11a5u);
    const FieldSpec* f3 = FieldSpec::of_order(3);
    for (int trial = 0; trial < 8; ++trial) {
        LabeledGraph g = random_connected_graph(f3, 4, rng);
        LabeledGraph h = trial % 2 == 0 ? apply_sequence(g, random_ops(f3, 4, 4, rng))
                                        : random_connected_graph(f3, 4, rng);
        bool base = decide(g, h).equivalent;
        size_t v = rng.below(4);
        CHECK(decide(star(g, v, rng.element(f3)), h).equivalent == base);
        CHECK(decide(g, circ(h, v, rng.nonzero(f3))).equivalent == base);
    }
}

TEST_CASE("equivalence is symmetric and transitive on constructed chains", "[decide]") {
    Rng rng(0x7a05u);
    const FieldSpec* f5 = FieldSpec::of_order(5);
    LabeledGraph g = random_connected_graph(f5, 4, rng);
    LabeledGraph h = apply_sequence(g, random_ops(f5, 4, 5, rng));
    LabeledGraph k = apply_sequence(h, random_ops(f5, 4, 5, rng));
    CHECK(decide(g, h).equivalent);
    CHECK(decide(h, g).equivalent);
    CHECK(decide(h, k).equivalent);
    CHECK(decide(g, k).equivalent);
}

TEST_CASE("connectivity requirements", "[decide]") {
    const FieldSpec* f3 = FieldSpec::of_order(3);
    LabeledGraph g(f3, 3);
    g.set(0, 1, f3->one());
    CHECK_THROWS_AS(decide(g, g), DisconnectedInput);
    CHECK(decide_general(g, g).equivalent);
    CHECK_THROWS_AS(decide(path3(f3), single_edge(f3, 1)), DimensionMismatch);
}

TEST_CASE("componentwise decision", "[decide]") {
    const FieldSpec* f3 = FieldSpec::of_order(3);
    SECTION("matching disjoint edges") {
        LabeledGraph g(f3, 4);
        g.set(0, 1, f3->one());
        g.set(2, 3, f3->from_int(2));
        Decision d = decide_general(g, g);
        REQUIRE(d.equivalent);
        CHECK(verify_witness(g, g, *d.witness));
    }
    SECTION("component partitions must match") {
        LabeledGraph g(f3, 3), h(f3, 3);
        g.set(0, 1, f3->one());
        h.set(0, 2, f3->one());
        Decision d = decide_general(g, h);
        CHECK_FALSE(d.equivalent);
        CHECK_FALSE(d.certificate.empty());
    }
    SECTION("componentwise witnesses assemble blockwise") {
        LabeledGraph g(f3, 5), h(f3, 5);
        g.set(0, 1, f3->one());
        g.set(1, 2, f3->one());
        h.set(0, 1, f3->one());
        h.set(1, 2, f3->one());
        h.set(0, 2, f3->one());
        g.set(3, 4, f3->from_int(2));
        h.set(3, 4, f3->from_int(2));
        Decision d = decide_general(g, h);
        REQUIRE(d.equivalent);
        CHECK(verify_witness(g, h, *d.witness));
    }
    SECTION("negative certificates name the failing component") {
        LabeledGraph g(f3, 3), h(f3, 3);
        g.set(0, 1, f3->one());
        Decision d = decide_general(g, h);
        CHECK_FALSE(d.equivalent);
        CHECK(d.certificate.find("component") != std::string::npos);
    }
}

TEST_CASE("parallel search finds witnesses too", "[decide]") {
    Rng rng(0x9a7a11u);
    const FieldSpec* f3 = FieldSpec::of_order(3);
    LabeledGraph g = random_connected_graph(f3, 5, rng);
    LabeledGraph h = apply_sequence(g, random_ops(f3, 5, 6, rng));
    DecideOptions opts;
    opts.workers = 3;
    opts.deterministic = false;
    Decision d = decide(g, h, opts);
    REQUIRE(d.equivalent);
    CHECK(verify_witness(g, h, *d.witness));
    LabeledGraph far(f3, 5);
    for (size_t i = 0; i + 1 < 5; ++i) far.set(i, i + 1, f3->one());
    Decision neg = decide(far, circ(far, 0, f3->from_int(2)), opts);
    Decision pos = decide(far, circ(far, 0, f3->from_int(2)));
    CHECK(neg.equivalent == pos.equivalent);
}
