#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "localeq/analysis.hpp"
#include "localeq/rng.hpp"

using namespace localeq;

namespace {

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

LabeledGraph claw(const FieldSpec* f) {
    LabeledGraph g(f, 4);
    g.set(0, 1, f->one());
    g.set(0, 2, f->one());
    g.set(0, 3, f->one());
    return g;
}

LabeledGraph square(const FieldSpec* f) {
    LabeledGraph g(f, 4);
    g.set(0, 1, f->one());
    g.set(1, 2, f->one());
    g.set(2, 3, f->one());
    g.set(0, 3, f->one());
    return g;
}

// Two triangles sharing one vertex: its bineighborhood space needs closed
// walks, not just simple cycles.
LabeledGraph bowtie_like(const FieldSpec* f) {
    LabeledGraph g(f, 5);
    g.set(0, 2, f->one());
    g.set(0, 3, f->one());
    g.set(1, 2, f->one());
    g.set(1, 4, f->one());
    g.set(2, 3, f->one());
    g.set(2, 4, f->one());
    return g;
}

// All elements of a subspace by coefficient enumeration (small q^dim only).
std::vector<Vec> enumerate_subspace(const Subspace& s) {
    const FieldSpec* f = s.field();
    size_t d = s.dim();
    std::vector<Vec> out;
    std::vector<uint64_t> idx(d, 0);
    for (;;) {
        Vec v = zeros(f, s.ambient());
        for (size_t i = 0; i < d; ++i) {
            if (idx[i] == 0) continue;
            Fq c = f->from_index(idx[i]);
            for (size_t t = 0; t < v.size(); ++t) v[t] += c * s.basis()[i][t];
        }
        out.push_back(std::move(v));
        size_t pos = d;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < f->q()) break;
            idx[pos] = 0;
            if (pos == 0) return out;
        }
        if (d == 0) return out;
    }
}

std::string key_of(const Vec& v) {
    std::string k;
    for (const Fq& c : v) k += std::to_string(c.spec()->index_of(c)) + ",";
    return k;
}

}  // namespace

TEST_CASE("Y+Z zero class dimensions", "[analysis]") {
    const FieldSpec* f3 = FieldSpec::of_order(3);
    CHECK(lambda0_basis(path3(f3)).dim() == 3);
    CHECK(lambda0_basis(triangle(f3)).dim() == 3);
    CHECK(lambda0_basis(claw(f3)).dim() == 4);
    LabeledGraph split(f3, 3);
    split.set(0, 1, f3->one());
    CHECK_THROWS_AS(lambda0_basis(split), DisconnectedInput);
}

TEST_CASE("Y+Z is constant on sampled solutions", "[analysis]") {
    Rng rng(0xa1a1u);
    for (uint64_t q : {3ull, 5ull, 9ull}) {
        const FieldSpec* f = FieldSpec::of_order(q);
        for (size_t n : {3, 4, 5, 6}) {
            LabeledGraph g = random_connected_graph(f, n, rng);
            CHECK(check_lemma_ai(g, 30, rng.next()));
        }
    }
}

TEST_CASE("cycle vector values and symmetries", "[analysis]") {
    const FieldSpec* f3 = FieldSpec::of_order(3);
    SECTION("chordless squares vanish") {
        CHECK(v_cycle(square(f3), {0, 1, 2, 3}) == zeros(f3, 4));
    }
    SECTION("doubled triangle cancels") {
        CHECK(v_cycle(triangle(f3), {0, 1, 2, 0, 1, 2}) == zeros(f3, 3));
    }
    SECTION("rotation flips the sign") {
        const FieldSpec* f5 = FieldSpec::of_order(5);
        Rng rng(0xc7c1eu);
        for (int trial = 0; trial < 10; ++trial) {
            LabeledGraph k4(f5, 4);
            for (size_t i = 0; i < 4; ++i)
                for (size_t j = i + 1; j < 4; ++j) k4.set(i, j, rng.nonzero(f5));
            Vec v = v_cycle(k4, {0, 1, 2, 3});
            Vec r1 = v_cycle(k4, {1, 2, 3, 0});
            Vec r2 = v_cycle(k4, {2, 3, 0, 1});
            for (size_t c = 0; c < 4; ++c) {
                CHECK(r1[c] == -v[c]);
                CHECK(r2[c] == v[c]);
            }
        }
    }
    SECTION("rejects malformed cycles") {
        CHECK_THROWS_AS(v_cycle(triangle(f3), {0, 1, 2}), InvalidCycle);
        CHECK_THROWS_AS(v_cycle(path3(f3), {0, 1, 2, 0}), InvalidCycle);
        CHECK_THROWS_AS(v_cycle(path3(f3), {0, 1, 1, 0}), InvalidCycle);
        CHECK_THROWS_AS(v_cycle(path3(f3), {0, 1, 2, 7}), IndexError);
    }
}

TEST_CASE("bineighborhood spaces of small graphs", "[analysis]") {
    const FieldSpec* f3 = FieldSpec::of_order(3);
    SECTION("path") {
        Subspace nu = nu_space_bruteforce(path3(f3));
        CHECK(nu.dim() == 1);
        Vec e1 = unit(f3, 3, 1);
        CHECK(nu.contains(e1));
    }
    SECTION("triangle") {
        CHECK(nu_space_bruteforce(triangle(f3)).dim() == 0);
    }
    SECTION("claw") {
        Subspace nu = nu_space_bruteforce(claw(f3));
        CHECK(nu.dim() == 1);
        CHECK(nu.contains(unit(f3, 4, 0)));
    }
    SECTION("closed walks matter beyond simple cycles") {
        LabeledGraph g = bowtie_like(f3);
        Subspace cycles_only = nu_space_bruteforce(g, 4);
        Subspace walks = nu_space_bruteforce(g);
        CHECK(cycles_only.dim() < walks.dim());
        CHECK_FALSE(subspace_equal(cycles_only, walks));
    }
}

TEST_CASE("first-block characterization", "[analysis]") {
    const FieldSpec* f3 = FieldSpec::of_order(3);
    CHECK(check_theorem_pen(path3(f3)));
    CHECK(check_theorem_pen(triangle(f3)));
    CHECK(check_theorem_pen(claw(f3)));
    CHECK(check_theorem_pen(square(f3)));
    CHECK(check_theorem_pen(bowtie_like(f3)));
    CHECK(pen_fiber_dim(square(f3)) == 1);
    CHECK(pen_fiber_dim(path3(f3)) == 1);
    CHECK(pen_fiber_dim(triangle(f3)) == 0);
    CHECK(has_odd_cycle(triangle(f3)));
    CHECK_FALSE(has_odd_cycle(square(f3)));

    Rng rng(0x9e4u);
    for (int trial = 0; trial < 10; ++trial) {
        LabeledGraph g = random_connected_graph(f3, 3 + rng.below(2), rng);
        CHECK(check_theorem_pen(g));
    }
}

TEST_CASE("determinant is constant on the solution space", "[analysis]") {
    Rng rng(0xdeaau);
    for (uint64_t q : {3ull, 5ull, 7ull}) {
        const FieldSpec* f = FieldSpec::of_order(q);
        for (size_t n : {3, 5, 8}) {
            LabeledGraph g = random_connected_graph(f, n, rng);
            CHECK(check_det_constant(g, 60, rng.next()));
        }
    }
    const FieldSpec* f3 = FieldSpec::of_order(3);
    CHECK_THROWS_AS(check_det_constant(LabeledGraph(f3, 2)), DimensionMismatch);
}

TEST_CASE("det-zero subset against exhaustive enumeration", "[analysis]") {
    const FieldSpec* f3 = FieldSpec::of_order(3);
    std::vector<LabeledGraph> cases{path3(f3), triangle(f3), claw(f3), square(f3),
                                    bowtie_like(f3)};
    for (const LabeledGraph& g : cases) {
        Subspace l0 = lambda0_basis(g);
        REQUIRE(l0.dim() <= 6);
        auto all = enumerate_subspace(l0);
        std::set<std::string> zero_set;
        std::vector<Vec> zero_vecs;
        for (const Vec& v : all) {
            Vec d = det_phi(PhiVector::from_flat(v));
            bool is_zero = true;
            for (const Fq& c : d) is_zero = is_zero && c.is_zero();
            if (is_zero) {
                zero_set.insert(key_of(v));
                zero_vecs.push_back(v);
            }
        }
        bool closed = true;
        for (size_t i = 0; i < zero_vecs.size() && closed; ++i)
            for (size_t j = 0; j < zero_vecs.size() && closed; ++j) {
                Vec sum = zero_vecs[i];
                for (size_t t = 0; t < sum.size(); ++t) sum[t] += zero_vecs[j][t];
                closed = zero_set.count(key_of(sum)) > 0;
            }
        INFO("graph with dim lambda0 = " << l0.dim());
        if (closed) {
            Subspace got = lambda00(g);
            size_t expect = 1;
            for (size_t i = 0; i < got.dim(); ++i) expect *= 3;
            CHECK(expect == zero_set.size());
            for (const Vec& v : zero_vecs) CHECK(got.contains(v));
        } else {
            CHECK_THROWS_AS(lambda00(g), NotLinear);
        }
    }
}

TEST_CASE("high-dimensional zero classes are linear with small codim", "[analysis]") {
    const FieldSpec* f3 = FieldSpec::of_order(3);
    Rng rng(0x51a7u);
    size_t found = 0;
    for (int attempt = 0; attempt < 300 && found < 5; ++attempt) {
        LabeledGraph g = random_connected_graph(f3, 5 + rng.below(3), rng, 40);
        Subspace l0 = lambda0_basis(g);
        if (l0.dim() < 5) continue;
        ++found;
        Subspace l00 = lambda00(g);  // must not throw
        CHECK(l0.dim() - l00.dim() <= 2);
        // every member has det zero, and psi vanishes pairwise
        auto members = enumerate_subspace(l00);
        for (const Vec& v : members) {
            Vec d = det_phi(PhiVector::from_flat(v));
            for (const Fq& c : d) CHECK(c.is_zero());
        }
        for (size_t i = 0; i < l00.basis().size(); ++i)
            for (size_t j = 0; j < l00.basis().size(); ++j) {
                Vec p = psi(PhiVector::from_flat(l00.basis()[i]),
                            PhiVector::from_flat(l00.basis()[j]));
                for (const Fq& c : p) CHECK(c.is_zero());
            }
    }
    REQUIRE(found == 5);
}

TEST_CASE("sample solutions and the affine subset", "[analysis]") {
    Rng rng(0x516u);
    for (uint64_t q : {3ull, 5ull}) {
        const FieldSpec* f = FieldSpec::of_order(q);
        for (int trial = 0; trial < 6; ++trial) {
            LabeledGraph g = random_connected_graph(f, 3 + rng.below(4), rng);
            SigmaSample s = sigma_sample(g);
            CHECK(verify_witness(g, g, s.witness));
            if (s.lambda00_linear) {
                REQUIRE(s.codim_in_lambda.has_value());
                CHECK(*s.codim_in_lambda <= 5);
                // shifted elements are all solutions
                for (const Vec& dir : s.directions->basis()) {
                    PhiVector shifted = PhiVector::from_flat(dir) + s.witness;
                    CHECK(verify_witness(g, g, shifted));
                }
            }
        }
    }
}

TEST_CASE("square roots across field orders", "[analysis]") {
    for (uint64_t q : {3ull, 5ull, 7ull, 9ull, 25ull, 27ull, 49ull}) {
        const FieldSpec* f = FieldSpec::of_order(q);
        size_t squares = 0;
        for (uint64_t idx = 0; idx < q; ++idx) {
            Fq e = f->from_index(idx);
            if (!is_square(e)) continue;
            ++squares;
            Fq r = detail::field_sqrt(e);
            CHECK(r * r == e);
        }
        CHECK(squares == (q + 1) / 2);
    }
}

TEST_CASE("isotropic vectors for 3x3 forms", "[analysis]") {
    const FieldSpec* f3 = FieldSpec::of_order(3);
    SECTION("identity over F_3") {
        std::vector<Vec> eye{unit(f3, 3, 0), unit(f3, 3, 1), unit(f3, 3, 2)};
        Vec x = isotropic_3x3(eye);
        Fq v = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        CHECK(v.is_zero());
        CHECK_FALSE((x[0].is_zero() && x[1].is_zero() && x[2].is_zero()));
    }
    SECTION("zero corner short-circuits") {
        std::vector<Vec> m{zeros(f3, 3), zeros(f3, 3), zeros(f3, 3)};
        m[1][1] = f3->one();
        m[2][2] = f3->one();
        m[0][1] = f3->from_int(2);
        Vec x = isotropic_3x3(m);
        CHECK(x == Vec{f3->one(), f3->zero(), f3->zero()});
    }
    SECTION("random matrices, all supported orders") {
        Rng rng(0x150u);
        for (uint64_t q : {3ull, 5ull, 7ull, 9ull, 25ull}) {
            const FieldSpec* f = FieldSpec::of_order(q);
            for (int trial = 0; trial < 60; ++trial) {
                std::vector<Vec> m(3, zeros(f, 3));
                for (auto& row : m)
                    for (auto& c : row) c = rng.element(f);
                Vec x = isotropic_3x3(m);
                REQUIRE(x.size() == 3);
                CHECK_FALSE((x[0].is_zero() && x[1].is_zero() && x[2].is_zero()));
                Fq acc = f->zero();
                for (size_t i = 0; i < 3; ++i)
                    for (size_t j = 0; j < 3; ++j) acc += x[i] * m[i][j] * x[j];
                CHECK(acc.is_zero());
            }
        }
    }
}

TEST_CASE("aggregate report", "[analysis]") {
    const FieldSpec* f3 = FieldSpec::of_order(3);
    SECTION("path") {
        InternalReport rep = analyze(path3(f3));
        CHECK(rep.q == 3);
        CHECK(rep.n == 3);
        CHECK(rep.dim_lambda == 4);
        CHECK(rep.dim_lambda0 == 3);
        CHECK(rep.lemma_ai_ok);
        CHECK(rep.shift_structure_ok);
        REQUIRE(rep.det_constant_ok.has_value());
        CHECK(*rep.det_constant_ok);
        REQUIRE(rep.pen_ok.has_value());
        CHECK(*rep.pen_ok);
        REQUIRE(rep.pen_fiber.has_value());
        CHECK(*rep.pen_fiber == 1);
        CHECK_FALSE(rep.odd_cycle);
        REQUIRE(rep.nu_span_stable.has_value());
        CHECK(*rep.nu_span_stable);
        REQUIRE(rep.sigma_witness.has_value());
        CHECK(verify_witness(path3(f3), path3(f3), *rep.sigma_witness));
        CHECK_FALSE(rep.y_plus_z_constants.empty());
    }
    SECTION("triangle") {
        InternalReport rep = analyze(triangle(f3));
        CHECK(rep.odd_cycle);
        REQUIRE(rep.pen_fiber.has_value());
        CHECK(*rep.pen_fiber == 0);
        CHECK(rep.shift_structure_ok);
    }
    SECTION("random connected graphs") {
        Rng rng(0x4e9u);
        for (uint64_t q : {3ull, 9ull}) {
            const FieldSpec* f = FieldSpec::of_order(q);
            LabeledGraph g = random_connected_graph(f, 4 + rng.below(2), rng);
            InternalReport rep = analyze(g, rng.next());
            CHECK(rep.lemma_ai_ok);
            CHECK(rep.shift_structure_ok);
            CHECK(*rep.det_constant_ok);
            if (rep.lambda00_linear) {
                REQUIRE(rep.sigma_codim.has_value());
                CHECK(*rep.sigma_codim <= 5);
            }
        }
    }
    SECTION("rejects disconnected input") {
        LabeledGraph g(f3, 3);
        g.set(0, 1, f3->one());
        CHECK_THROWS_AS(analyze(g), DisconnectedInput);
    }
}
