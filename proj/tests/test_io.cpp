#include <catch2/catch_amalgamated.hpp>

#include "localeq/io.hpp"
#include "localeq/rng.hpp"

using namespace localeq;

TEST_CASE("graph parsing basics", "[io]") {
    const FieldSpec* f3 = FieldSpec::of_order(3);
    SECTION("path on three vertices") {
        LabeledGraph g = parse_graph(R"({"q":3,"n":3,"edges":[[0,1,1],[1,2,1]]})");
        CHECK(g.field() == f3);
        CHECK(g.size() == 3);
        CHECK(g.at(0, 1) == f3->one());
        CHECK(g.at(1, 2) == f3->one());
        CHECK(g.at(0, 2).is_zero());
    }
    SECTION("edges key may be absent") {
        LabeledGraph g = parse_graph(R"({"q":5,"n":4})");
        CHECK(g.size() == 4);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = i + 1; j < 4; ++j) CHECK(g.at(i, j).is_zero());
    }
    SECTION("extension field with built-in modulus") {
        LabeledGraph g = parse_graph(R"({"q":9,"k":2,"n":2,"edges":[[0,1,[1,2]]]})");
        CHECK(g.field()->q() == 9);
        CHECK(g.at(0, 1) == g.field()->element({1, 2}));
    }
    SECTION("extension field with explicit modulus") {
        LabeledGraph g =
            parse_graph(R"({"q":9,"k":2,"modulus":[1,0,1],"n":2,"edges":[[0,1,2]]})");
        CHECK(g.at(0, 1) == g.field()->from_int(2));
    }
    SECTION("integer shorthand for extension constants") {
        LabeledGraph g = parse_graph(R"({"q":25,"k":2,"n":2,"edges":[[0,1,3]]})");
        CHECK(g.at(0, 1) == g.field()->from_int(3));
    }
}

TEST_CASE("graph parsing rejects malformed documents", "[io]") {
    auto reject = [](const std::string& text) {
        CHECK_THROWS_AS(parse_graph(text), ParseError);
    };
    reject("not json at all");
    reject(R"([1,2,3])");
    reject(R"({"n":3})");                                          // missing q
    reject(R"({"q":3})");                                          // missing n
    reject(R"({"q":4,"n":1})");                                    // not prime
    reject(R"({"q":3,"k":0,"n":1})");                              // bad k
    reject(R"({"q":10,"k":2,"n":1})");                             // not p^k
    reject(R"({"q":3,"modulus":[1,1],"n":1})");                    // modulus, k=1
    reject(R"({"q":3,"n":2,"edges":[[0,1,0]]})");                  // zero label
    reject(R"({"q":3,"n":2,"edges":[[0,1,3]]})");                  // label >= q
    reject(R"({"q":3,"n":2,"edges":[[0,1,-1]]})");                 // negative label
    reject(R"({"q":3,"n":2,"edges":[[1,0,1]]})");                  // i > j
    reject(R"({"q":3,"n":2,"edges":[[1,1,1]]})");                  // self-loop
    reject(R"({"q":3,"n":2,"edges":[[0,2,1]]})");                  // vertex range
    reject(R"({"q":3,"n":2,"edges":[[0,1,1],[0,1,2]]})");          // duplicate
    reject(R"({"q":3,"n":2,"edges":[[0,1]]})");                    // arity
    reject(R"({"q":9,"k":2,"n":2,"edges":[[0,1,[1,2,0]]]})");      // list length
    reject(R"({"q":9,"k":2,"n":2,"edges":[[0,1,[1,3]]]})");        // coeff >= p
    reject(R"({"q":3,"n":2,"edges":[[0,1,1.5]]})");                // non-integer
}

TEST_CASE("parse error messages carry a location", "[io]") {
    try {
        parse_graph(R"({"q":3,"n":2,"edges":[[0,1,1],[0,1,2]]})");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("$.edges[1]") != std::string::npos);
    }
}

TEST_CASE("graph serialization round trips", "[io]") {
    Rng rng(0x10aabu);
    for (uint64_t q : {3ull, 5ull, 9ull, 25ull, 27ull}) {
        const FieldSpec* f = FieldSpec::of_order(q);
        for (int trial = 0; trial < 5; ++trial) {
            LabeledGraph g = random_graph(f, 1 + rng.below(7), rng);
            LabeledGraph back = parse_graph(serialize_graph(g));
            CHECK(back == g);
        }
    }
    SECTION("prime labels stay integers, extension labels become lists") {
        const FieldSpec* f3 = FieldSpec::of_order(3);
        LabeledGraph g(f3, 2);
        g.set(0, 1, f3->from_int(2));
        CHECK(serialize_graph(g) == R"({"q":3,"n":2,"edges":[[0,1,2]]})");

        const FieldSpec* f9 = FieldSpec::of_order(9);
        LabeledGraph h(f9, 2);
        h.set(0, 1, f9->element({0, 1}));
        CHECK(serialize_graph(h) ==
              R"({"q":9,"k":2,"modulus":[1,0,1],"n":2,"edges":[[0,1,[0,1]]]})");
    }
}

TEST_CASE("op sequence parsing and serialization", "[io]") {
    const FieldSpec* f3 = FieldSpec::of_order(3);
    SECTION("documented example") {
        auto ops = parse_ops(R"([{"op":"star","v":1,"a":1},{"op":"circ","v":0,"b":2}])",
                             f3, 2);
        REQUIRE(ops.size() == 2);
        CHECK(ops[0].kind == LocalOp::Kind::Star);
        CHECK(ops[0].v == 1);
        CHECK(ops[0].scalar == f3->one());
        CHECK(ops[1].kind == LocalOp::Kind::Circ);
        CHECK(ops[1].v == 0);
        CHECK(ops[1].scalar == f3->from_int(2));
    }
    SECTION("round trips across fields") {
        Rng rng(0x09e5u);
        for (uint64_t q : {3ull, 9ull, 27ull}) {
            const FieldSpec* f = FieldSpec::of_order(q);
            std::vector<LocalOp> ops = random_ops(f, 6, 12, rng);
            auto back = parse_ops(serialize_ops(ops), f, 6);
            REQUIRE(back.size() == ops.size());
            for (size_t i = 0; i < ops.size(); ++i) {
                CHECK(back[i].kind == ops[i].kind);
                CHECK(back[i].v == ops[i].v);
                CHECK(back[i].scalar == ops[i].scalar);
            }
        }
    }
    SECTION("star with a = 0 is allowed, circ with b = 0 is not") {
        auto ops = parse_ops(R"([{"op":"star","v":0,"a":0}])", f3, 1);
        CHECK(ops.size() == 1);
        CHECK_THROWS_AS(parse_ops(R"([{"op":"circ","v":0,"b":0}])", f3, 1), ParseError);
    }
    SECTION("rejects malformed ops") {
        auto reject = [&](const std::string& text) {
            CHECK_THROWS_AS(parse_ops(text, f3, 2), ParseError);
        };
        reject(R"({"op":"star","v":0,"a":1})");       // not an array
        reject(R"([{"op":"swap","v":0,"a":1}])");     // unknown kind
        reject(R"([{"op":"star","v":2,"a":1}])");     // vertex range
        reject(R"([{"op":"star","v":0}])");           // missing scalar
        reject(R"([{"op":"circ","v":0}])");           // missing scalar
        reject(R"([{"v":0,"a":1}])");                 // missing kind
        reject(R"([{"op":"star","a":1}])");           // missing vertex
    }
}

TEST_CASE("parsed ops drive the operators", "[io]") {
    const FieldSpec* f3 = FieldSpec::of_order(3);
    LabeledGraph path = parse_graph(R"({"q":3,"n":3,"edges":[[0,1,1],[1,2,1]]})");
    auto ops = parse_ops(R"([{"op":"star","v":1,"a":1}])", f3, 3);
    LabeledGraph triangle = apply_sequence(path, ops);
    CHECK(triangle.at(0, 2) == f3->one());
    CHECK(serialize_graph(triangle) ==
          R"({"q":3,"n":3,"edges":[[0,1,1],[0,2,1],[1,2,1]]})");
}
