#include <doctest.h>

#include <string>

#include "jsrbounds/ensemble.hpp"
#include "jsrbounds/io.hpp"

using jsr::Complex;
using jsr::InputDocument;
using jsr::ParseError;

TEST_CASE("parse real shorthand and complex pairs") {
    const std::string text = R"({
        "d": 2,
        "matrices": [
            [[2, 0], [0, 1]],
            [[[0, 1], [0, 0]], [[0, 0], [0, 0]]]
        ],
        "labels": ["A", "B"]
    })";
    const InputDocument doc = jsr::parse_input(text);
    CHECK(doc.d == 2);
    REQUIRE(doc.matrices.size() == 2);
    CHECK(doc.matrices[0](0, 0) == Complex{2, 0});
    CHECK(doc.matrices[0](1, 1) == Complex{1, 0});
    CHECK(doc.matrices[1](0, 0) == Complex{0, 1});
    CHECK(doc.labels == std::vector<std::string>{"A", "B"});

    const jsr::MatrixSet s = jsr::to_matrix_set(doc);
    CHECK(s.dim() == 2);
    CHECK(s.size() == 2);
}

TEST_CASE("parse errors name the offending field") {
    CHECK_THROWS_WITH_AS(jsr::parse_input("{}"), "d: missing", ParseError);
    CHECK_THROWS_WITH_AS(jsr::parse_input(R"({"d": 2})"), "matrices: missing", ParseError);

    // wrong row count
    try {
        jsr::parse_input(R"({"d": 2, "matrices": [[[1, 2]]]})");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("matrices[0]") != std::string::npos);
    }

    // malformed complex entry
    try {
        jsr::parse_input(R"({"d": 1, "matrices": [[[[1, 2, 3]]]]})");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("matrices[0][0][0]") != std::string::npos);
    }

    // non-finite entry (JSON numeric overflow)
    try {
        jsr::parse_input(R"({"d": 1, "matrices": [[[1e999]]]})");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("not finite") != std::string::npos);
    }

    CHECK_THROWS_AS(jsr::parse_input(R"({"d": 1, "matrices": [[[1]]], "labels": []})"),
                    ParseError);
    CHECK_THROWS_AS(jsr::parse_input("not json"), ParseError);
    CHECK_THROWS_AS(jsr::parse_input(R"({"d": 0, "matrices": [[[1]]]})"), ParseError);
}

TEST_CASE("serialize/parse round-trip is identity") {
    jsr::DiscEnsemble ens(47);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 1 + static_cast<int>(ens.uniform01() * 4.0);
        const int r = 1 + static_cast<int>(ens.uniform01() * 3.0);
        InputDocument doc;
        doc.d = d;
        for (int i = 0; i < r; ++i) {
            jsr::ComplexMatrix m = ens.matrix(d);
            if (trial % 2 == 0) m(0, 0) = Complex{m(0, 0).real(), 0.0};  // exercise shorthand
            doc.matrices.push_back(std::move(m));
            doc.labels.push_back("M" + std::to_string(i));
        }
        const InputDocument again = jsr::parse_input(jsr::serialize_input(doc));
        CHECK(again == doc);
    }
}

TEST_CASE("load_input reports missing files") {
    CHECK_THROWS_AS(jsr::load_input("/nonexistent/path.json"), ParseError);
}
