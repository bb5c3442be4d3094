#include <catch2/catch_amalgamated.hpp>

#include "jetinv/parser.hpp"

using namespace jetinv;

TEST_CASE("polynomial parsing") {
    auto t = VarTable::make({"x", "y"});
    auto f = parse_expression("x^3 + 3*x*y^2", t);
    REQUIRE(f.is_polynomial());
    const auto& terms = f.num().terms();
    REQUIRE(terms.size() == 2);
    CHECK(terms.at(Mono{3, 0}) == Rational(1));
    CHECK(terms.at(Mono{1, 2}) == Rational(3));
}

TEST_CASE("jet variable binding") {
    auto t = VarTable::make({"x", "y", "u[0,0]", "u[1,0]", "u[0,1]",
                             "u[2,0]", "u[1,1]", "u[0,2]"});
    auto f = parse_expression("u[2,0]*u[0,2] - u[1,1]^2", t);
    auto g = parse_expression("u[ 2 , 0 ]*u[0,2] - u[1,1]*u[1,1]", t);
    CHECK(f == g);
    CHECK(f.num().term_count() == 2);
}

TEST_CASE("division and normalization") {
    auto t = VarTable::make({"x"});
    auto f = parse_expression("(x+1)/(x-1) * (x-1)", t);
    CHECK(f == parse_expression("x+1", t));
}

TEST_CASE("unary minus and rationals") {
    auto t = VarTable::make({"x"});
    CHECK(parse_expression("-x^2", t) == -parse_expression("x^2", t));
    CHECK(parse_expression("--x", t) == parse_expression("x", t));
    CHECK(parse_expression("17/3", t).constant_value() == Rational(17, 3));
    CHECK(parse_expression("-17/3*x", t) == parse_expression("0-17*x/3", t));
}

TEST_CASE("errors carry position and offender") {
    auto t = VarTable::make({"x"});
    SECTION("syntax error with line/column") {
        try {
            parse_expression("x +\n* 2", t);
            FAIL("expected parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(e.column() == 1);
        }
    }
    SECTION("unknown variable named") {
        try {
            parse_expression("x + q", t);
            FAIL("expected unknown-variable");
        } catch (const Error& e) {
            CHECK(e.code() == "unknown-variable");
            CHECK(std::string(e.what()).find("'q'") != std::string::npos);
        }
    }
    SECTION("implicit multiplication rejected") {
        CHECK_THROWS_AS(parse_expression("2 x", t), ParseError);
        CHECK_THROWS_AS(parse_expression("x y", t), Error);
    }
    SECTION("division by zero constant") {
        CHECK_THROWS_AS(parse_expression("1/0", t), ParseError);
        CHECK_THROWS_AS(parse_expression("x/(x-x)", t), ParseError);
    }
}
