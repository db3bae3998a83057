#include "support/builders.hpp"
#include "support/random_complex.hpp"

#include "halo/io.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace halo;
namespace ts = testsupport;

TEST_CASE("rational parsing and printing")
{
    REQUIRE(parse_decimal("3") == Rational(3));
    REQUIRE(parse_decimal("-0.25") == Rational(-1, 4));
    REQUIRE(parse_decimal("10.") == Rational(10));
    REQUIRE(parse_decimal("0.10") == Rational(1, 10));
    REQUIRE_THROWS_AS(parse_decimal("1.2.3"), InputError);
    REQUIRE_THROWS_AS(parse_decimal(""), InputError);
    REQUIRE_THROWS_AS(parse_decimal("x"), InputError);

    REQUIRE(format_rational(Rational(1, 10)) == "0.1");
    REQUIRE(format_rational(Rational(-3, 2)) == "-1.5");
    REQUIRE(format_rational(Rational(7)) == "7");
    REQUIRE(format_rational(Rational(1, 3)) == "1/3");
    for (const char* text : {"0.1", "-12.625", "3", "100.001"})
        REQUIRE(format_rational(parse_decimal(text)) == text);
}

TEST_CASE("parsing the figure fixture")
{
    auto fig = ts::fig1();
    REQUIRE(fig.complex.size() == 9);
    REQUIRE(fig.values.has_value());
    REQUIRE(fig.levels.has_value());
    REQUIRE_FALSE(fig.mvf.has_value());
    REQUIRE(set_contains(sublevel_closure(fig.complex, *fig.values, Rational(1)),
                         fig.complex.require("v")));
}

TEST_CASE("empty complex")
{
    ParseResult empty = parse_cwx("cwx 1\n");
    REQUIRE(empty.complex.size() == 0);
}

TEST_CASE("parse errors carry line numbers")
{
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_cwx(text);
        } catch (const ParseError& e) {
            return e.line;
        }
        return 0;
    };
    REQUIRE(line_of("nonsense\n") == 1);
    REQUIRE(line_of("cwx 1\nvalue x 1.0\n") == 2);
    REQUIRE(line_of("cwx 1\ncell a 0\ncell a 0\n") == 3);
    REQUIRE(line_of("cwx 1\ncell a 0\nflavor a 1\n") == 3);
    REQUIRE(line_of("cwx 1\ncell a 0\ncell b 0\nvalue a 1\n") > 0); // partial value map
    REQUIRE(line_of("cwx 1\ncell a zero\n") == 2);
    REQUIRE(line_of("cwx 1\ncell a 0\nlevel a -1\n") == 3);
    REQUIRE(line_of("cwx 1\ncell e 1\ncell a 0\nface e a\nface e a extra\n") == 5);
}

TEST_CASE("serialization round-trips through parse")
{
    std::vector<std::string> names = {"fig1.cwx",    "disc_ca15.cwx",          "disc_ca5.cwx",
                                      "disc_bad.cwx", "hollow_triangle.cwx",
                                      "square_frontier_fail.cwx", "cyclic_mvf.cwx"};
    for (const std::string& name : names) {
        ParseResult first = ts::load_fixture(name);
        const std::string canonical =
            serialize_cwx(first.complex, first.levels ? &*first.levels : nullptr,
                          first.values ? &*first.values : nullptr,
                          first.mvf ? &*first.mvf : nullptr);
        ParseResult second = parse_cwx(canonical);
        const std::string again =
            serialize_cwx(second.complex, second.levels ? &*second.levels : nullptr,
                          second.values ? &*second.values : nullptr,
                          second.mvf ? &*second.mvf : nullptr);
        REQUIRE(canonical == again);
    }
}

TEST_CASE("random complexes round-trip")
{
    std::mt19937 rng(777);
    for (int trial = 0; trial < 8; ++trial) {
        Complex c = ts::random_complex(rng);
        ValueMap f = ts::random_values(rng, c);
        LevelMap lm = ts::random_levels(rng, c);
        const std::string text = serialize_cwx(c, &lm, &f);
        ParseResult parsed = parse_cwx(text);
        REQUIRE(parsed.complex.size() == c.size());
        REQUIRE(parsed.values->value == f.value);
        REQUIRE(parsed.levels->level == lm.level);
        REQUIRE(serialize_cwx(parsed.complex, &*parsed.levels, &*parsed.values) == text);
    }
}

TEST_CASE("subdivision serialization parses back with envelope values")
{
    auto fig = ts::fig1();
    Stratification strat = compute_strata(fig.complex, *fig.levels);
    SdComplex sd = barycentric_subdivide(fig.complex, strat);
    EnvelopeMap env = upper_envelope(sd, *fig.values);
    const std::string text = serialize_subdivision(sd, &env);
    ParseResult parsed = parse_cwx(text);
    REQUIRE(parsed.complex.size() == sd.sd.size());
    REQUIRE(parsed.levels.has_value());
    REQUIRE(parsed.values.has_value());
    // the envelope is far from injective, and the format accepts that
    REQUIRE(find_duplicate_values(*parsed.values).has_value());
    REQUIRE(validate_complex(parsed.complex).ok());
}
