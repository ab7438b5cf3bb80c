#include <doctest.h>

#include "sq/named.hpp"
#include "sq/table_io.hpp"

using namespace sq;

TEST_CASE("table text round-trips")
{
    for (const auto& b : {StructureBundle{named::order4_semiquandle(), std::nullopt, std::nullopt},
                          named::order4_singular(), named::order3_virtual(), named::constant_action_132_operator()}) {
        auto text = format_bundle(b);
        auto back = parse_bundle(text);
        CHECK(back.table == b.table);
        CHECK(back.singular == b.singular);
        CHECK(back.virt == b.virt);
        CHECK(format_bundle(back) == text);
    }
}

TEST_CASE("header flags select the optional blocks")
{
    auto b = parse_bundle("semiquandle 2 virtual\n1 1\n2 2\n\n1 1\n2 2\nv: 2 1\n");
    CHECK_FALSE(b.singular);
    REQUIRE(b.virt);
    CHECK(b.virt->v(1) == 2);
    auto s = parse_bundle("# comment\nsemiquandle 1 singular\n1\n\n1\n\n1\n\n1\n");
    CHECK(s.singular);
}

TEST_CASE("parse errors carry line numbers")
{
    try {
        parse_bundle("semiquandle 2\n1 1\n2 x\n\n1 1\n2 2\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(parse_bundle("semiquandle 2\n1 1\n2 2\n"), ParseError);
    CHECK_THROWS_AS(parse_bundle("quandle 2\n"), ParseError);
    CHECK_THROWS(parse_bundle("semiquandle 2\n1 3\n2 2\n\n1 1\n2 2\n"));
    CHECK_THROWS(parse_bundle("semiquandle 2 virtual\n1 1\n2 2\n\n1 1\n2 2\nv: 1 1\n"));
}

TEST_CASE("bundle streams split on percent lines and ignore the count line")
{
    auto a = format_bundle({named::order4_semiquandle(), std::nullopt, std::nullopt});
    auto b = format_bundle(named::order3_virtual());
    auto all = parse_bundle_stream(a + "%\n" + b + "count: 2\n");
    REQUIRE(all.size() == 2);
    CHECK(all[0].table == named::order4_semiquandle());
    CHECK(all[1].virt);
}
