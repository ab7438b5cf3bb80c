#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sq/diagram.hpp"
#include "sq/named.hpp"
#include "sq/present.hpp"

using namespace sq;

namespace {

StructureBundle mt() { return {named::order4_semiquandle(), std::nullopt, std::nullopt}; }

std::vector<StructureBundle> bundles()
{
    return {mt(), named::constant_action_132_operator(), named::order3_virtual(), named::order4_singular(),
            {make_trivial(2), make_operator_singular(make_trivial(2)), VirtualExtension{Permutation::from_cycles("(12)", 2)}}};
}

} // namespace

TEST_CASE("flat Kishino has 16 colorings by M_T")
{
    auto p = builtin_presentation("flat_kishino");
    CHECK(count_colorings(p, mt()) == 16);
    CHECK(oracle::invariant(p, mt()).count == 16);
    CHECK(count_colorings(p, mt()) == count_colorings(extract_relations(builtin_code("flat_kishino")), mt()));
}

TEST_CASE("the two-component Kishino variant gives 4")
{
    auto p = builtin_presentation("flat_kishino_two_component");
    CHECK(count_colorings(p, mt()) == 4);
    CHECK(oracle::invariant(p, mt()).count == 4);
}

TEST_CASE("the unknot has n colorings")
{
    CHECK(count_colorings(builtin_presentation("unknot"), mt()) == 4);
    auto r = enhanced_invariant(builtin_presentation("unknot"), mt());
    CHECK(r.polynomial == "2z + 2z^4");
    CHECK(r == oracle::invariant(builtin_presentation("unknot"), mt()));
    CHECK(count_colorings(builtin_presentation("unlink(3)"), mt()) == 64);
}

TEST_CASE("triple crazy trefoil: the hats force sigma to fix both free labels")
{
    // Under a constant action with the operator structure hup(x,y) = hdn(x,y) = y,
    // the relations give b = c, d = a, sigma(a) = a and sigma(b) = b, so the
    // count is the square of the number of fixed points of sigma.
    auto p = builtin_presentation("triple_crazy_trefoil");
    for (int n = 1; n <= 4; ++n)
        for (const auto& s : all_permutations(n)) {
            auto t = make_constant_action(n, s);
            StructureBundle b{t, make_operator_singular(t), std::nullopt};
            std::uint64_t fixed = 0;
            for (int x = 1; x <= n; ++x)
                fixed += s(x) == x;
            CHECK(count_colorings(p, b) == fixed * fixed);
        }
    auto r = enhanced_invariant(p, named::constant_action_132_operator());
    CHECK(r.count == 0);
    CHECK(r.polynomial == "0");
}

TEST_CASE("SU1 has nine colorings, each generating all of X_(132)")
{
    auto b = named::constant_action_132_operator();
    auto p = builtin_presentation("singular_unknot_1");
    auto all = all_colorings(p, b);
    CHECK(all.size() == 9);
    auto o = oracle::from_bundle(b);
    for (const auto& c : all) {
        std::set<int> s(c.begin(), c.end());
        CHECK(subclosure(b, s).size() == 3);
        CHECK(oracle::closure_size(o, s) == 3);
    }
    CHECK(enhanced_invariant(p, b).polynomial == "9z^3");
    CHECK(enhanced_invariant(extract_relations(builtin_code("singular_unknot_1")), b).polynomial == "9z^3");
}

TEST_CASE("solver agrees with exhaustive assignment on the built-in presentations")
{
    for (const auto& name : {"flat_kishino", "flat_kishino_two_component", "triple_crazy_trefoil", "singular_unknot_1",
                             "unknot", "unlink(2)"}) {
        auto p = builtin_presentation(name);
        for (const auto& b : bundles()) {
            if (p.uses_hat() && !b.singular)
                continue;
            CHECK_MESSAGE(enhanced_invariant(p, b) == oracle::invariant(p, b), name);
        }
    }
}

TEST_CASE("solver agrees with exhaustive assignment on random presentations")
{
    std::mt19937_64 rng(20240601);
    auto bs = bundles();
    int checked = 0;
    while (checked < 50) {
        const auto& b = bs[rng() % bs.size()];
        int n = b.order();
        int gens = 1 + static_cast<int>(rng() % 8);
        double space = std::pow(n, gens);
        if (space > 1e6)
            continue;
        auto p = oracle::random_presentation(rng, gens, b.singular.has_value());
        CHECK_MESSAGE(enhanced_invariant(p, b) == oracle::invariant(p, b), p.to_text());
        ++checked;
    }
}

TEST_CASE("job count does not change results")
{
    auto p = builtin_presentation("flat_kishino");
    CHECK(enhanced_invariant(p, mt(), {1}) == enhanced_invariant(p, mt(), {4}));
}

TEST_CASE("hat relations need a singular extension")
{
    CHECK_THROWS_AS(count_colorings(builtin_presentation("singular_unknot_1"), mt()), MissingExtension);
}

TEST_CASE("presentation text round-trips")
{
    auto p = parse_presentation("up(a,c)=b; dn(c,a)=d\nv(d)=a");
    CHECK(p.generators == std::vector<std::string>{"a", "c", "b", "d"});
    CHECK(p.relations.size() == 3);
    CHECK(p.uses_virtual());
    CHECK_FALSE(p.uses_hat());
    auto q = parse_presentation(p.to_text());
    CHECK(q.generators == p.generators);
    CHECK(q.relations == p.relations);
    CHECK_THROWS_AS(parse_presentation("up(a)=b"), ParseError);
    CHECK_THROWS_AS(parse_presentation("foo(a,b)=c"), ParseError);
}

TEST_CASE("polynomial text")
{
    CHECK(polynomial_text({}) == "0");
    CHECK(polynomial_text({{1, 1}}) == "z");
    CHECK(polynomial_text({{3, 9}}) == "9z^3");
    CHECK(polynomial_text({{4, 2}, {1, 2}}) == "2z + 2z^4");
}
