#include <doctest.h>

#include "oracles.hpp"
#include "sq/algebra.hpp"
#include "sq/named.hpp"
#include "sq/table_io.hpp"

using namespace sq;

namespace {

StructureBundle plain(const SemiquandleTable& t) { return {t, std::nullopt, std::nullopt}; }

} // namespace

TEST_CASE("M_T satisfies the semiquandle axioms")
{
    auto t = named::order4_semiquandle();
    CHECK(check_semiquandle(t).ok());
    CHECK(oracle::semiquandle_axioms(t.up.rows(), t.dn.rows()));
}

TEST_CASE("every single-entry corruption of M_T's first row is rejected with a witness")
{
    auto t = named::order4_semiquandle();
    RawTable up = t.up.rows(), dn = t.dn.rows();
    int rejected = 0;
    for (int block = 0; block < 2; ++block)
        for (int col = 0; col < 4; ++col)
            for (int value = 1; value <= 4; ++value) {
                RawTable u = up, d = dn;
                RawTable& target = block == 0 ? u : d;
                if (target[0][col] == value)
                    continue;
                target[0][col] = value;
                auto r = check_semiquandle(u, d);
                CHECK_FALSE(r.ok());
                REQUIRE_FALSE(r.violations.empty());
                CHECK_FALSE(r.violations.front().witness.empty());
                CHECK_FALSE(oracle::semiquandle_axioms(u, d));
                ++rejected;
            }
    CHECK(rejected == 24);
}

TEST_CASE("axiom 0 witness names the second row holding a repeated value")
{
    RawTable up = named::order4_semiquandle().up.rows();
    RawTable dn = named::order4_semiquandle().dn.rows();
    up[0][0] = 2; // column 1 now reads 2,2,4,3
    auto r = check_semiquandle(up, dn);
    REQUIRE_FALSE(r.violations.empty());
    CHECK(r.violations.front().axiom == Axiom::ColumnUp);
    CHECK(r.violations.front().witness == std::vector<int>{2, 1});
}

TEST_CASE("malformed tables are structural errors, not axiom violations")
{
    auto r = check_semiquandle(RawTable{{1, 2}, {2}}, RawTable{{1, 2}, {2, 1}});
    CHECK_FALSE(r.structural.empty());
    auto r2 = check_semiquandle(RawTable{{1, 3}, {2, 1}}, RawTable{{1, 2}, {2, 1}});
    CHECK_FALSE(r2.structural.empty());
}

TEST_CASE("constant action by (132) has the expected matrix")
{
    auto t = make_constant_action(3, Permutation::from_cycles("(132)", 3));
    CHECK(t.up.rows() == RawTable{{3, 3, 3}, {1, 1, 1}, {2, 2, 2}});
    CHECK(t.dn.rows() == RawTable{{2, 2, 2}, {3, 3, 3}, {1, 1, 1}});
    CHECK(check_semiquandle(t).ok());
    CHECK(t == named::constant_action_132());
}

TEST_CASE("constant actions")
{
    auto id = make_constant_action(3, Permutation::identity(3));
    CHECK(id.up.rows() == RawTable{{1, 1, 1}, {2, 2, 2}, {3, 3, 3}});
    CHECK(id.up == id.dn);
    auto swap = make_constant_action(2, Permutation::from_cycles("(12)", 2));
    CHECK(swap.up.rows() == RawTable{{2, 2}, {1, 1}});
    CHECK(swap.up == swap.dn);
    CHECK(check_semiquandle(swap).ok());
    for (const auto& s : all_permutations(4))
        CHECK(check_semiquandle(make_constant_action(4, s)).ok());
}

TEST_CASE("operator singular structure on X_(132) has identity-row hats")
{
    auto b = named::constant_action_132_operator();
    REQUIRE(b.singular);
    CHECK(b.singular->hup.rows() == RawTable{{1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
    CHECK(b.singular->hdn.rows() == RawTable{{1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
    CHECK(check_singular(b).ok());
}

TEST_CASE("flat and operator structures are singular extensions of valid tables")
{
    for (const auto& t : {named::order4_semiquandle(), named::constant_action_132(), make_trivial(2)}) {
        StructureBundle flat{t, make_flat_singular(t), std::nullopt};
        StructureBundle op{t, make_operator_singular(t), std::nullopt};
        CHECK(check_singular(flat).ok());
        CHECK(check_singular(op).ok());
        CHECK(flat.singular->hup == t.up);
    }
    CHECK(make_operator_singular(make_trivial(2)).hup.rows() == RawTable{{1, 2}, {1, 2}});
}

TEST_CASE("the order-4 singular structure passes the semiquandle and singular checks")
{
    auto b = named::order4_singular();
    CHECK(check_semiquandle(b.table).ok());
    CHECK(check_singular(b).ok());
    CHECK(oracle::singular_axioms(b.table.up.rows(), b.table.dn.rows(), b.singular->hup.rows(),
                                  b.singular->hdn.rows()));
}

TEST_CASE("M_{T,S} with v = (13) is a virtual structure")
{
    auto b = named::order3_virtual();
    CHECK(b.table.up.rows() == RawTable{{1, 3, 1}, {2, 2, 2}, {3, 1, 3}});
    CHECK(b.table.dn == b.table.up);
    CHECK(check_semiquandle(b.table).ok());
    CHECK(check_virtual(b).ok());
    CHECK(check_bundle(b).ok());
    StructureBundle bad = b;
    bad.virt = VirtualExtension{Permutation::from_cycles("(12)", 3)};
    CHECK_FALSE(check_virtual(bad).ok());
}

TEST_CASE("trivial hats are not a singular structure in general")
{
    StructureBundle b{named::order4_semiquandle(), make_trivial_singular(4), std::nullopt};
    CHECK_FALSE(check_singular(b).ok());
    StructureBundle ok{named::order3_virtual().table, make_trivial_singular(3), std::nullopt};
    CHECK(check_singular(ok).ok());
}

TEST_CASE("every axiom holds pointwise for every enumerated-by-hand constant action up to order 4")
{
    for (int n = 1; n <= 4; ++n)
        for (const auto& s : all_permutations(n)) {
            auto t = make_constant_action(n, s);
            CHECK(oracle::semiquandle_axioms(t.up.rows(), t.dn.rows()));
        }
}

TEST_CASE("column inverses round-trip")
{
    StructureBundle b = plain(named::order4_semiquandle());
    for (int x = 1; x <= 4; ++x)
        for (int y = 1; y <= 4; ++y) {
            CHECK(eval(b, OpKind::UpInv, eval(b, OpKind::Up, x, y), y) == x);
            CHECK(eval(b, OpKind::DnInv, eval(b, OpKind::Dn, x, y), y) == x);
        }
}

TEST_CASE("eval is strict about missing extensions")
{
    StructureBundle b = plain(named::order4_semiquandle());
    CHECK_THROWS_AS(eval(b, OpKind::HUp, 1, 2), MissingExtension);
    CHECK_THROWS_AS(eval(b, OpKind::V, 1), MissingExtension);
}

TEST_CASE("subclosure is idempotent, monotone and agrees with the oracle")
{
    for (const auto& b : {plain(named::order4_semiquandle()), named::order4_singular(), named::order3_virtual(),
                          named::constant_action_132_operator()}) {
        auto o = oracle::from_bundle(b);
        int n = b.order();
        for (ElementSet mask = 0; mask < (1u << n); ++mask) {
            auto c = subclosure(b, mask);
            CHECK(subclosure(b, c) == c);
            CHECK((c & mask) == mask);
            auto s = from_mask(mask);
            CHECK(std::popcount(c) == (s.empty() ? 0 : oracle::closure_size(o, s)));
            for (int e = 1; e <= n; ++e)
                CHECK((subclosure(b, mask | (1u << (e - 1))) & c) == c);
        }
    }
}

TEST_CASE("automorphisms agree with brute force and form a group")
{
    auto check = [](const StructureBundle& b) {
        auto autos = automorphisms(b);
        std::set<std::vector<int>> got;
        for (const auto& p : autos)
            got.insert(p.images());
        CHECK(got == oracle::automorphisms(b));
        CHECK(got.count(Permutation::identity(b.order()).images()));
        for (const auto& p : autos) {
            CHECK(got.count(p.inverse().images()));
            for (const auto& q : autos)
                CHECK(got.count((p * q).images()));
            StructureBundle with_v = b;
            with_v.virt = VirtualExtension{p};
            CHECK(check_virtual(with_v).ok());
        }
    };
    check(plain(named::order4_semiquandle()));
    check(named::order4_singular());
    check(named::order3_virtual());
    check(plain(make_trivial(3)));
    CHECK(automorphisms(plain(make_trivial(3))).size() == 6);
}

TEST_CASE("automorphisms of a constant action are the centralizer of sigma")
{
    auto autos = automorphisms(plain(named::constant_action_132()));
    std::set<std::string> got;
    for (const auto& p : autos)
        got.insert(p.to_cycles());
    CHECK(got == std::set<std::string>{"()", "(123)", "(132)"});
    Permutation s = Permutation::from_cycles("(1234)", 4);
    auto c = automorphisms(plain(make_constant_action(4, s)));
    std::size_t centralizer = 0;
    for (const auto& p : all_permutations(4))
        if (p * s == s * p)
            ++centralizer;
    CHECK(c.size() == centralizer);
}

TEST_CASE("permutation cycle notation")
{
    auto p = Permutation::from_cycles("(132)", 3);
    CHECK(p(1) == 3);
    CHECK(p(3) == 2);
    CHECK(p(2) == 1);
    CHECK(p.to_cycles() == "(132)");
    CHECK(Permutation::from_cycles("(12)(34)", 4).to_cycles() == "(12)(34)");
    CHECK(Permutation::from_cycles("id", 3).is_identity());
    CHECK((p * p.inverse()).is_identity());
    CHECK_THROWS_AS(Permutation::from_cycles("(11)", 3), StructureError);
}
