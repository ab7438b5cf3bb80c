#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "sq/enumerate.hpp"
#include "sq/named.hpp"

using namespace sq;

namespace {

using Pair = std::pair<oracle::Rows, oracle::Rows>;

std::set<Pair> as_rows(const std::vector<SemiquandleTable>& tables)
{
    std::set<Pair> out;
    for (const auto& t : tables)
        out.insert({t.up.rows(), t.dn.rows()});
    return out;
}

// Every n x n table whose columns are permutations.
std::vector<oracle::Rows> column_permutation_tables(int n)
{
    auto perms = oracle::permutations(n);
    std::vector<oracle::Rows> out;
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    while (true) {
        oracle::Rows t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
        for (int col = 0; col < n; ++col)
            for (int row = 0; row < n; ++row)
                t[row][col] = perms[pick[col]][row];
        out.push_back(t);
        std::size_t i = 0;
        while (i < pick.size() && pick[i] + 1 == perms.size())
            pick[i++] = 0;
        if (i == pick.size())
            break;
        ++pick[i];
    }
    return out;
}

std::vector<oracle::Rows> all_tables(int n)
{
    std::vector<oracle::Rows> out;
    int cells = n * n;
    std::vector<int> v(static_cast<std::size_t>(cells), 1);
    while (true) {
        oracle::Rows t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
        for (int i = 0; i < cells; ++i)
            t[i / n][i % n] = v[i];
        out.push_back(t);
        int i = 0;
        while (i < cells && v[i] == n)
            v[i++] = 1;
        if (i == cells)
            break;
        ++v[i];
    }
    return out;
}

oracle::Rows relabel_rows(const oracle::Rows& t, const std::vector<int>& f)
{
    int n = static_cast<int>(t.size());
    oracle::Rows out(t.size(), std::vector<int>(t.size()));
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y)
            out[f[x - 1] - 1][f[y - 1] - 1] = f[t[x - 1][y - 1] - 1];
    return out;
}

std::size_t orbit_count(const std::set<Pair>& tables, int n)
{
    std::set<Pair> seen;
    std::size_t classes = 0;
    for (const auto& t : tables) {
        if (seen.count(t))
            continue;
        ++classes;
        for (const auto& f : oracle::permutations(n))
            seen.insert({relabel_rows(t.first, f), relabel_rows(t.second, f)});
    }
    return classes;
}

} // namespace

TEST_CASE("order 2 agrees with the naive 256-candidate filter")
{
    std::set<Pair> naive;
    auto tables = all_tables(2);
    REQUIRE(tables.size() * tables.size() == 256);
    for (const auto& u : tables)
        for (const auto& d : tables)
            if (oracle::semiquandle_axioms(u, d))
                naive.insert({u, d});
    auto got = enumerate_semiquandles(2, false);
    CHECK(as_rows(got) == naive);
    CHECK(got.size() == 2);
    CHECK(std::is_sorted(got.begin(), got.end()));
}

TEST_CASE("order 3 agrees with the column-permutation filter and contains every constant action")
{
    std::set<Pair> naive;
    auto tables = column_permutation_tables(3);
    REQUIRE(tables.size() == 216);
    for (const auto& u : tables)
        for (const auto& d : tables)
            if (oracle::semiquandle_axioms(u, d))
                naive.insert({u, d});
    auto got = as_rows(enumerate_semiquandles(3, false));
    CHECK(got == naive);
    for (const auto& s : all_permutations(3)) {
        auto t = make_constant_action(3, s);
        CHECK(got.count({t.up.rows(), t.dn.rows()}));
    }
    auto iso = enumerate_semiquandles(3, true);
    CHECK(iso.size() == orbit_count(got, 3));
    CHECK(iso.size() == 5);
}

TEST_CASE("isomorphism classes are canonical and pairwise non-isomorphic")
{
    for (int n = 1; n <= 3; ++n) {
        auto all = enumerate_semiquandles(n, false);
        auto iso = enumerate_semiquandles(n, true);
        std::set<SemiquandleTable> canon;
        for (const auto& t : all)
            canon.insert(canonical_form(t));
        CHECK(canon.size() == iso.size());
        for (const auto& t : iso)
            CHECK(canonical_form(t) == t);
        for (const auto& t : all)
            for (const auto& p : all_permutations(n))
                CHECK(canonical_form(relabel(t, p)) == canonical_form(t));
    }
}

TEST_CASE("enumeration is independent of the job count")
{
    CHECK(enumerate_semiquandles(3, false, {0, 1}) == enumerate_semiquandles(3, false, {0, 4}));
}

TEST_CASE("an exhausted node budget is reported")
{
    CHECK_THROWS_AS(enumerate_semiquandles(4, false, {10, 1}), BudgetExceeded);
}

TEST_CASE("singular extensions of X_(132) agree with a prefiltered brute force")
{
    auto t = named::constant_action_132();
    auto U = t.up.rows(), L = t.dn.rows();
    auto tables = all_tables(3);
    std::vector<oracle::Rows> hups;
    for (const auto& h : tables)
        if (oracle::hup_only_axioms(U, L, h))
            hups.push_back(h);
    std::set<Pair> naive;
    for (const auto& h : hups)
        for (const auto& d : tables)
            if (oracle::singular_axioms(U, L, h, d))
                naive.insert({h, d});
    auto got = enumerate_singular_extensions(t);
    std::set<Pair> rows;
    for (const auto& e : got)
        rows.insert({e.hup.rows(), e.hdn.rows()});
    CHECK(rows == naive);
    CHECK(got.size() == 27);
    auto op = make_operator_singular(t);
    CHECK(rows.count({op.hup.rows(), op.hdn.rows()}));

    auto reps = enumerate_singular_extensions(t, true);
    auto autos = automorphisms(StructureBundle{t, std::nullopt, std::nullopt});
    std::set<SingularExtension> covered;
    for (const auto& r : reps)
        for (const auto& p : autos)
            covered.insert(relabel(r, p));
    CHECK(covered.size() == got.size());
}

TEST_CASE("virtual structures are automorphisms, reduced by conjugacy on request")
{
    StructureBundle mt{named::order4_semiquandle(), std::nullopt, std::nullopt};
    auto all = enumerate_virtual_structures(mt, false);
    CHECK(all == automorphisms(mt));
    CHECK(all.size() == 2);
    CHECK(enumerate_virtual_structures(mt, true).size() == 2);

    StructureBundle trivial{make_trivial(3), std::nullopt, std::nullopt};
    auto classes = enumerate_virtual_structures(trivial, true);
    CHECK(classes.size() == 3);
    for (const auto& v : enumerate_virtual_structures(trivial, false)) {
        StructureBundle b = trivial;
        b.virt = VirtualExtension{v};
        CHECK(check_virtual(b).ok());
    }
}
