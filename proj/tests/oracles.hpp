#pragma once

// Brute-force reference implementations. They read raw rows and never call
// the library's solver, checker, closure or enumeration code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <set>
#include <vector>

#include "sq/algebra.hpp"
#include "sq/present.hpp"

namespace oracle {

using Rows = std::vector<std::vector<int>>;

struct Ops {
    int n = 0;
    Rows up, dn;
    std::optional<Rows> hup, hdn;
    std::vector<int> v; // empty = identity
};

inline Ops from_bundle(const sq::StructureBundle& b)
{
    Ops o;
    o.n = b.order();
    o.up = b.table.up.rows();
    o.dn = b.table.dn.rows();
    if (b.singular) {
        o.hup = b.singular->hup.rows();
        o.hdn = b.singular->hdn.rows();
    }
    if (b.virt)
        o.v = b.virt->v.images();
    return o;
}

inline int at(const Rows& t, int x, int y) { return t[x - 1][y - 1]; }

inline bool semiquandle_axioms(const Rows& U, const Rows& L)
{
    int n = static_cast<int>(U.size());
    auto up = [&](int x, int y) { return at(U, x, y); };
    auto dn = [&](int x, int y) { return at(L, x, y); };
    for (int y = 1; y <= n; ++y) {
        std::set<int> a, b;
        for (int x = 1; x <= n; ++x) {
            a.insert(up(x, y));
            b.insert(dn(x, y));
        }
        if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
            return false;
    }
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            if ((dn(x, y) == y) != (up(y, x) == x))
                return false;
            if (up(dn(x, y), up(y, x)) != x || dn(up(x, y), dn(y, x)) != x)
                return false;
            for (int z = 1; z <= n; ++z) {
                if (up(up(x, y), z) != up(up(x, dn(z, y)), up(y, z)))
                    return false;
                if (up(dn(y, x), dn(z, up(x, y))) != dn(up(y, z), up(x, dn(z, y))))
                    return false;
                if (dn(dn(z, up(x, y)), dn(y, x)) != dn(dn(z, y), x))
                    return false;
            }
        }
    return true;
}

// Hat axioms that only involve hup (plus up and dn).
inline bool hup_only_axioms(const Rows& U, const Rows& L, const Rows& HU)
{
    int n = static_cast<int>(U.size());
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y)
            for (int z = 1; z <= n; ++z)
                if (at(HU, at(U, x, y), z) != at(U, at(HU, x, at(L, z, y)), at(U, y, z)))
                    return false;
    return true;
}

inline bool singular_axioms(const Rows& U, const Rows& L, const Rows& HU, const Rows& HL)
{
    int n = static_cast<int>(U.size());
    auto up = [&](int x, int y) { return at(U, x, y); };
    auto dn = [&](int x, int y) { return at(L, x, y); };
    auto hup = [&](int x, int y) { return at(HU, x, y); };
    auto hdn = [&](int x, int y) { return at(HL, x, y); };
    for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
            if (hup(dn(y, x), up(x, y)) != up(hdn(y, x), hup(x, y)))
                return false;
            if (hdn(up(x, y), dn(y, x)) != dn(hup(x, y), hdn(y, x)))
                return false;
            for (int z = 1; z <= n; ++z) {
                if (hup(up(x, y), z) != up(hup(x, dn(z, y)), up(y, z)))
                    return false;
                if (up(dn(y, x), hdn(z, up(x, y))) != dn(up(y, z), hup(x, dn(z, y))))
                    return false;
                if (dn(hdn(z, up(x, y)), dn(y, x)) != hdn(dn(z, y), x))
                    return false;
            }
        }
    return true;
}

inline int apply(const Ops& o, sq::RelationKind k, int a, int b)
{
    switch (k) {
    case sq::RelationKind::Up: return at(o.up, a, b);
    case sq::RelationKind::Dn: return at(o.dn, a, b);
    case sq::RelationKind::HUp: return at(*o.hup, a, b);
    case sq::RelationKind::HDn: return at(*o.hdn, a, b);
    case sq::RelationKind::V: return o.v.empty() ? a : o.v[a - 1];
    }
    return 0;
}

inline int closure_size(const Ops& o, std::set<int> s)
{
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(s.begin(), s.end());
        std::set<int> add;
        for (int x : cur) {
            if (!o.v.empty())
                add.insert(o.v[x - 1]);
            for (int y : cur) {
                add.insert(at(o.up, x, y));
                add.insert(at(o.dn, x, y));
                if (o.hup) {
                    add.insert(at(*o.hup, x, y));
                    add.insert(at(*o.hdn, x, y));
                }
            }
        }
        for (int a : add)
            if (s.insert(a).second)
                grew = true;
    }
    return static_cast<int>(s.size());
}

// Every assignment generators -> 1..n, in odometer order.
inline sq::InvariantResult invariant(const sq::Presentation& p, const sq::StructureBundle& b)
{
    Ops o = from_bundle(b);
    std::size_t g = p.generators.size();
    std::vector<int> val(g, 1);
    sq::InvariantResult r;
    while (true) {
        bool ok = true;
        for (const auto& rel : p.relations)
            if (apply(o, rel.kind, val[rel.a], rel.b >= 0 ? val[rel.b] : 0) != val[rel.c]) {
                ok = false;
                break;
            }
        if (ok) {
            ++r.count;
            r.image_sizes[closure_size(o, std::set<int>(val.begin(), val.end()))]++;
        }
        std::size_t i = 0;
        while (i < g && val[i] == o.n)
            val[i++] = 1;
        if (i == g)
            break;
        ++val[i];
    }
    r.polynomial = sq::polynomial_text(r.image_sizes);
    return r;
}

// Random relations over `gens` generators; hat kinds only when `hats`.
inline sq::Presentation random_presentation(std::mt19937_64& rng, int gens, bool hats)
{
    using sq::RelationKind;
    sq::Presentation p;
    for (int i = 0; i < gens; ++i)
        p.generators.push_back("g" + std::to_string(i));
    auto pick = [&](unsigned n) { return static_cast<int>(rng() % n); };
    int rels = pick(static_cast<unsigned>(gens + 2));
    const RelationKind kinds[] = {RelationKind::Up, RelationKind::Dn, RelationKind::V, RelationKind::HUp,
                                  RelationKind::HDn};
    for (int i = 0; i < rels; ++i) {
        RelationKind kind = kinds[pick(hats ? 5u : 3u)];
        int a = pick(static_cast<unsigned>(gens)), b = pick(static_cast<unsigned>(gens)),
            c = pick(static_cast<unsigned>(gens));
        p.relations.push_back({kind, a, kind == RelationKind::V ? -1 : b, c});
    }
    return p;
}

inline std::vector<std::vector<int>> permutations(int n)
{
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    std::vector<std::vector<int>> out;
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline std::set<std::vector<int>> automorphisms(const sq::StructureBundle& b)
{
    Ops o = from_bundle(b);
    std::set<std::vector<int>> out;
    for (const auto& f : permutations(o.n)) {
        auto phi = [&](int x) { return f[x - 1]; };
        bool ok = true;
        for (int x = 1; x <= o.n && ok; ++x) {
            if (!o.v.empty() && phi(o.v[x - 1]) != o.v[phi(x) - 1])
                ok = false;
            for (int y = 1; y <= o.n && ok; ++y) {
                ok = phi(at(o.up, x, y)) == at(o.up, phi(x), phi(y)) && phi(at(o.dn, x, y)) == at(o.dn, phi(x), phi(y));
                if (ok && o.hup)
                    ok = phi(at(*o.hup, x, y)) == at(*o.hup, phi(x), phi(y))
                        && phi(at(*o.hdn, x, y)) == at(*o.hdn, phi(x), phi(y));
            }
        }
        if (ok)
            out.insert(f);
    }
    return out;
}

} // namespace oracle
