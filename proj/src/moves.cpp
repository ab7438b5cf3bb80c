#include "sq/moves.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "sq/errors.hpp"

namespace sq {

std::string move_name(MoveId id)
{
    switch (id) {
    case MoveId::FR1: return "FR1";
    case MoveId::FR2: return "FR2";
    case MoveId::FR3: return "FR3";
    case MoveId::VR1: return "VR1";
    case MoveId::VR2: return "VR2";
    case MoveId::VR3: return "VR3";
    case MoveId::Mixed: return "Mixed";
    case MoveId::SR2: return "SR2";
    case MoveId::SR3: return "SR3";
    case MoveId::VSR3: return "VSR3";
    case MoveId::CR1: return "CR1";
    case MoveId::CR2: return "CR2";
    case MoveId::CR3: return "CR3";
    case MoveId::MixedClassical: return "MixedClassical";
    case MoveId::SR3Derived: return "SR3Derived";
    case MoveId::SR2Reverse: return "SR2Reverse";
    }
    return "?";
}

std::string describe(const MoveSpec& m)
{
    std::ostringstream os;
    os << move_name(m.id);
    switch (m.direction) {
    case MoveDirection::Insert: os << " insert"; break;
    case MoveDirection::Delete: os << " delete"; break;
    case MoveDirection::Rearrange: os << " apply"; break;
    }
    os << " [";
    for (std::size_t i = 0; i < m.site.size(); ++i)
        os << (i ? "," : "") << m.site[i];
    os << "]";
    if (m.direction == MoveDirection::Insert)
        os << " variant " << m.variant;
    return os.str();
}

namespace {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

struct Seg {
    int comp;
    int start;
};

struct Pos {
    int comp;
    int idx;
    friend auto operator<=>(const Pos&, const Pos&) = default;
};

int length(const PassCode& code, int comp) { return static_cast<int>(code.components[comp].size()); }

Pos first_pos(const Seg& s) { return {s.comp, s.start}; }
Pos second_pos(const PassCode& code, const Seg& s) { return {s.comp, (s.start + 1) % length(code, s.comp)}; }
const Pass& at(const PassCode& code, Pos p) { return code.components[p.comp][p.idx]; }

bool valid_segment(const PassCode& code, const Seg& s)
{
    if (s.comp < 0 || s.comp >= static_cast<int>(code.components.size()))
        return false;
    int len = length(code, s.comp);
    return len >= 2 && s.start >= 0 && s.start < len;
}

Pass make_pass(CrossingKind kind, int id, bool sup, bool over)
{
    switch (kind) {
    case CrossingKind::Flat:
    case CrossingKind::Singular: return {kind, id, sup ? Role::Sup : Role::Sub, 0};
    case CrossingKind::Virtual: return {kind, id, sup ? Role::VPlus : Role::VMinus, 0};
    case CrossingKind::Classical:
        if (over)
            return {kind, id, Role::Over, sup ? -1 : 1};
        return {kind, id, Role::Under, sup ? 1 : -1};
    }
    return {kind, id, Role::Sup, 0};
}

Pass partner(const Pass& p) { return make_pass(p.kind, p.id, !sup_like(p), p.role == Role::Under); }

int next_id(const PassCode& code, CrossingKind kind)
{
    int best = 0;
    for (const auto& comp : code.components)
        for (const auto& p : comp)
            if (p.kind == kind)
                best = std::max(best, p.id);
    return best + 1;
}

bool id_used(const PassCode& code, CrossingKind kind, int id)
{
    for (const auto& comp : code.components)
        for (const auto& p : comp)
            if (p.kind == kind && p.id == id)
                return true;
    return false;
}

struct Block {
    int comp;
    int gap;
    std::vector<Pass> passes;
};

void check_gap(const PassCode& code, int comp, int gap)
{
    if (comp < 0 || comp >= static_cast<int>(code.components.size()))
        throw InvalidCode("move site names component " + std::to_string(comp) + " which does not exist");
    if (gap < 0 || gap > length(code, comp))
        throw InvalidCode("move site gap " + std::to_string(gap) + " is out of range");
}

// Inserts blocks before the pass at each block's gap; blocks sharing a gap
// keep their order. Returns the start index of every block.
std::vector<int> insert_blocks(PassCode& code, const std::vector<Block>& blocks)
{
    std::vector<int> starts(blocks.size(), 0);
    for (int c = 0; c < static_cast<int>(code.components.size()); ++c) {
        const auto& old = code.components[c];
        int len = static_cast<int>(old.size());
        std::vector<Pass> out;
        for (int i = 0; i <= len; ++i) {
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                if (blocks[b].comp != c || blocks[b].gap != i)
                    continue;
                starts[b] = static_cast<int>(out.size());
                out.insert(out.end(), blocks[b].passes.begin(), blocks[b].passes.end());
            }
            if (i < len)
                out.push_back(old[i]);
        }
        code.components[c] = std::move(out);
    }
    return starts;
}

PassCode remove_positions(const PassCode& code, const std::set<Pos>& gone)
{
    PassCode out;
    for (int c = 0; c < static_cast<int>(code.components.size()); ++c) {
        std::vector<Pass> comp;
        for (int i = 0; i < length(code, c); ++i)
            if (!gone.count({c, i}))
                comp.push_back(code.components[c][i]);
        out.components.push_back(std::move(comp));
    }
    return out;
}

// Index that the surviving pass `j` of component `comp` takes after
// removal; 0 when the component is emptied.
int mapped_index(const PassCode& code, const std::set<Pos>& gone, int comp, int j)
{
    int removed_before = 0;
    int removed_total = 0;
    for (const auto& p : gone) {
        if (p.comp != comp)
            continue;
        ++removed_total;
        if (p.idx < j)
            ++removed_before;
    }
    if (removed_total == length(code, comp))
        return 0;
    return j - removed_before;
}

CrossingKind kind_of(MoveId id)
{
    switch (id) {
    case MoveId::FR1:
    case MoveId::FR2: return CrossingKind::Flat;
    case MoveId::VR1:
    case MoveId::VR2: return CrossingKind::Virtual;
    case MoveId::CR1:
    case MoveId::CR2: return CrossingKind::Classical;
    default: throw InvalidCode(move_name(id) + " does not insert or delete crossings");
    }
}

bool is_kink_move(MoveId id) { return id == MoveId::FR1 || id == MoveId::VR1 || id == MoveId::CR1; }
bool is_bigon_delete_move(MoveId id) { return id == MoveId::FR2 || id == MoveId::VR2 || id == MoveId::CR2; }
bool is_bigon_swap_move(MoveId id) { return id == MoveId::SR2 || id == MoveId::SR2Reverse; }

std::optional<MoveId> kink_move(const PassCode& code, const Seg& s)
{
    if (!valid_segment(code, s))
        return std::nullopt;
    const Pass& a = at(code, first_pos(s));
    const Pass& b = at(code, second_pos(code, s));
    if (key(a) != key(b))
        return std::nullopt;
    switch (a.kind) {
    case CrossingKind::Flat: return MoveId::FR1;
    case CrossingKind::Virtual: return MoveId::VR1;
    case CrossingKind::Classical: return MoveId::CR1;
    case CrossingKind::Singular: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<MoveId> bigon_move(const PassCode& code, const Seg& sa, const Seg& sb)
{
    if (!valid_segment(code, sa) || !valid_segment(code, sb))
        return std::nullopt;
    std::set<Pos> positions{first_pos(sa), second_pos(code, sa), first_pos(sb), second_pos(code, sb)};
    if (positions.size() != 4)
        return std::nullopt;
    const Pass& a0 = at(code, first_pos(sa));
    const Pass& a1 = at(code, second_pos(code, sa));
    const Pass& b0 = at(code, first_pos(sb));
    const Pass& b1 = at(code, second_pos(code, sb));
    if (key(a0) == key(a1))
        return std::nullopt;
    bool direct = key(b0) == key(a0) && key(b1) == key(a1);
    bool reverse = key(b0) == key(a1) && key(b1) == key(a0);
    if (!direct && !reverse)
        return std::nullopt;
    if (sup_like(a0) == sup_like(a1))
        return std::nullopt;
    if (a0.kind == a1.kind) {
        switch (a0.kind) {
        case CrossingKind::Flat: return MoveId::FR2;
        case CrossingKind::Virtual: return MoveId::VR2;
        case CrossingKind::Classical:
            if ((a0.role == Role::Over) == (a1.role == Role::Over))
                return MoveId::CR2;
            return std::nullopt;
        case CrossingKind::Singular: return std::nullopt;
        }
    }
    auto fs = [](CrossingKind x, CrossingKind y) { return x == CrossingKind::Flat && y == CrossingKind::Singular; };
    if (fs(a0.kind, a1.kind) || fs(a1.kind, a0.kind))
        return direct ? MoveId::SR2 : MoveId::SR2Reverse;
    return std::nullopt;
}

// Local picture of three strands bounding a triangle: for each strand,
// which other strand it meets first and its geometric side at each of its
// two crossings.
struct TriState {
    std::array<int, 3> first{};
    std::array<std::array<bool, 3>, 3> sup{};

    int encode() const
    {
        int k = 0;
        for (int i = 0; i < 3; ++i) {
            int hi = i == 2 ? 1 : 2;
            k = k * 2 + (first[i] == hi ? 1 : 0);
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j)
                    k = k * 2 + (sup[i][j] ? 1 : 0);
        return k;
    }
};

std::vector<TriState> build_geometric_states()
{
    struct V2 {
        double x;
        double y;
    };
    auto cross = [](V2 a, V2 b) { return a.x * b.y - a.y * b.x; };
    const double h = std::sqrt(3.0) / 2.0;
    std::map<int, TriState> found;
    for (int moved = 0; moved < 2; ++moved)
        for (int mirror = 0; mirror < 2; ++mirror)
            for (int flips = 0; flips < 8; ++flips) {
                std::array<V2, 3> q{V2{0.0, moved ? 1.5 : 0.3}, V2{0.0, 0.0}, V2{1.0, 0.0}};
                std::array<V2, 3> d{V2{1.0, 0.0}, V2{0.5, h}, V2{-0.5, h}};
                for (int i = 0; i < 3; ++i) {
                    if (mirror) {
                        q[i].x = -q[i].x;
                        d[i].x = -d[i].x;
                    }
                    if (flips & (1 << i))
                        d[i] = {-d[i].x, -d[i].y};
                }
                TriState s;
                for (int i = 0; i < 3; ++i) {
                    double best = 0.0;
                    bool have = false;
                    for (int j = 0; j < 3; ++j) {
                        if (j == i)
                            continue;
                        V2 diff{q[j].x - q[i].x, q[j].y - q[i].y};
                        double t = cross(diff, d[j]) / cross(d[i], d[j]);
                        if (!have || t < best) {
                            best = t;
                            s.first[i] = j;
                            have = true;
                        }
                        s.sup[i][j] = cross(d[i], d[j]) < 0;
                    }
                }
                std::array<int, 3> perm{0, 1, 2};
                do {
                    TriState r;
                    for (int i = 0; i < 3; ++i) {
                        r.first[perm[i]] = perm[s.first[i]];
                        for (int j = 0; j < 3; ++j)
                            if (i != j)
                                r.sup[perm[i]][perm[j]] = s.sup[i][j];
                    }
                    found.emplace(r.encode(), r);
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
    std::vector<TriState> out;
    for (const auto& [k, s] : found)
        out.push_back(s);
    return out;
}

const std::vector<TriState>& geometric_states()
{
    static const std::vector<TriState> states = build_geometric_states();
    return states;
}

bool is_geometric(const TriState& s)
{
    static const std::set<int> keys = [] {
        std::set<int> k;
        for (const auto& st : geometric_states())
            k.insert(st.encode());
        return k;
    }();
    return keys.count(s.encode()) > 0;
}

enum class TriangleKind { None, Move, Forbidden };

struct TriangleMatch {
    TriangleKind kind = TriangleKind::None;
    MoveId id = MoveId::FR3;
};

// The hat-axiom orientation: X meets XY then XZ, sup at both; Y meets XY
// (sub) then YZ (sup); Z meets XZ then YZ, sub at both; XZ singular. Also
// accepted with every segment reversed.
bool primitive_sr3(const std::array<std::array<Pass, 2>, 3>& segs)
{
    std::array<int, 3> perm{0, 1, 2};
    do {
        const auto& X = segs[perm[0]];
        const auto& Y = segs[perm[1]];
        const auto& Z = segs[perm[2]];
        for (int rev = 0; rev < 2; ++rev) {
            int f = rev ? 1 : 0;
            int s = 1 - f;
            CrossingKey xy = key(X[f]);
            CrossingKey xz = key(X[s]);
            if (xz.kind != CrossingKind::Singular)
                continue;
            bool ok = sup_like(X[f]) && sup_like(X[s]) && key(Y[f]) == xy && !sup_like(Y[f]) && sup_like(Y[s])
                && key(Z[f]) == xz && key(Z[s]) == key(Y[s]) && !sup_like(Z[f]) && !sup_like(Z[s]);
            if (ok)
                return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

TriangleMatch triangle_move(const PassCode& code, const std::array<Seg, 3>& segs)
{
    TriangleMatch none;
    std::set<Pos> positions;
    std::array<std::array<Pass, 2>, 3> p;
    for (int i = 0; i < 3; ++i) {
        if (!valid_segment(code, segs[i]))
            return none;
        positions.insert(first_pos(segs[i]));
        positions.insert(second_pos(code, segs[i]));
        p[i] = {at(code, first_pos(segs[i])), at(code, second_pos(code, segs[i]))};
        if (key(p[i][0]) == key(p[i][1]))
            return none;
    }
    if (positions.size() != 6)
        return none;
    // crossing shared by strands i and j
    std::array<std::array<int, 3>, 3> shared{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j)
                continue;
            int found = -1;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if (key(p[i][a]) == key(p[j][b])) {
                        if (found >= 0)
                            return none;
                        found = a;
                    }
            if (found < 0)
                return none;
            shared[i][j] = found;
        }
    TriState st;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j)
                continue;
            if (shared[i][j] == 0)
                st.first[i] = j;
            st.sup[i][j] = sup_like(p[i][shared[i][j]]);
        }
    // the two crossings on each strand must be distinct strands' crossings
    for (int i = 0; i < 3; ++i) {
        int a = (i + 1) % 3;
        int b = (i + 2) % 3;
        if (shared[i][a] == shared[i][b])
            return none;
    }
    if (!is_geometric(st))
        return none;

    std::array<CrossingKind, 3> kinds{key(p[0][shared[0][1]]).kind, key(p[0][shared[0][2]]).kind,
                                      key(p[1][shared[1][2]]).kind};
    int nf = 0, ns = 0, nv = 0, nc = 0;
    for (auto k : kinds) {
        nf += k == CrossingKind::Flat;
        ns += k == CrossingKind::Singular;
        nv += k == CrossingKind::Virtual;
        nc += k == CrossingKind::Classical;
    }
    auto move = [](MoveId id) { return TriangleMatch{TriangleKind::Move, id}; };
    if (nf == 3)
        return move(MoveId::FR3);
    if (nv == 3)
        return move(MoveId::VR3);
    if (nv == 2 && nf == 1)
        return move(MoveId::Mixed);
    if (nv == 2 && ns == 1)
        return move(MoveId::VSR3);
    if (nv == 2 && nc == 1)
        return move(MoveId::MixedClassical);
    if (nf == 2 && nv == 1)
        return {TriangleKind::Forbidden, MoveId::FR3};
    if (nf == 2 && ns == 1)
        return move(primitive_sr3(p) ? MoveId::SR3 : MoveId::SR3Derived);
    if (nc == 3) {
        // over relation between strands must not be cyclic
        auto over = [&](int i, int j) { return p[i][shared[i][j]].role == Role::Over; };
        bool cyc1 = over(0, 1) && over(1, 2) && over(2, 0);
        bool cyc2 = over(1, 0) && over(2, 1) && over(0, 2);
        if (cyc1 || cyc2)
            return none;
        return move(MoveId::CR3);
    }
    return none;
}

std::array<Seg, 3> triangle_site(const PassCode& code, const std::vector<int>& site)
{
    if (site.size() != 6)
        throw InvalidCode("triangle site needs six numbers");
    std::array<Seg, 3> segs{Seg{site[0], site[1]}, Seg{site[2], site[3]}, Seg{site[4], site[5]}};
    for (const auto& s : segs)
        if (!valid_segment(code, s))
            throw InvalidCode("triangle site names an invalid segment");
    return segs;
}

PassCode reverse_segments(const PassCode& code, const std::array<Seg, 3>& segs)
{
    PassCode out = code;
    for (const auto& s : segs) {
        Pos a = first_pos(s);
        Pos b = second_pos(code, s);
        std::swap(out.components[a.comp][a.idx], out.components[b.comp][b.idx]);
    }
    return out;
}

bool in_catalog(MoveId id, MoveCatalog catalog, bool derived)
{
    switch (id) {
    case MoveId::VR1:
    case MoveId::VR2:
    case MoveId::VR3: return true;
    case MoveId::FR1:
    case MoveId::FR2:
    case MoveId::FR3:
    case MoveId::Mixed:
    case MoveId::SR2:
    case MoveId::SR3:
    case MoveId::VSR3: return catalog == MoveCatalog::Flat;
    case MoveId::SR3Derived:
    case MoveId::SR2Reverse: return catalog == MoveCatalog::Flat && derived;
    case MoveId::CR1:
    case MoveId::CR2:
    case MoveId::CR3:
    case MoveId::MixedClassical: return catalog == MoveCatalog::Classical;
    }
    return false;
}

std::vector<Seg> all_segments(const PassCode& code)
{
    std::vector<Seg> out;
    for (int c = 0; c < static_cast<int>(code.components.size()); ++c) {
        int len = length(code, c);
        if (len < 2)
            continue;
        for (int i = 0; i < len; ++i)
            out.push_back({c, i});
    }
    return out;
}

MoveResult apply_kink_insert(const PassCode& code, const MoveSpec& m)
{
    if (m.site.size() != 2)
        throw InvalidCode("kink insertion site needs two numbers");
    check_gap(code, m.site[0], m.site[1]);
    CrossingKind kind = kind_of(m.id);
    int id = m.ids.empty() ? next_id(code, kind) : m.ids[0];
    if (id_used(code, kind, id))
        throw InvalidCode("crossing id " + std::to_string(id) + " is already in use");
    bool sup = m.variant & 1;
    bool over = m.variant & 2;
    Pass a = make_pass(kind, id, sup, over);
    PassCode out = code;
    auto starts = insert_blocks(out, {Block{m.site[0], m.site[1], {a, partner(a)}}});
    return {out, MoveSpec{m.id, MoveDirection::Delete, {m.site[0], starts[0]}, 0, {}}};
}

MoveResult apply_kink_delete(const PassCode& code, const MoveSpec& m)
{
    if (m.site.size() != 2)
        throw InvalidCode("kink deletion site needs two numbers");
    Seg s{m.site[0], m.site[1]};
    if (kink_move(code, s) != m.id)
        throw InvalidCode(describe(m) + " does not match a kink");
    const Pass& a = at(code, first_pos(s));
    Pos b = second_pos(code, s);
    std::set<Pos> gone{first_pos(s), b};
    int len = length(code, s.comp);
    int gap = mapped_index(code, gone, s.comp, (s.start + 2) % len);
    int variant = (sup_like(a) ? 1 : 0) | (a.role == Role::Over ? 2 : 0);
    return {remove_positions(code, gone), MoveSpec{m.id, MoveDirection::Insert, {s.comp, gap}, variant, {a.id}}};
}

MoveResult apply_bigon_insert(const PassCode& code, const MoveSpec& m)
{
    if (m.site.size() != 4)
        throw InvalidCode("bigon insertion site needs four numbers");
    check_gap(code, m.site[0], m.site[1]);
    check_gap(code, m.site[2], m.site[3]);
    CrossingKind kind = kind_of(m.id);
    int c1 = next_id(code, kind);
    int c2 = c1 + 1;
    if (m.ids.size() == 2) {
        c1 = m.ids[0];
        c2 = m.ids[1];
    }
    if (c1 == c2 || id_used(code, kind, c1) || id_used(code, kind, c2))
        throw InvalidCode("bigon insertion needs two unused crossing ids");
    bool reverse = m.variant & 1;
    bool sup = m.variant & 2;
    bool b_first = m.variant & 4;
    bool over = m.variant & 8;
    Pass a0 = make_pass(kind, c1, sup, over);
    Pass a1 = make_pass(kind, c2, !sup, over);
    std::vector<Pass> A{a0, a1};
    std::vector<Pass> B = reverse ? std::vector<Pass>{partner(a1), partner(a0)} : std::vector<Pass>{partner(a0), partner(a1)};
    PassCode out = code;
    bool same = m.site[0] == m.site[2] && m.site[1] == m.site[3];
    int start_a = 0, start_b = 0;
    if (same) {
        std::vector<Pass> both = b_first ? B : A;
        const auto& rest = b_first ? A : B;
        both.insert(both.end(), rest.begin(), rest.end());
        int s = insert_blocks(out, {Block{m.site[0], m.site[1], both}})[0];
        start_a = b_first ? s + 2 : s;
        start_b = b_first ? s : s + 2;
    } else {
        auto starts = insert_blocks(out, {Block{m.site[0], m.site[1], A}, Block{m.site[2], m.site[3], B}});
        start_a = starts[0];
        start_b = starts[1];
    }
    return {out, MoveSpec{m.id, MoveDirection::Delete, {m.site[0], start_a, m.site[2], start_b}, 0, {}}};
}

MoveResult apply_bigon_delete(const PassCode& code, const MoveSpec& m)
{
    if (m.site.size() != 4)
        throw InvalidCode("bigon deletion site needs four numbers");
    Seg sa{m.site[0], m.site[1]};
    Seg sb{m.site[2], m.site[3]};
    if (bigon_move(code, sa, sb) != m.id)
        throw InvalidCode(describe(m) + " does not match a bigon");
    const Pass& a0 = at(code, first_pos(sa));
    const Pass& a1 = at(code, second_pos(code, sa));
    const Pass& b0 = at(code, first_pos(sb));
    std::set<Pos> gone{first_pos(sa), second_pos(code, sa), first_pos(sb), second_pos(code, sb)};
    int la = length(code, sa.comp);
    int lb = length(code, sb.comp);
    int after_a = (sa.start + 2) % la;
    int after_b = (sb.start + 2) % lb;
    int variant = (key(b0) != key(a0) ? 1 : 0) | (sup_like(a0) ? 2 : 0) | (a0.role == Role::Over ? 8 : 0);
    std::vector<int> site;
    if (sa.comp == sb.comp && after_a == sb.start) {
        int g = mapped_index(code, gone, sa.comp, after_b);
        site = {sa.comp, g, sa.comp, g};
    } else if (sa.comp == sb.comp && after_b == sa.start) {
        int g = mapped_index(code, gone, sa.comp, after_a);
        site = {sa.comp, g, sa.comp, g};
        variant |= 4;
    } else {
        site = {sa.comp, mapped_index(code, gone, sa.comp, after_a), sb.comp, mapped_index(code, gone, sb.comp, after_b)};
    }
    return {remove_positions(code, gone), MoveSpec{m.id, MoveDirection::Insert, site, variant, {a0.id, a1.id}}};
}

MoveResult apply_bigon_swap(const PassCode& code, const MoveSpec& m)
{
    if (m.site.size() != 4)
        throw InvalidCode("bigon site needs four numbers");
    Seg sa{m.site[0], m.site[1]};
    Seg sb{m.site[2], m.site[3]};
    if (bigon_move(code, sa, sb) != m.id)
        throw InvalidCode(describe(m) + " does not match a flat-singular bigon");
    const Pass& a0 = at(code, first_pos(sa));
    const Pass& a1 = at(code, second_pos(code, sa));
    int flat_id = a0.kind == CrossingKind::Flat ? a0.id : a1.id;
    int sing_id = a0.kind == CrossingKind::Singular ? a0.id : a1.id;
    PassCode out = code;
    for (Pos p : {first_pos(sa), second_pos(code, sa), first_pos(sb), second_pos(code, sb)}) {
        Pass& q = out.components[p.comp][p.idx];
        if (q.kind == CrossingKind::Flat) {
            q.kind = CrossingKind::Singular;
            q.id = sing_id;
        } else {
            q.kind = CrossingKind::Flat;
            q.id = flat_id;
        }
    }
    return {out, m};
}

MoveResult apply_triangle(const PassCode& code, const MoveSpec& m)
{
    auto segs = triangle_site(code, m.site);
    auto match = triangle_move(code, segs);
    if (match.kind != TriangleKind::Move || match.id != m.id)
        throw InvalidCode(describe(m) + " does not match a triangle of that type");
    return {reverse_segments(code, segs), m};
}

std::vector<int> gap_choices(const PassCode& code, int comp)
{
    int len = length(code, comp);
    std::vector<int> out;
    for (int g = 0; g < std::max(len, 1); ++g)
        out.push_back(g);
    return out;
}

void add_insertions(const PassCode& code, MoveCatalog catalog, std::vector<MoveSpec>& out)
{
    std::vector<MoveId> kinks = catalog == MoveCatalog::Flat ? std::vector<MoveId>{MoveId::FR1, MoveId::VR1}
                                                              : std::vector<MoveId>{MoveId::CR1, MoveId::VR1};
    std::vector<MoveId> bigons = catalog == MoveCatalog::Flat ? std::vector<MoveId>{MoveId::FR2, MoveId::VR2}
                                                               : std::vector<MoveId>{MoveId::CR2, MoveId::VR2};
    std::vector<std::pair<int, int>> gaps;
    for (int c = 0; c < static_cast<int>(code.components.size()); ++c)
        for (int g : gap_choices(code, c))
            gaps.push_back({c, g});
    for (MoveId id : kinks) {
        int variants = id == MoveId::CR1 ? 4 : 2;
        for (auto [c, g] : gaps)
            for (int v = 0; v < variants; ++v)
                out.push_back({id, MoveDirection::Insert, {c, g}, v, {}});
    }
    for (MoveId id : bigons) {
        int extra = id == MoveId::CR2 ? 2 : 1;
        for (std::size_t i = 0; i < gaps.size(); ++i)
            for (std::size_t j = i; j < gaps.size(); ++j) {
                int orders = i == j ? 2 : 1;
                for (int o = 0; o < orders; ++o)
                    for (int v = 0; v < 4; ++v)
                        for (int x = 0; x < extra; ++x)
                            out.push_back({id,
                                           MoveDirection::Insert,
                                           {gaps[i].first, gaps[i].second, gaps[j].first, gaps[j].second},
                                           v | (o ? 4 : 0) | (x ? 8 : 0),
                                           {}});
            }
    }
}

std::vector<std::array<Seg, 3>> candidate_triangles(const PassCode& code)
{
    auto segs = all_segments(code);
    std::map<std::pair<CrossingKey, CrossingKey>, std::vector<std::size_t>> by_pair;
    auto pair_of = [&](const Seg& s) {
        CrossingKey a = key(at(code, first_pos(s)));
        CrossingKey b = key(at(code, second_pos(code, s)));
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    };
    std::map<CrossingKey, std::vector<std::size_t>> by_crossing;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        auto pr = pair_of(segs[i]);
        if (pr.first == pr.second)
            continue;
        by_pair[pr].push_back(i);
        by_crossing[pr.first].push_back(i);
        by_crossing[pr.second].push_back(i);
    }
    std::set<std::array<int, 6>> seen;
    std::vector<std::array<Seg, 3>> out;
    for (std::size_t a = 0; a < segs.size(); ++a) {
        auto pa = pair_of(segs[a]);
        if (pa.first == pa.second)
            continue;
        for (int flip = 0; flip < 2; ++flip) {
            CrossingKey x = flip ? pa.second : pa.first;
            CrossingKey y = flip ? pa.first : pa.second;
            for (std::size_t b : by_crossing[x]) {
                if (b == a)
                    continue;
                auto pb = pair_of(segs[b]);
                CrossingKey z = pb.first == x ? pb.second : pb.first;
                if (z == y || z == x)
                    continue;
                auto key_yz = y < z ? std::make_pair(y, z) : std::make_pair(z, y);
                auto it = by_pair.find(key_yz);
                if (it == by_pair.end())
                    continue;
                for (std::size_t c : it->second) {
                    if (c == a || c == b)
                        continue;
                    std::array<std::size_t, 3> idx{a, b, c};
                    std::sort(idx.begin(), idx.end());
                    std::array<int, 6> k{};
                    for (int t = 0; t < 3; ++t) {
                        k[2 * t] = segs[idx[t]].comp;
                        k[2 * t + 1] = segs[idx[t]].start;
                    }
                    if (!seen.insert(k).second)
                        continue;
                    out.push_back({segs[idx[0]], segs[idx[1]], segs[idx[2]]});
                }
            }
        }
    }
    return out;
}

std::vector<int> site_of(const std::array<Seg, 3>& t)
{
    return {t[0].comp, t[0].start, t[1].comp, t[1].start, t[2].comp, t[2].start};
}

} // namespace

MoveResult apply_move(const PassCode& code, const MoveSpec& m)
{
    switch (m.direction) {
    case MoveDirection::Insert:
        if (is_kink_move(m.id))
            return apply_kink_insert(code, m);
        if (is_bigon_delete_move(m.id))
            return apply_bigon_insert(code, m);
        break;
    case MoveDirection::Delete:
        if (is_kink_move(m.id))
            return apply_kink_delete(code, m);
        if (is_bigon_delete_move(m.id))
            return apply_bigon_delete(code, m);
        break;
    case MoveDirection::Rearrange:
        if (is_bigon_swap_move(m.id))
            return apply_bigon_swap(code, m);
        if (!is_kink_move(m.id) && !is_bigon_delete_move(m.id))
            return apply_triangle(code, m);
        break;
    }
    throw InvalidCode(describe(m) + " is not a valid move shape");
}

std::vector<MoveSpec> applicable_moves(const PassCode& code, MoveCatalog catalog, bool include_derived)
{
    std::vector<MoveSpec> out;
    add_insertions(code, catalog, out);
    auto segs = all_segments(code);
    for (const auto& s : segs) {
        if (length(code, s.comp) == 2 && s.start == 1)
            continue;
        auto id = kink_move(code, s);
        if (id && in_catalog(*id, catalog, include_derived))
            out.push_back({*id, MoveDirection::Delete, {s.comp, s.start}, 0, {}});
    }
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            auto id = bigon_move(code, segs[i], segs[j]);
            if (!id || !in_catalog(*id, catalog, include_derived))
                continue;
            MoveDirection dir = is_bigon_swap_move(*id) ? MoveDirection::Rearrange : MoveDirection::Delete;
            out.push_back({*id, dir, {segs[i].comp, segs[i].start, segs[j].comp, segs[j].start}, 0, {}});
        }
    for (const auto& t : candidate_triangles(code)) {
        auto match = triangle_move(code, t);
        if (match.kind == TriangleKind::Move && in_catalog(match.id, catalog, include_derived))
            out.push_back({match.id, MoveDirection::Rearrange, site_of(t), 0, {}});
    }
    return out;
}

std::optional<MoveSpec> random_applicable_move(const PassCode& code, std::uint64_t seed, MoveCatalog catalog,
                                               bool include_derived)
{
    std::map<MoveId, std::vector<MoveSpec>> groups;
    for (auto& m : applicable_moves(code, catalog, include_derived))
        groups[m.id].push_back(std::move(m));
    if (groups.empty())
        return std::nullopt;
    Rng rng(seed);
    auto it = groups.begin();
    std::advance(it, static_cast<long>(pick(rng, groups.size())));
    return it->second[pick(rng, it->second.size())];
}

std::vector<std::vector<int>> forbidden_sites(const PassCode& code)
{
    std::vector<std::vector<int>> out;
    for (const auto& t : candidate_triangles(code))
        if (triangle_move(code, t).kind == TriangleKind::Forbidden)
            out.push_back(site_of(t));
    return out;
}

PassCode apply_forbidden(const PassCode& code, const std::vector<int>& site)
{
    auto segs = triangle_site(code, site);
    if (triangle_move(code, segs).kind != TriangleKind::Forbidden)
        throw InvalidCode("site is not a forbidden-move triangle");
    return reverse_segments(code, segs);
}

namespace {

struct Builder {
    Rng rng;
    PassCode code;
    std::map<CrossingKind, int> left;

    int fresh(CrossingKind k)
    {
        --left[k];
        return next_id(code, k);
    }

    std::pair<int, int> random_gap()
    {
        int c = static_cast<int>(pick(rng, code.components.size()));
        int g = static_cast<int>(pick(rng, code.components[c].size() + 1));
        return {c, g};
    }

    void free_crossing(CrossingKind k)
    {
        int id = fresh(k);
        bool sup = rng() & 1;
        bool over = rng() & 1;
        Pass a = make_pass(k, id, sup, over);
        auto [c1, g1] = random_gap();
        auto [c2, g2] = random_gap();
        insert_blocks(code, {Block{c1, g1, {a}}, Block{c2, g2, {partner(a)}}});
    }

    void kink(MoveId id)
    {
        --left[kind_of(id)];
        auto [c, g] = random_gap();
        int v = static_cast<int>(pick(rng, id == MoveId::CR1 ? 4 : 2));
        code = apply_move(code, {id, MoveDirection::Insert, {c, g}, v, {}}).code;
    }

    // Bigon of `id`'s kind; when `singular` the second crossing becomes
    // singular afterwards.
    void bigon(MoveId id, bool singular)
    {
        CrossingKind k = kind_of(id);
        left[k] -= singular ? 1 : 2;
        auto [c1, g1] = random_gap();
        auto [c2, g2] = random_gap();
        int v = static_cast<int>(pick(rng, 4));
        if (c1 == c2 && g1 == g2)
            v |= (rng() & 1) ? 4 : 0;
        if (id == MoveId::CR2)
            v |= (rng() & 1) ? 8 : 0;
        int a = next_id(code, k);
        code = apply_move(code, {id, MoveDirection::Insert, {c1, g1, c2, g2}, v, {a, a + 1}}).code;
        if (!singular)
            return;
        int s = fresh(CrossingKind::Singular);
        for (auto& comp : code.components)
            for (auto& p : comp)
                if (p.kind == k && p.id == a + 1) {
                    p.kind = CrossingKind::Singular;
                    p.id = s;
                }
    }

    template <class T, std::size_t N>
    void shuffle(std::array<T, N>& a)
    {
        for (std::size_t i = N; i > 1; --i)
            std::swap(a[i - 1], a[pick(rng, i)]);
    }

    // Kinds in the order of strand pairs (0,1), (0,2), (1,2).
    void triangle(std::array<CrossingKind, 3> kinds, bool classical_heights)
    {
        const auto& states = geometric_states();
        const TriState& st = states[pick(rng, states.size())];
        std::array<int, 3> height{0, 1, 2};
        shuffle(height);
        auto pair_index = [](int i, int j) { return i + j - 1; };
        std::array<int, 3> ids{};
        std::map<CrossingKind, int> used;
        for (int q = 0; q < 3; ++q) {
            ids[q] = next_id(code, kinds[q]) + used[kinds[q]]++;
            --left[kinds[q]];
        }
        std::vector<Block> blocks;
        for (int i = 0; i < 3; ++i) {
            int f = st.first[i];
            int s = 3 - i - f;
            std::vector<Pass> seg;
            for (int j : {f, s}) {
                int q = pair_index(i, j);
                bool over = classical_heights && height[i] > height[j];
                seg.push_back(make_pass(kinds[q], ids[q], st.sup[i][j], over));
            }
            auto [c, g] = random_gap();
            blocks.push_back({c, g, seg});
        }
        insert_blocks(code, blocks);
    }

    bool can(CrossingKind k, int n) { return left[k] >= n; }
};

} // namespace

PassCode random_code(const CodeBudget& budget, std::uint64_t seed)
{
    Builder b{Rng(seed), {}, {}};
    b.left[CrossingKind::Flat] = budget.flat;
    b.left[CrossingKind::Singular] = budget.singular;
    b.left[CrossingKind::Virtual] = budget.virt;
    if (budget.flat <= 0 && budget.singular <= 0 && budget.virt <= 0)
        return builtin_code("unknot");
    int comps = 1 + static_cast<int>(pick(b.rng, static_cast<std::size_t>(std::max(1, budget.components))));
    b.code.components.resize(comps);
    const auto F = CrossingKind::Flat;
    const auto S = CrossingKind::Singular;
    const auto V = CrossingKind::Virtual;
    int gadgets = 2 + static_cast<int>(pick(b.rng, 5));
    for (int g = 0; g < gadgets; ++g) {
        switch (pick(b.rng, 10)) {
        case 0:
            if (b.can(F, 1))
                b.free_crossing(F);
            break;
        case 1:
            if (b.can(S, 1))
                b.free_crossing(S);
            else if (b.can(V, 1))
                b.free_crossing(V);
            break;
        case 2:
            if (b.can(F, 1))
                b.kink(MoveId::FR1);
            else if (b.can(V, 1))
                b.kink(MoveId::VR1);
            break;
        case 3:
            if (b.can(F, 2))
                b.bigon(MoveId::FR2, false);
            break;
        case 4:
            if (b.can(V, 2))
                b.bigon(MoveId::VR2, false);
            break;
        case 5:
            if (b.can(F, 1) && b.can(S, 1))
                b.bigon(MoveId::FR2, true);
            break;
        case 6:
            if (b.can(F, 3))
                b.triangle({F, F, F}, false);
            break;
        case 7:
            if (b.can(F, 2) && b.can(S, 1)) {
                std::array<CrossingKind, 3> k{F, F, S};
                b.shuffle(k);
                b.triangle(k, false);
            }
            break;
        case 8:
            if (b.can(V, 2) && b.can(F, 1)) {
                std::array<CrossingKind, 3> k{V, V, F};
                b.shuffle(k);
                b.triangle(k, false);
            }
            break;
        case 9:
            if ((b.rng() & 1) && b.can(V, 3)) {
                b.triangle({V, V, V}, false);
            } else if (b.can(V, 2) && b.can(S, 1)) {
                std::array<CrossingKind, 3> k{V, V, S};
                b.shuffle(k);
                b.triangle(k, false);
            }
            break;
        }
    }
    validate_code(b.code);
    return b.code;
}

ClassicalCode random_classical_code(int classical, int virt, std::uint64_t seed)
{
    Builder b{Rng(seed), {}, {}};
    b.left[CrossingKind::Classical] = classical;
    b.left[CrossingKind::Virtual] = virt;
    b.code.components.resize(1);
    const auto C = CrossingKind::Classical;
    const auto V = CrossingKind::Virtual;
    int gadgets = 2 + static_cast<int>(pick(b.rng, 4));
    for (int g = 0; g < gadgets; ++g) {
        switch (pick(b.rng, 7)) {
        case 0:
        case 1:
            if (b.can(C, 1))
                b.free_crossing(C);
            break;
        case 2:
            if (b.can(V, 1))
                b.free_crossing(V);
            break;
        case 3:
            if (b.can(C, 1))
                b.kink(MoveId::CR1);
            break;
        case 4:
            if (b.can(C, 2))
                b.bigon(MoveId::CR2, false);
            break;
        case 5:
            if (b.can(C, 3))
                b.triangle({C, C, C}, true);
            break;
        case 6:
            if (b.can(V, 2) && b.can(C, 1)) {
                std::array<CrossingKind, 3> k{V, V, C};
                b.shuffle(k);
                b.triangle(k, true);
            }
            break;
        }
    }
    return ClassicalCode(b.code);
}

} // namespace sq
