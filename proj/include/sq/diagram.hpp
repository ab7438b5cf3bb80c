#pragma once

#include <compare>
#include <string>
#include <vector>

#include "sq/present.hpp"

namespace sq {

enum class CrossingKind { Flat, Singular, Virtual, Classical };

/// Sup/Sub at flat and singular crossings, VPlus/VMinus at virtual ones,
/// Over/Under at classical ones.
enum class Role { Sup, Sub, VPlus, VMinus, Over, Under };

/// One passage of a strand through a crossing. Crossings are identified by
/// (kind, id), so F1 and S1 are different crossings. `sign` is the local
/// writhe of a classical crossing and 0 otherwise.
struct Pass {
    CrossingKind kind;
    int id;
    Role role;
    int sign = 0;

    friend bool operator==(const Pass&, const Pass&) = default;
    friend auto operator<=>(const Pass&, const Pass&) = default;
};

struct CrossingKey {
    CrossingKind kind;
    int id;

    friend bool operator==(const CrossingKey&, const CrossingKey&) = default;
    friend auto operator<=>(const CrossingKey&, const CrossingKey&) = default;
};

inline CrossingKey key(const Pass& p) { return {p.kind, p.id}; }

/// Cyclic pass sequences, one per component. An empty component is a
/// crossing-free circle.
struct PassCode {
    std::vector<std::vector<Pass>> components;

    std::size_t pass_count() const;
    friend bool operator==(const PassCode&, const PassCode&) = default;
    friend auto operator<=>(const PassCode&, const PassCode&) = default;
};

/// A pass code whose crossings are all classical or virtual.
class ClassicalCode {
public:
    explicit ClassicalCode(PassCode code);
    const PassCode& code() const { return code_; }
    friend bool operator==(const ClassicalCode&, const ClassicalCode&) = default;

private:
    PassCode code_;
};

/// Geometric side of a pass: true when the other strand crosses this one
/// from left to right. Sup passes are sup-like, Sub passes are not; a VPlus
/// pass is sup-like (it applies v); a classical pass is sup-like when it is
/// the under strand of a positive crossing or the over strand of a
/// negative one.
bool sup_like(const Pass& p);

std::string crossing_name(CrossingKey k);
std::string pass_text(const Pass& p);

/// Code grammar: one line per component, `comp: <pass> <pass> ...`, pass =
/// `<Kind><id>.<role>` with Kind in F, S, V, C. Roles: sup/sub (F, S),
/// v+/v- (V), over+/over-/under+/under- (C). Diagnostics name the line or
/// the offending crossing.
PassCode parse_code(const std::string& text);
ClassicalCode parse_classical(const std::string& text);
std::string format_code(const PassCode& code);

/// Throws InvalidCode unless every crossing occurs exactly twice with
/// complementary roles (and equal signs for classical crossings).
void validate_code(const PassCode& code);

/// One generator per semiarc, a semiarc being the edge entering a pass.
/// Flat and singular crossings give kind(a, b) = a' for the sup pass and
/// kind(b, a) = b' for the sub pass; v+ passes give v(a) = a', v- passes
/// give v(b') = b. Crossing-free components give one free generator.
/// Classical crossings must be flattened first.
Presentation extract_relations(const PassCode& code);

/// Rotates each component to its least rotation and sorts components.
PassCode normalize(const PassCode& code);

/// Classical crossings become flat, the sup role going to the sup-like
/// pass; signs are dropped and virtual passes kept.
PassCode flatten(const ClassicalCode& k);

/// Oriented smoothing at classical crossing `id` of a one-component code,
/// then flatten. The result has two components.
PassCode smooth_at(const ClassicalCode& k, int id);

/// Flatten, then mark crossing `id` singular.
PassCode glue_at(const ClassicalCode& k, int id);

/// Flatten, insert a sup-first kink at the start of the first component
/// and mark it singular.
PassCode glue_kink(const ClassicalCode& k);

/// Appends a crossing-free component.
PassCode disjoint_unknot(const PassCode& code);

/// Named codes: unknot, unlink(k), singular_unknot_1,
/// triple_crazy_trefoil, flat_kishino, flat_virtual_hopf.
PassCode builtin_code(const std::string& name);
std::vector<std::string> builtin_code_names();

/// Changes every classical crossing: over and under swap and signs
/// negate, so the flat projection is unchanged.
ClassicalCode mirror(const ClassicalCode& k);

/// Ids of the classical crossings in order of first appearance.
std::vector<int> classical_crossings(const ClassicalCode& k);

} // namespace sq
