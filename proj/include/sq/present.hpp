#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sq/algebra.hpp"

namespace sq {

enum class RelationKind { Up, Dn, HUp, HDn, V };

std::string relation_kind_name(RelationKind k);

/// kind(a, b) = c, or v(a) = c when kind is V (b unused, -1). Arguments
/// index into Presentation::generators.
struct Relation {
    RelationKind kind;
    int a;
    int b;
    int c;

    friend bool operator==(const Relation&, const Relation&) = default;
};

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Relation> relations;

    bool uses_hat() const;
    bool uses_virtual() const;
    /// Canonical text: a `gens:` line then one relation per line.
    std::string to_text() const;
};

/// Reads the relation grammar: relations separated by newlines or ';',
/// each one of `up(a,b)=c`, `dn(a,b)=c`, `hup(a,b)=c`, `hdn(a,b)=c`,
/// `v(a)=b`, plus an optional `gens: a b c ...` declaration. Without the
/// declaration generators are taken in order of first appearance.
Presentation parse_presentation(const std::string& text);

/// Named presentations: flat_kishino (one-component reading),
/// flat_kishino_two_component (the second crossing's outputs exchanged,
/// which gives a two-component diagram), triple_crazy_trefoil, singular_unknot_1, unknot,
/// unlink(k) (also written unlink:k).
Presentation builtin_presentation(const std::string& name);
std::vector<std::string> builtin_presentation_names();

struct InvariantResult {
    std::uint64_t count = 0;
    /// image size -> number of colorings with that image size
    std::map<int, std::uint64_t> image_sizes;
    std::string polynomial = "0";

    friend bool operator==(const InvariantResult&, const InvariantResult&) = default;
};

/// `3z + 2z^2` style text, ascending exponents; `0` when empty.
std::string polynomial_text(const std::map<int, std::uint64_t>& terms);

struct SolveOptions {
    /// Workers splitting the first branching generator's values. Output is
    /// identical for every value.
    int jobs = 1;
};

/// Number of colorings: maps generators -> 1..n satisfying every relation.
/// A bundle without a virtual extension acts with v = identity; hat
/// relations need a singular extension (MissingExtension otherwise).
std::uint64_t count_colorings(const Presentation& p, const StructureBundle& b, const SolveOptions& opts = {});

/// Count plus the multiset of image-subalgebra sizes and its polynomial.
InvariantResult enhanced_invariant(const Presentation& p, const StructureBundle& b, const SolveOptions& opts = {});

/// Every coloring, as value vectors indexed like p.generators, in
/// lexicographic order. Intended for small cases.
std::vector<std::vector<int>> all_colorings(const Presentation& p, const StructureBundle& b);

} // namespace sq
