#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sq/diagram.hpp"

namespace sq {

/// Reidemeister-type moves on pass codes. Primitive moves for flat
/// singular virtual codes: FR1..FR3, VR1..VR3, Mixed (strand with two
/// virtual crossings passing a flat crossing), SR2 (flat and singular
/// crossings of a parallel bigon trade places), SR3 (the flat-flat-singular
/// triangle in the orientation the hat axioms are read from) and VSR3
/// (strand with two virtual crossings passing a singular crossing). CR1..CR3
/// and MixedClassical are the classical counterparts. SR3Derived (the other
/// flat-flat-singular orientations) and SR2Reverse (antiparallel bigon) are
/// consequences of the primitives and are only offered on request.
enum class MoveId {
    FR1,
    FR2,
    FR3,
    VR1,
    VR2,
    VR3,
    Mixed,
    SR2,
    SR3,
    VSR3,
    CR1,
    CR2,
    CR3,
    MixedClassical,
    SR3Derived,
    SR2Reverse,
};

std::string move_name(MoveId id);

enum class MoveDirection { Insert, Delete, Rearrange };

/// Site layout by move shape:
///   kink insert   {component, gap}          variant bit0: first pass sup-like,
///                                           bit1: first pass over (classical)
///   kink delete   {component, index of first pass}
///   bigon insert  {compA, gapA, compB, gapB} bit0: antiparallel, bit1: first
///                                           pass of A sup-like, bit2: B before
///                                           A in a shared gap, bit3: A over
///   bigon delete / SR2 / SR2Reverse  {compA, startA, compB, startB}
///   triangle      {comp, start} x 3
/// A gap index g is the semiarc entering pass g (0 for an empty component).
/// `ids`, when non-empty, fixes the ids of inserted crossings.
struct MoveSpec {
    MoveId id;
    MoveDirection direction;
    std::vector<int> site;
    int variant = 0;
    std::vector<int> ids;

    friend bool operator==(const MoveSpec&, const MoveSpec&) = default;
};

std::string describe(const MoveSpec& m);

struct MoveResult {
    PassCode code;
    /// Applying this to `code` restores the input up to normalize().
    MoveSpec inverse;
};

/// Throws InvalidCode when the site does not match the move's pattern.
MoveResult apply_move(const PassCode& code, const MoveSpec& m);

enum class MoveCatalog { Flat, Classical };

/// Every applicable (move, site, variant) for the catalog. Insertions are
/// offered at every gap; rearrangements and deletions wherever the pattern
/// matches.
std::vector<MoveSpec> applicable_moves(const PassCode& code, MoveCatalog catalog, bool include_derived = false);

/// Picks a move id uniformly among those with at least one applicable
/// site, then a site uniformly within it. Deterministic in `seed`;
/// nullopt when nothing applies.
std::optional<MoveSpec> random_applicable_move(
    const PassCode& code, std::uint64_t seed, MoveCatalog catalog = MoveCatalog::Flat, bool include_derived = false);

/// Triangles whose moving strand crosses a virtual crossing through two
/// flat crossings. Rearranging one is the forbidden move; it is not part of
/// any catalog.
std::vector<std::vector<int>> forbidden_sites(const PassCode& code);
PassCode apply_forbidden(const PassCode& code, const std::vector<int>& site);

struct CodeBudget {
    int flat = 4;
    int singular = 2;
    int virt = 3;
    int components = 2;
};

/// Random valid code built from free crossings, kinks, bigons and
/// triangles so that every move shape has a chance to apply.
PassCode random_code(const CodeBudget& budget, std::uint64_t seed);

/// Random one-component classical code with at most `classical` classical
/// and `virt` virtual crossings.
ClassicalCode random_classical_code(int classical, int virt, std::uint64_t seed);

} // namespace sq
