#pragma once

#include <cstdint>
#include <vector>

#include "sq/algebra.hpp"

namespace sq {

struct SearchBudget {
    /// Search nodes (partial assignments) before BudgetExceeded is thrown; 0 = unlimited.
    std::uint64_t max_nodes = 200'000'000;
    /// Worker threads. Output is identical for every value.
    int jobs = 1;
};

/// Lexicographically least (up cells, then dn cells) table among all
/// simultaneous relabelings. Isomorphic tables share a canonical form.
SemiquandleTable canonical_form(const SemiquandleTable& table);

/// Every semiquandle on 1..n in lexicographic order of (up cells, dn cells).
/// With `up_to_iso`, one canonical form per isomorphism class, sorted.
std::vector<SemiquandleTable> enumerate_semiquandles(int n, bool up_to_iso, const SearchBudget& budget = {});

/// Every singular extension of a valid table, sorted by (hup cells, hdn
/// cells). With `up_to_iso`, one representative per orbit of Aut(table),
/// the least one in that orbit.
std::vector<SingularExtension> enumerate_singular_extensions(
    const SemiquandleTable& table, bool up_to_iso = false, const SearchBudget& budget = {});

/// Automorphisms of the bundle (table plus singular extension; any virtual
/// extension is ignored). With `up_to_conjugacy`, the least member of each
/// conjugacy class of the automorphism group.
std::vector<Permutation> enumerate_virtual_structures(const StructureBundle& bundle, bool up_to_conjugacy);

} // namespace sq
