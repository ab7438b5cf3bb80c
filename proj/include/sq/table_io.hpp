#pragma once

#include <string>
#include <vector>

#include "sq/algebra.hpp"

namespace sq {

/// Reads the table text format:
///
///     semiquandle <n> [singular] [virtual]
///     <n rows of up>
///
///     <n rows of dn>
///     [<n rows of hup> <n rows of hdn>]
///     [v: p1 ... pn]
///
/// Entries are whitespace separated and 1-based. Blank lines and lines
/// starting with '#' are ignored. Table values are range-checked here; the
/// axioms are not (run check_bundle).
StructureBundle parse_bundle(const std::string& text);

/// Inverse of parse_bundle; blocks are separated by blank lines.
std::string format_bundle(const StructureBundle& bundle);

/// Reads a stream of bundles separated by lines holding a single '%'.
/// A trailing `count: <k>` line is accepted and ignored.
std::vector<StructureBundle> parse_bundle_stream(const std::string& text);

} // namespace sq
