#pragma once

#include "sq/algebra.hpp"

namespace sq::named {

/// Order-4 non-constant-action semiquandle (block matrix [U|L] below).
///
///     1 4 2 3 | 1 3 4 2
///     2 3 1 4 | 3 1 2 4
///     4 1 3 2 | 2 4 3 1
///     3 2 4 1 | 4 2 1 3
SemiquandleTable order4_semiquandle();

/// Constant action semiquandle on {1,2,3} with sigma = (132).
SemiquandleTable constant_action_132();

/// constant_action_132() with the operator singular structure.
StructureBundle constant_action_132_operator();

/// Order-3 semiquandle with up = dn, trivial singular structure and v = (13).
StructureBundle order3_virtual();

/// order4_semiquandle() with the singular structure
///
///     1 1 4 4 | 1 2 2 1
///     1 1 4 4 | 4 3 3 4
///     2 2 3 3 | 4 3 3 4
///     2 2 3 3 | 1 2 2 1
StructureBundle order4_singular();

} // namespace sq::named
