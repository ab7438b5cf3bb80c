#include "sq/named.hpp"

namespace sq::named {

SemiquandleTable order4_semiquandle()
{
    return {OpTable(RawTable{{1, 4, 2, 3}, {2, 3, 1, 4}, {4, 1, 3, 2}, {3, 2, 4, 1}}),
        OpTable(RawTable{{1, 3, 4, 2}, {3, 1, 2, 4}, {2, 4, 3, 1}, {4, 2, 1, 3}})};
}

SemiquandleTable constant_action_132() { return make_constant_action(3, Permutation::from_cycles("(132)", 3)); }

StructureBundle constant_action_132_operator()
{
    auto t = constant_action_132();
    auto s = make_operator_singular(t);
    return {std::move(t), std::move(s), std::nullopt};
}

StructureBundle order3_virtual()
{
    OpTable ops(RawTable{{1, 3, 1}, {2, 2, 2}, {3, 1, 3}});
    return {{ops, ops}, make_trivial_singular(3), VirtualExtension{Permutation::from_cycles("(13)", 3)}};
}

StructureBundle order4_singular()
{
    return {order4_semiquandle(),
        SingularExtension{OpTable(RawTable{{1, 1, 4, 4}, {1, 1, 4, 4}, {2, 2, 3, 3}, {2, 2, 3, 3}}),
            OpTable(RawTable{{1, 2, 2, 1}, {4, 3, 3, 4}, {4, 3, 3, 4}, {1, 2, 2, 1}})},
        std::nullopt};
}

} // namespace sq::named
