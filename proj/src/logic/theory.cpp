#include "doxa/logic.hpp"

namespace doxa
{

bool cn_member( const theory& t, const formula& f, const signature& sig )
{
    return t.entails( truth_set( f, sig ) );
}

theory expand_theory( const theory& t, const formula& f, const signature& sig )
{
    return theory( t.worlds() & truth_set( f, sig ) );
}

theory intersect( const theory& lhs, const theory& rhs )
{
    return theory( lhs.worlds() | rhs.worlds() );
}

} // namespace doxa
