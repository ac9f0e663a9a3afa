#include "doxa/frame.hpp"

namespace doxa
{

std::optional<state_index> state_set::first() const
{
    if ( _bits == 0 )
        return std::nullopt;
    return static_cast<state_index>( std::countr_zero( _bits ) );
}

std::vector<state_index> state_set::members() const
{
    std::vector<state_index> out;
    out.reserve( count() );
    for ( auto rest = _bits; rest != 0; rest &= rest - 1 )
        out.push_back( static_cast<state_index>( std::countr_zero( rest ) ) );
    return out;
}

} // namespace doxa
