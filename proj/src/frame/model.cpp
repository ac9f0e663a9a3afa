#include "doxa/error.hpp"
#include "doxa/frame.hpp"

#include <algorithm>

namespace doxa
{

namespace
{

void check_ranking( const ranking& tiers, state_set universe, const std::string& what )
{
    state_set seen;
    for ( const auto tier : tiers )
    {
        if ( tier.empty() )
            throw format_error( what + ": empty tier" );
        if ( !tier.is_subset_of( universe ) )
            throw format_error( what + ": tier mentions an unknown state" );
        if ( tier.intersects( seen ) )
            throw format_error( what + ": tiers overlap" );
        seen = seen | tier;
    }
    if ( seen != universe )
        throw format_error( what + ": tiers do not cover every state" );
}

} // namespace

pointed_model::pointed_model( signature sig, std::vector<state> states, state_index actual,
                              std::vector<state_set> belief, selection_function selection,
                              std::map<state_index, state_index> bridge )
        : _sig{ std::move( sig ) }, _states{ std::move( states ) }, _actual{ actual }, _belief{ std::move( belief ) },
          _selection{ std::move( selection ) }, _bridge{ std::move( bridge ) }
{
    const auto n = _states.size();
    if ( n == 0 || n > state_set::max_states )
        throw format_error( "a model needs between 1 and 64 states" );

    for ( std::size_t i = 0; i < n; ++i )
    {
        if ( _states[ i ].id.empty() )
            throw format_error( "empty state id" );
        if ( _states[ i ].val >= _sig.valuation_count() )
            throw format_error( "state '" + _states[ i ].id + "' has a valuation outside W" );
        for ( std::size_t j = 0; j < i; ++j )
            if ( _states[ j ].id == _states[ i ].id )
                throw format_error( "duplicate state id '" + _states[ i ].id + "'" );
    }

    if ( _actual >= n )
        throw format_error( "actual state out of range" );

    const auto universe = all_states();
    if ( _belief.size() != n )
        throw format_error( "belief relation must list every state" );
    for ( const auto b : _belief )
        if ( !b.is_subset_of( universe ) )
            throw format_error( "belief relation mentions an unknown state" );

    const auto& repr = _selection.repr();
    if ( const auto* shared = std::get_if<selection_function::shared_preorder>( &repr ) )
    {
        check_ranking( shared->tiers, universe, "shared preorder" );
    }
    else if ( const auto* per_state = std::get_if<selection_function::per_state_preorder>( &repr ) )
    {
        for ( const auto& [ s, tiers ] : per_state->tiers )
        {
            if ( s >= n )
                throw format_error( "per-state preorder for an unknown state" );
            check_ranking( tiers, universe, "preorder of '" + _states[ s ].id + "'" );
        }
    }
    else
    {
        for ( const auto& [ key, selected ] : std::get<selection_function::explicit_table>( repr ).entries )
        {
            if ( key.first >= n || !key.second.is_subset_of( universe ) || !selected.is_subset_of( universe ) )
                throw format_error( "selection table mentions an unknown state" );
            if ( key.second.empty() )
                throw format_error( "selection table entry for the empty event" );
        }
    }

    const auto believed_here = believed();
    for ( const auto& [ from, to ] : _bridge )
    {
        if ( from >= n || to >= n )
            throw format_error( "bridge mentions an unknown state" );
        if ( believed_here.contains( from ) )
            throw format_error( "bridge is defined only outside B(actual); '" + _states[ from ].id + "' is inside" );
        if ( !believed_here.contains( to ) )
            throw format_error( "bridge target '" + _states[ to ].id + "' is not in B(actual)" );
    }
}

std::optional<state_index> pointed_model::index_of( std::string_view id ) const
{
    const auto it = std::find_if( _states.begin(), _states.end(), [ & ]( const state& s ) { return s.id == id; } );
    if ( it == _states.end() )
        return std::nullopt;
    return static_cast<state_index>( it - _states.begin() );
}

state_set pointed_model::states_in( const event& worlds ) const
{
    if ( worlds.width() != _sig.valuation_count() )
        throw signature_mismatch( "event width does not match the model signature" );
    state_set out;
    for ( std::size_t i = 0; i < _states.size(); ++i )
        if ( worlds.contains( _states[ i ].val ) )
            out.insert( i );
    return out;
}

event pointed_model::valuations_of( state_set states ) const
{
    auto out = event::empty_of( _sig );
    for ( const auto s : states.members() )
        out.insert( _states.at( s ).val );
    return out;
}

state_set pointed_model::select( state_index s, state_set e ) const
{
    if ( believed().contains( s ) )
        return _selection.select( s, e );
    const auto it = _bridge.find( s );
    if ( it == _bridge.end() )
        throw missing_bridge( "state '" + _states.at( s ).id + "' lies outside B(actual) and has no bridge" );
    return _selection.select( it->second, e );
}

pointed_model pointed_model::with_selection( selection_function selection ) const
{
    return pointed_model( _sig, _states, _actual, _belief, std::move( selection ), _bridge );
}

pointed_model pointed_model::with_belief( std::vector<state_set> belief ) const
{
    auto bridge = _bridge;
    const auto believed_next = belief.at( _actual );
    std::erase_if( bridge, [ & ]( const auto& kv ) {
        return believed_next.contains( kv.first ) || !believed_next.contains( kv.second );
    } );
    return pointed_model( _sig, _states, _actual, std::move( belief ), _selection, std::move( bridge ) );
}

} // namespace doxa
