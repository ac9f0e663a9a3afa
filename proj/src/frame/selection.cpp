#include "doxa/error.hpp"
#include "doxa/frame.hpp"

namespace doxa
{

namespace
{

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};

} // namespace

state_set minimal_in( const ranking& tiers, state_set e )
{
    for ( const auto tier : tiers )
        if ( tier.intersects( e ) )
            return tier & e;
    return {};
}

state_set selection_function::select( state_index s, state_set e ) const
{
    return std::visit( overloaded{
                               [ & ]( const explicit_table& t ) {
                                   const auto it = t.entries.find( { s, e } );
                                   if ( it == t.entries.end() )
                                       throw domain_error( "selection table has no entry for state #" +
                                                           std::to_string( s ) + " and event mask " +
                                                           std::to_string( e.bits() ) );
                                   return it->second;
                               },
                               [ & ]( const shared_preorder& p ) { return minimal_in( p.tiers, e ); },
                               [ & ]( const per_state_preorder& p ) {
                                   const auto it = p.tiers.find( s );
                                   if ( it == p.tiers.end() )
                                       throw domain_error( "no ranking for state #" + std::to_string( s ) );
                                   return minimal_in( it->second, e );
                               },
                       },
                       _repr );
}

selection_function::explicit_table selection_function::expand( const selection_function& f, state_set domain,
                                                                std::size_t n )
{
    if ( n > 20 )
        throw domain_error( "refusing to expand a selection function over " + std::to_string( n ) + " states" );

    explicit_table table;
    const std::uint64_t events = std::uint64_t{ 1 } << n;
    for ( const auto s : domain.members() )
        for ( std::uint64_t mask = 1; mask < events; ++mask )
            table.entries.emplace( std::pair{ s, state_set( mask ) }, f.select( s, state_set( mask ) ) );
    return table;
}

} // namespace doxa
