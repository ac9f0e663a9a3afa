#include "doxa/canonical.hpp"

#include "doxa/contraction.hpp"
#include "doxa/error.hpp"
#include "doxa/rng.hpp"

#include <functional>

namespace doxa
{

pointed_model build_canonical( const contraction_table& table )
{
    if ( !table.k.consistent() )
        throw postulate_violation( "K is inconsistent; the canonical model needs a consistent belief set" );
    const auto report = check_postulates( table );
    if ( !report.passed() )
        throw postulate_violation( "the table violates (" +
                                   std::string( postulate_id( report.counterexamples().front().which ) ) + ")" );

    const auto& sig = table.sig;
    const auto width = sig.valuation_count();
    if ( width > state_set::max_states )
        throw domain_error( "too many valuations for a canonical model" );

    std::vector<state> states;
    for ( std::size_t v = 0; v < width; ++v )
        states.push_back( { "w" + std::to_string( v ), static_cast<valuation>( v ) } );

    // State i carries valuation i, so events over S and W share their masks.
    const state_set believed( table.k.worlds().to_mask() );
    std::vector<state_set> belief;
    for ( std::size_t s = 0; s < width; ++s )
        belief.push_back( s == 0 ? believed : state_set::single( s ) );

    selection_function::explicit_table selection;
    const auto universe = state_set::universe( width );
    for ( std::uint64_t e = 1; e <= universe.bits(); ++e )
    {
        const auto complement = event::from_mask( width, universe.bits() & ~e );
        const state_set selected( table.at( complement ).worlds().to_mask() & e );
        for ( const auto s : believed.members() )
            selection.entries.emplace( std::pair{ s, state_set( e ) }, selected );
    }

    std::map<state_index, state_index> bridge;
    const auto anchor = *believed.first();
    for ( std::size_t s = 0; s < width; ++s )
        if ( !believed.contains( s ) )
            bridge.emplace( s, anchor );

    return pointed_model( sig, std::move( states ), 0, std::move( belief ),
                          selection_function( std::move( selection ) ), std::move( bridge ) );
}

roundtrip_report verify_roundtrip( const pointed_model& m, const contraction_table& table )
{
    roundtrip_report report;
    report.frame = validate_frame( m );
    report.belief_ok = belief_set( m ) == table.k;
    for ( const auto& [ phi, expected ] : table.entries )
        if ( contract_full( m, synthesize_formula( phi, m.sig() ) ) != expected )
            report.mismatches.push_back( phi );
    return report;
}

void check_spheres( const sphere_system& system )
{
    const auto& spheres = system.spheres;
    if ( spheres.empty() )
        throw format_error( "a sphere system needs at least one sphere" );
    const auto width = system.sig.valuation_count();
    for ( const auto& s : spheres )
        if ( s.width() != width )
            throw format_error( "sphere is not over the system's signature" );
    if ( spheres.front().empty() )
        throw format_error( "the innermost sphere (worlds of K) must be nonempty" );
    for ( std::size_t i = 1; i < spheres.size(); ++i )
        if ( !spheres[ i - 1 ].is_subset_of( spheres[ i ] ) || spheres[ i - 1 ] == spheres[ i ] )
            throw format_error( "spheres must be strictly increasing; sphere " + std::to_string( i ) +
                                " does not extend its predecessor" );
    if ( !spheres.back().is_full() )
        throw format_error( "the outermost sphere must be all of W" );
}

contraction_table table_from_spheres( const sphere_system& system )
{
    check_spheres( system );
    const auto& sig = system.sig;
    if ( sig.size() > max_table_atoms )
        throw domain_error( "contraction tables are materialized only for up to 3 atoms" );

    const auto width = sig.valuation_count();
    const auto& k = system.spheres.front();
    contraction_table table{ sig, theory( k ), {}, false };
    for ( std::uint64_t e = 0; e < ( std::uint64_t{ 1 } << width ); ++e )
    {
        const auto phi = event::from_mask( width, e );
        const auto negated = ~phi;
        auto result = k;
        for ( const auto& sphere : system.spheres )
        {
            if ( sphere.intersects( negated ) )
            {
                result |= sphere & negated;
                break;
            }
        }
        table.entries.emplace( phi, theory( std::move( result ) ) );
    }
    return table;
}

std::vector<sphere_system> enumerate_sphere_systems( const signature& sig )
{
    if ( sig.size() > 2 )
        throw domain_error( "sphere systems are enumerated only for up to 2 atoms" );

    const auto width = sig.valuation_count();
    const std::uint64_t all = ( std::uint64_t{ 1 } << width ) - 1;
    std::vector<sphere_system> out;

    // Each chain from K to W is an ordered partition of W - K into nonempty layers.
    std::vector<event> chain;
    std::function<void( std::uint64_t, std::uint64_t )> extend = [ & ]( std::uint64_t current, std::uint64_t rest ) {
        if ( rest == 0 )
        {
            out.push_back( { sig, chain } );
            return;
        }
        // submask enumeration runs downward; reverse it for a stable ascending listing
        std::vector<std::uint64_t> layers;
        for ( std::uint64_t layer = rest; layer != 0; layer = ( layer - 1 ) & rest )
            layers.push_back( layer );
        for ( auto it = layers.rbegin(); it != layers.rend(); ++it )
        {
            const auto next = current | *it;
            chain.push_back( event::from_mask( width, next ) );
            extend( next, rest & ~*it );
            chain.pop_back();
        }
    };

    for ( std::uint64_t k = 1; k <= all; ++k )
    {
        chain.assign( 1, event::from_mask( width, k ) );
        extend( k, all & ~k );
    }
    return out;
}

sphere_system random_sphere_system( const signature& sig, std::uint64_t seed )
{
    random_source rng( seed );
    const auto width = sig.valuation_count();
    if ( width > 64 )
        throw domain_error( "random sphere systems are limited to 6 atoms" );

    const auto k = rng.nonempty_subset( width );
    std::vector<std::size_t> outside;
    for ( std::size_t v = 0; v < width; ++v )
        if ( ( ( k >> v ) & 1U ) == 0 )
            outside.push_back( v );

    // Random ordered partition of the outside valuations: drop each into a
    // random rank, then keep the ranks that received something.
    std::vector<std::uint64_t> ranks( outside.size(), 0 );
    for ( const auto v : outside )
        ranks[ rng.below( outside.size() ) ] |= std::uint64_t{ 1 } << v;

    sphere_system system{ sig, { event::from_mask( width, k ) } };
    auto current = k;
    for ( const auto layer : ranks )
    {
        if ( layer == 0 )
            continue;
        current |= layer;
        system.spheres.push_back( event::from_mask( width, current ) );
    }
    return system;
}

} // namespace doxa
