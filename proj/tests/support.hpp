#pragma once

// Test-side helpers: seeded generators for formulas, events and models, and
// slow set-based reference implementations to compare the library against.

#include "doxa/frame.hpp"
#include "doxa/logic.hpp"
#include "doxa/postulates.hpp"
#include "doxa/rng.hpp"

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace doxa::test
{

inline std::string fixture( const std::string& name )
{
    return std::string( DOXA_FIXTURES ) + "/" + name;
}

using world_set = std::set<std::size_t>;

inline world_set as_set( const event& e )
{
    const auto idx = e.indices();
    return { idx.begin(), idx.end() };
}

inline event as_event( const world_set& s, std::size_t width )
{
    auto e = event( width );
    for ( const auto v : s )
        e.insert( v );
    return e;
}

inline std::set<state_index> as_set( state_set s )
{
    const auto m = s.members();
    return { m.begin(), m.end() };
}

// Truth set from a predicate over the atom values, one row at a time.
inline world_set rows_where( std::size_t n_atoms, const std::function<bool( const std::vector<bool>& )>& pred )
{
    world_set out;
    for ( std::size_t v = 0; v < ( std::size_t{ 1 } << n_atoms ); ++v )
    {
        std::vector<bool> row( n_atoms );
        for ( std::size_t a = 0; a < n_atoms; ++a )
            row[ a ] = ( ( v >> a ) & 1U ) != 0;
        if ( pred( row ) )
            out.insert( v );
    }
    return out;
}

inline formula random_formula( random_source& rng, std::size_t n_atoms, int depth )
{
    if ( depth == 0 || rng.below( 4 ) == 0 )
        return formula::atom( rng.below( n_atoms ) );
    switch ( rng.below( 6 ) )
    {
    case 0:
        return formula::negation( random_formula( rng, n_atoms, depth - 1 ) );
    case 1:
        return formula::conjunction( random_formula( rng, n_atoms, depth - 1 ),
                                     random_formula( rng, n_atoms, depth - 1 ) );
    case 2:
        return formula::disjunction( random_formula( rng, n_atoms, depth - 1 ),
                                     random_formula( rng, n_atoms, depth - 1 ) );
    case 3:
        return formula::implication( random_formula( rng, n_atoms, depth - 1 ),
                                     random_formula( rng, n_atoms, depth - 1 ) );
    case 4:
        return formula::equivalence( random_formula( rng, n_atoms, depth - 1 ),
                                     random_formula( rng, n_atoms, depth - 1 ) );
    default:
        return formula::negation( formula::negation( random_formula( rng, n_atoms, depth - 1 ) ) );
    }
}

// Independent recursive evaluator, one valuation at a time.
inline bool evaluate_naive( const node_ptr& node, std::size_t v )
{
    switch ( node->kind )
    {
    case node_kind::atom:
        return ( ( v >> node->atom ) & 1U ) != 0;
    case node_kind::negation:
        return !evaluate_naive( node->left, v );
    case node_kind::conjunction:
        return evaluate_naive( node->left, v ) && evaluate_naive( node->right, v );
    case node_kind::disjunction:
        return evaluate_naive( node->left, v ) || evaluate_naive( node->right, v );
    case node_kind::implication:
        return !evaluate_naive( node->left, v ) || evaluate_naive( node->right, v );
    case node_kind::equivalence:
        return evaluate_naive( node->left, v ) == evaluate_naive( node->right, v );
    default:
        throw std::logic_error( "not a Boolean node" );
    }
}

inline world_set truth_set_naive( const formula& f, std::size_t n_atoms )
{
    world_set out;
    for ( std::size_t v = 0; v < ( std::size_t{ 1 } << n_atoms ); ++v )
        if ( evaluate_naive( f.node(), v ) )
            out.insert( v );
    return out;
}

inline event random_event( random_source& rng, std::size_t width )
{
    auto e = event( width );
    for ( std::size_t v = 0; v < width; ++v )
        if ( rng.coin() )
            e.insert( v );
    return e;
}

inline bool subset( const world_set& a, const world_set& b )
{
    for ( const auto x : a )
        if ( !b.contains( x ) )
            return false;
    return true;
}

inline world_set unite( world_set a, const world_set& b )
{
    a.insert( b.begin(), b.end() );
    return a;
}

inline world_set meet( const world_set& a, const world_set& b )
{
    world_set out;
    for ( const auto x : a )
        if ( b.contains( x ) )
            out.insert( x );
    return out;
}

inline world_set minus( const world_set& a, const world_set& b )
{
    world_set out;
    for ( const auto x : a )
        if ( !b.contains( x ) )
            out.insert( x );
    return out;
}

// Clause ids violated by m, straight from the definitions with std::set.
// Every (E, F) pair is visited, including disjoint ones.
inline std::set<std::string> violated_clauses_naive( const pointed_model& m )
{
    std::set<std::string> out;
    const auto n = m.size();
    for ( state_index s = 0; s < n; ++s )
        if ( m.belief( s ).empty() )
            out.insert( "seriality" );

    const auto b = as_set( m.believed() );
    auto f = [ & ]( state_index s, const world_set& e ) {
        state_set mask;
        for ( const auto x : e )
            mask.insert( x );
        return as_set( m.selection().select( s, mask ) );
    };

    std::vector<world_set> events;
    for ( std::uint64_t mask = 1; mask < ( std::uint64_t{ 1 } << n ); ++mask )
    {
        world_set e;
        for ( std::size_t i = 0; i < n; ++i )
            if ( ( mask >> i ) & 1U )
                e.insert( i );
        events.push_back( e );
    }

    for ( const auto s : b )
    {
        for ( const auto& e : events )
        {
            const auto chosen = f( s, e );
            if ( chosen.empty() )
                out.insert( "4a1" );
            if ( !subset( chosen, e ) )
                out.insert( "4a2" );
            if ( e.contains( s ) && !chosen.contains( s ) )
                out.insert( "4b" );
            const auto prior = meet( world_set( b.begin(), b.end() ), e );
            if ( !prior.empty() && !subset( chosen, prior ) )
                out.insert( "4c" );
        }
    }

    for ( const auto& e : events )
    {
        for ( const auto& ff : events )
        {
            const auto x = meet( e, ff );
            if ( x.empty() )
                continue;
            std::set<state_index> b_ef;
            for ( const auto s : b )
            {
                if ( !subset( meet( f( s, e ), ff ), f( s, x ) ) )
                    out.insert( "4d" );
                if ( !meet( f( s, e ), ff ).empty() )
                    b_ef.insert( s );
            }
            for ( const auto s : b )
            {
                if ( b_ef.contains( s ) )
                {
                    if ( !subset( f( s, x ), meet( f( s, e ), ff ) ) )
                        out.insert( "4e1" );
                }
                else if ( !b_ef.empty() )
                {
                    bool covered = false;
                    for ( const auto t : b_ef )
                        covered = covered || subset( f( s, x ), f( t, x ) );
                    if ( !covered )
                        out.insert( "4e2" );
                }
            }
        }
    }
    return out;
}

// K - phi from the membership definition, by testing every candidate psi:
// psi is in K - phi iff B(s_@) and every f(s, ||~phi||_S) lie inside ||psi||.
inline world_set contract_by_membership( const pointed_model& m, const world_set& phi )
{
    const auto width = m.sig().valuation_count();
    std::set<state_index> not_phi;
    for ( state_index s = 0; s < m.size(); ++s )
        if ( !phi.contains( m.states()[ s ].val ) )
            not_phi.insert( s );
    state_set e;
    for ( const auto s : not_phi )
        e.insert( s );

    auto inside = [ & ]( state_set states, const world_set& psi ) {
        for ( const auto s : states.members() )
            if ( !psi.contains( m.states()[ s ].val ) )
                return false;
        return true;
    };

    // The theory is the intersection of its members' truth sets.
    world_set worlds;
    for ( std::size_t v = 0; v < width; ++v )
        worlds.insert( v );
    for ( std::uint64_t mask = 0; mask < ( std::uint64_t{ 1 } << width ); ++mask )
    {
        world_set psi;
        for ( std::size_t v = 0; v < width; ++v )
            if ( ( mask >> v ) & 1U )
                psi.insert( v );
        bool member = inside( m.believed(), psi );
        for ( const auto s : m.believed().members() )
            member = member && inside( m.selection().select( s, e ), psi );
        if ( member )
            worlds = meet( worlds, psi );
    }
    return worlds;
}

// Postulates failed by a total table, evaluated on formula membership: a
// theory is the set of psi-events it entails, and each postulate is read as
// a statement about those sets.
inline std::set<int> failed_postulates_naive( const contraction_table& table )
{
    const auto width = table.sig.valuation_count();
    const std::size_t events = std::size_t{ 1 } << width;
    std::vector<world_set> ev( events );
    for ( std::size_t mask = 0; mask < events; ++mask )
        for ( std::size_t v = 0; v < width; ++v )
            if ( ( mask >> v ) & 1U )
                ev[ mask ].insert( v );

    using members = std::set<std::size_t>;
    auto members_of = [ & ]( const world_set& worlds ) {
        members out;
        for ( std::size_t psi = 0; psi < events; ++psi )
            if ( subset( worlds, ev[ psi ] ) )
                out.insert( psi );
        return out;
    };
    auto included = [ & ]( const members& a, const members& b ) {
        for ( const auto x : a )
            if ( !b.contains( x ) )
                return false;
        return true;
    };

    const auto k_worlds = as_set( table.k.worlds() );
    const auto k = members_of( k_worlds );
    std::vector<members> c( events );
    std::vector<world_set> cw( events );
    for ( std::size_t phi = 0; phi < events; ++phi )
    {
        cw[ phi ] = as_set( table.at( event::from_mask( width, phi ) ).worlds() );
        c[ phi ] = members_of( cw[ phi ] );
    }

    std::set<int> failed;
    const std::size_t top = events - 1;
    for ( std::size_t phi = 0; phi < events; ++phi )
    {
        if ( !included( c[ phi ], k ) )
            failed.insert( 2 );
        if ( !k.contains( phi ) && !included( k, c[ phi ] ) )
            failed.insert( 3 );
        if ( phi != top && c[ phi ].contains( phi ) )
            failed.insert( 4 );
        // K is inside (K - phi) + phi, whose worlds are those of K - phi meeting ||phi||.
        if ( k.contains( phi ) && !included( k, members_of( meet( cw[ phi ], ev[ phi ] ) ) ) )
            failed.insert( 5 );
    }
    for ( std::size_t phi = 0; phi < events; ++phi )
        for ( std::size_t psi = 0; psi < events; ++psi )
        {
            const auto both = phi & psi;
            members common;
            for ( const auto x : c[ phi ] )
                if ( c[ psi ].contains( x ) )
                    common.insert( x );
            if ( !included( common, c[ both ] ) )
                failed.insert( 7 );
            if ( !c[ both ].contains( phi ) && !included( c[ both ], c[ phi ] ) )
                failed.insert( 8 );
        }
    return failed;
}

} // namespace doxa::test
