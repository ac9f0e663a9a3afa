#include "../logic/parse_tree.hpp"

#include "doxa/error.hpp"
#include "doxa/frame.hpp"

#include <algorithm>

namespace doxa
{

namespace
{

// 0 for Boolean formulas, 1 once a conditional occurs, 2 once belief occurs.
int fragment_level( const node_ptr& node )
{
    switch ( node->kind )
    {
    case node_kind::atom:
        return 0;
    case node_kind::negation:
        return fragment_level( node->left );
    case node_kind::conditional:
        if ( fragment_level( node->left ) != 0 || fragment_level( node->right ) != 0 )
            throw nesting_error( "conditionals may only connect Boolean formulas" );
        return 1;
    case node_kind::belief:
        if ( fragment_level( node->left ) > 1 )
            throw nesting_error( "belief may not be applied to a formula that already contains belief" );
        return 2;
    default:
        return std::max( fragment_level( node->left ), fragment_level( node->right ) );
    }
}

node_ptr make( node_kind kind, node_ptr left, node_ptr right = nullptr )
{
    return std::make_shared<const formula_node>( formula_node{ kind, 0, std::move( left ), std::move( right ) } );
}

bool evaluate( const pointed_model& m, state_index s, const node_ptr& node )
{
    switch ( node->kind )
    {
    case node_kind::atom:
        return ( ( m.states()[ s ].val >> node->atom ) & 1U ) != 0;
    case node_kind::negation:
        return !evaluate( m, s, node->left );
    case node_kind::conjunction:
        return evaluate( m, s, node->left ) && evaluate( m, s, node->right );
    case node_kind::disjunction:
        return evaluate( m, s, node->left ) || evaluate( m, s, node->right );
    case node_kind::implication:
        return !evaluate( m, s, node->left ) || evaluate( m, s, node->right );
    case node_kind::equivalence:
        return evaluate( m, s, node->left ) == evaluate( m, s, node->right );
    case node_kind::conditional:
    {
        const auto antecedent = m.truth_set( formula::from_node( node->left ) );
        if ( antecedent.empty() )
            return true;
        const auto consequent = m.truth_set( formula::from_node( node->right ) );
        return m.select( s, antecedent ).is_subset_of( consequent );
    }
    case node_kind::belief:
    {
        const auto members = m.belief( s ).members();
        return std::all_of( members.begin(), members.end(),
                            [ & ]( state_index t ) { return evaluate( m, t, node->left ); } );
    }
    }
    return false;
}

} // namespace

modal_formula modal_formula::from_node( node_ptr root )
{
    if ( !root )
        throw nesting_error( "empty formula" );
    const auto level = fragment_level( root );
    return modal_formula( std::move( root ), level );
}

modal_formula modal_formula::boolean( const formula& f )
{
    return modal_formula( f.node(), 0 );
}

modal_formula modal_formula::conditional( const formula& antecedent, const formula& consequent )
{
    return modal_formula( make( node_kind::conditional, antecedent.node(), consequent.node() ), 1 );
}

modal_formula modal_formula::belief( const modal_formula& inner )
{
    return from_node( make( node_kind::belief, inner._root ) );
}

modal_formula modal_formula::negation( const modal_formula& f )
{
    return modal_formula( make( node_kind::negation, f._root ), f._level );
}

modal_formula modal_formula::conjunction( const modal_formula& lhs, const modal_formula& rhs )
{
    return modal_formula( make( node_kind::conjunction, lhs._root, rhs._root ), std::max( lhs._level, rhs._level ) );
}

modal_formula modal_formula::disjunction( const modal_formula& lhs, const modal_formula& rhs )
{
    return modal_formula( make( node_kind::disjunction, lhs._root, rhs._root ), std::max( lhs._level, rhs._level ) );
}

modal_formula parse_modal_formula( std::string_view text, const signature& sig )
{
    return modal_formula::from_node( detail::parse_tree( text, sig, true ) );
}

bool eval_extended( const pointed_model& m, state_index s, const modal_formula& f )
{
    if ( s >= m.size() )
        throw format_error( "state index out of range" );
    return evaluate( m, s, f.node() );
}

} // namespace doxa
