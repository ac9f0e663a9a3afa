#include "doxa/error.hpp"
#include "doxa/logic.hpp"

#include <cassert>

namespace doxa
{

namespace
{

node_ptr make_node( node_kind kind, std::size_t atom, node_ptr left, node_ptr right )
{
    return std::make_shared<const formula_node>( formula_node{ kind, atom, std::move( left ), std::move( right ) } );
}

bool is_boolean( const node_ptr& node )
{
    switch ( node->kind )
    {
    case node_kind::atom:
        return true;
    case node_kind::negation:
        return is_boolean( node->left );
    case node_kind::conditional:
    case node_kind::belief:
        return false;
    default:
        return is_boolean( node->left ) && is_boolean( node->right );
    }
}

const char* infix( node_kind kind )
{
    switch ( kind )
    {
    case node_kind::conjunction: return " & ";
    case node_kind::disjunction: return " | ";
    case node_kind::implication: return " -> ";
    case node_kind::equivalence: return " <-> ";
    case node_kind::conditional: return " > ";
    default: return "";
    }
}

bool associative( node_kind kind )
{
    return kind == node_kind::conjunction || kind == node_kind::disjunction;
}

std::string render( const node_ptr& node, const signature& sig, bool top );

// The text of a binary node without its enclosing parentheses. The left spine
// of an associative chain is flattened, so `a | b | c` prints without the
// redundant inner parentheses the parser would add.
std::string render_body( const node_ptr& node, const signature& sig )
{
    std::string body;
    if ( associative( node->kind ) && node->left->kind == node->kind )
        body = render_body( node->left, sig );
    else
        body = render( node->left, sig, false );
    body += infix( node->kind );
    body += render( node->right, sig, false );
    return body;
}

std::string render( const node_ptr& node, const signature& sig, bool top )
{
    switch ( node->kind )
    {
    case node_kind::atom:
        return sig.name( node->atom );
    case node_kind::negation:
        return "~" + render( node->left, sig, false );
    case node_kind::belief:
        return "B(" + render( node->left, sig, true ) + ")";
    default:
        break;
    }

    const bool bare = top && ( node->kind == node_kind::disjunction || node->kind == node_kind::conditional );
    const auto body = render_body( node, sig );
    return bare ? body : "(" + body + ")";
}

// Bit-parallel evaluation over all of W.
event evaluate( const node_ptr& node, const signature& sig )
{
    const auto width = sig.valuation_count();
    switch ( node->kind )
    {
    case node_kind::atom:
    {
        if ( node->atom >= sig.size() )
            throw signature_mismatch( "atom index " + std::to_string( node->atom ) + " outside signature" );
        event e( width );
        for ( std::size_t v = 0; v < width; ++v )
            if ( ( v >> node->atom ) & 1U )
                e.insert( v );
        return e;
    }
    case node_kind::negation:
        return ~evaluate( node->left, sig );
    case node_kind::conjunction:
        return evaluate( node->left, sig ) & evaluate( node->right, sig );
    case node_kind::disjunction:
        return evaluate( node->left, sig ) | evaluate( node->right, sig );
    case node_kind::implication:
        return ~evaluate( node->left, sig ) | evaluate( node->right, sig );
    case node_kind::equivalence:
    {
        const auto l = evaluate( node->left, sig );
        const auto r = evaluate( node->right, sig );
        return ( l & r ) | ( ~l & ~r );
    }
    default:
        throw nesting_error( "modal operator in a Boolean formula" );
    }
}

bool holds_at( const node_ptr& node, valuation v )
{
    switch ( node->kind )
    {
    case node_kind::atom: return ( ( v >> node->atom ) & 1U ) != 0;
    case node_kind::negation: return !holds_at( node->left, v );
    case node_kind::conjunction: return holds_at( node->left, v ) && holds_at( node->right, v );
    case node_kind::disjunction: return holds_at( node->left, v ) || holds_at( node->right, v );
    case node_kind::implication: return !holds_at( node->left, v ) || holds_at( node->right, v );
    case node_kind::equivalence: return holds_at( node->left, v ) == holds_at( node->right, v );
    default: throw nesting_error( "modal operator in a Boolean formula" );
    }
}

} // namespace

formula formula::from_node( node_ptr root )
{
    if ( !root || !is_boolean( root ) )
        throw nesting_error( "not a Boolean formula" );
    return formula( std::move( root ) );
}

formula formula::atom( std::size_t index )
{
    return formula( make_node( node_kind::atom, index, nullptr, nullptr ) );
}

formula formula::negation( const formula& f )
{
    return formula( make_node( node_kind::negation, 0, f._root, nullptr ) );
}

formula formula::conjunction( const formula& lhs, const formula& rhs )
{
    return formula( make_node( node_kind::conjunction, 0, lhs._root, rhs._root ) );
}

formula formula::disjunction( const formula& lhs, const formula& rhs )
{
    return formula( make_node( node_kind::disjunction, 0, lhs._root, rhs._root ) );
}

formula formula::implication( const formula& lhs, const formula& rhs )
{
    return formula( make_node( node_kind::implication, 0, lhs._root, rhs._root ) );
}

formula formula::equivalence( const formula& lhs, const formula& rhs )
{
    return formula( make_node( node_kind::equivalence, 0, lhs._root, rhs._root ) );
}

bool structurally_equal( const node_ptr& lhs, const node_ptr& rhs )
{
    if ( !lhs || !rhs )
        return !lhs && !rhs;
    if ( lhs->kind != rhs->kind )
        return false;
    if ( lhs->kind == node_kind::atom )
        return lhs->atom == rhs->atom;
    return structurally_equal( lhs->left, rhs->left ) && structurally_equal( lhs->right, rhs->right );
}

std::string to_string( const node_ptr& node, const signature& sig )
{
    return render( node, sig, true );
}

std::string to_string( const formula& f, const signature& sig )
{
    return render( f.node(), sig, true );
}

formula to_primitive( const formula& f )
{
    switch ( f.kind() )
    {
    case node_kind::atom:
        return f;
    case node_kind::negation:
        return formula::negation( to_primitive( f.left() ) );
    case node_kind::disjunction:
        return formula::disjunction( to_primitive( f.left() ), to_primitive( f.right() ) );
    case node_kind::conjunction:
        // a & b == ~(~a | ~b)
        return formula::negation( formula::disjunction( formula::negation( to_primitive( f.left() ) ),
                                                        formula::negation( to_primitive( f.right() ) ) ) );
    case node_kind::implication:
        return formula::disjunction( formula::negation( to_primitive( f.left() ) ), to_primitive( f.right() ) );
    case node_kind::equivalence:
    {
        // (a -> b) & (b -> a)
        const auto a = to_primitive( f.left() );
        const auto b = to_primitive( f.right() );
        const auto ab = formula::disjunction( formula::negation( a ), b );
        const auto ba = formula::disjunction( formula::negation( b ), a );
        return formula::negation( formula::disjunction( formula::negation( ab ), formula::negation( ba ) ) );
    }
    default:
        throw nesting_error( "modal operator in a Boolean formula" );
    }
}

bool holds( const formula& f, valuation v )
{
    return holds_at( f.node(), v );
}

event truth_set( const formula& f, const signature& sig )
{
    return evaluate( f.node(), sig );
}

bool is_tautology( const formula& f, const signature& sig )
{
    return truth_set( f, sig ).is_full();
}

formula synthesize_formula( const event& e, const signature& sig )
{
    if ( e.width() != sig.valuation_count() )
        throw signature_mismatch( "event width does not match signature" );

    if ( e.empty() )
        return formula::conjunction( formula::atom( 0 ), formula::negation( formula::atom( 0 ) ) );

    std::optional<formula> dnf;
    for ( const auto v : e.indices() )
    {
        std::optional<formula> minterm;
        for ( std::size_t i = 0; i < sig.size(); ++i )
        {
            auto literal = formula::atom( i );
            if ( ( ( v >> i ) & 1U ) == 0 )
                literal = formula::negation( literal );
            minterm = minterm ? formula::conjunction( *minterm, literal ) : literal;
        }
        dnf = dnf ? formula::disjunction( *dnf, *minterm ) : *minterm;
    }
    return *dnf;
}

} // namespace doxa
