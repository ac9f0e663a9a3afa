#pragma once

// Finite propositional core: signatures, events over the valuation space,
// Boolean formulas and deductively closed theories.

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace doxa
{

// Index of a valuation in W. Atom i is true in valuation v iff bit i of v is set.
using valuation = std::uint32_t;

class signature
{
    std::vector<std::string> _atoms;

public:
    static constexpr std::size_t max_atoms = 16;

    // Throws format_error unless 1 <= n <= 16 and names are distinct identifiers.
    explicit signature( std::vector<std::string> atoms );

    [[nodiscard]] std::size_t size() const { return _atoms.size(); }
    [[nodiscard]] const std::vector<std::string>& atoms() const { return _atoms; }
    [[nodiscard]] const std::string& name( std::size_t atom ) const { return _atoms.at( atom ); }
    [[nodiscard]] std::optional<std::size_t> index_of( std::string_view name ) const;

    // |W| = 2^n
    [[nodiscard]] std::size_t valuation_count() const { return std::size_t{ 1 } << _atoms.size(); }

    bool operator==( const signature& ) const = default;
};

[[nodiscard]] bool is_identifier( std::string_view name );

// A set of valuations, i.e. a subset of W, as a fixed-width bit vector.
class event
{
    boost::dynamic_bitset<std::uint64_t> _bits;

    explicit event( boost::dynamic_bitset<std::uint64_t> bits ) : _bits{ std::move( bits ) } {}

public:
    event() = default;
    explicit event( std::size_t width ) : _bits( width ) {}

    static event empty_of( const signature& sig ) { return event( sig.valuation_count() ); }
    static event full_of( const signature& sig );
    static event full( std::size_t width );
    // Requires width <= 64.
    static event from_mask( std::size_t width, std::uint64_t mask );
    // Throws format_error on an index outside [0, width).
    static event from_indices( std::size_t width, std::span<const std::size_t> indices );

    [[nodiscard]] std::size_t width() const { return _bits.size(); }
    [[nodiscard]] std::size_t count() const { return _bits.count(); }
    [[nodiscard]] bool empty() const { return _bits.none(); }
    [[nodiscard]] bool is_full() const { return _bits.all(); }
    [[nodiscard]] bool contains( std::size_t v ) const { return _bits.test( v ); }
    [[nodiscard]] std::optional<std::size_t> first() const;

    void insert( std::size_t v ) { _bits.set( v ); }
    void erase( std::size_t v ) { _bits.reset( v ); }

    [[nodiscard]] bool is_subset_of( const event& other ) const;
    [[nodiscard]] bool intersects( const event& other ) const;

    [[nodiscard]] std::uint64_t to_mask() const;
    // Sorted ascending.
    [[nodiscard]] std::vector<std::size_t> indices() const;

    event operator~() const { return event( ~_bits ); }
    event& operator&=( const event& other );
    event& operator|=( const event& other );
    event& operator-=( const event& other );

    friend event operator&( event lhs, const event& rhs ) { return lhs &= rhs; }
    friend event operator|( event lhs, const event& rhs ) { return lhs |= rhs; }
    friend event operator-( event lhs, const event& rhs ) { return lhs -= rhs; }

    bool operator==( const event& other ) const { return _bits == other._bits; }
    // Any strict weak order works for keyed containers; this one is numeric on the mask.
    bool operator<( const event& other ) const;
};

// Orders events by (cardinality, sorted index list). Used to pick minimal witnesses.
[[nodiscard]] bool canonical_less( const event& lhs, const event& rhs );

std::string to_string( const event& e );

enum class node_kind
{
    atom,
    negation,
    conjunction,
    disjunction,
    implication,
    equivalence,
    conditional,
    belief,
};

struct formula_node;
using node_ptr = std::shared_ptr<const formula_node>;

struct formula_node
{
    node_kind kind;
    std::size_t atom = 0;
    node_ptr left;
    node_ptr right;
};

// A Boolean formula: atoms closed under the classical connectives.
class formula
{
    node_ptr _root;

    explicit formula( node_ptr root ) : _root{ std::move( root ) } {}

public:
    // Throws nesting_error if the tree contains a modal node.
    static formula from_node( node_ptr root );

    static formula atom( std::size_t index );
    static formula negation( const formula& f );
    static formula conjunction( const formula& lhs, const formula& rhs );
    static formula disjunction( const formula& lhs, const formula& rhs );
    static formula implication( const formula& lhs, const formula& rhs );
    static formula equivalence( const formula& lhs, const formula& rhs );

    [[nodiscard]] node_kind kind() const { return _root->kind; }
    [[nodiscard]] std::size_t atom_index() const { return _root->atom; }
    [[nodiscard]] formula left() const { return formula( _root->left ); }
    [[nodiscard]] formula right() const { return formula( _root->right ); }
    [[nodiscard]] const node_ptr& node() const { return _root; }
};

[[nodiscard]] bool structurally_equal( const node_ptr& lhs, const node_ptr& rhs );
[[nodiscard]] inline bool structurally_equal( const formula& lhs, const formula& rhs )
{
    return structurally_equal( lhs.node(), rhs.node() );
}

// Grammar: atoms, '~'/'!', '&', '|', '->', '<->', parentheses.
// Binding strength ~ > & > | > -> > <->; '->' associates to the right.
formula parse_formula( std::string_view text, const signature& sig );

// Binary nodes are parenthesized except for a top-level disjunction chain;
// chains of the same associative connective are flattened.
std::string to_string( const formula& f, const signature& sig );
std::string to_string( const node_ptr& node, const signature& sig );

// Rewrites And/Implies/Iff in terms of negation and disjunction only.
formula to_primitive( const formula& f );

[[nodiscard]] bool holds( const formula& f, valuation v );
event truth_set( const formula& f, const signature& sig );
[[nodiscard]] bool is_tautology( const formula& f, const signature& sig );

// Canonical full DNF: minterms in valuation order, literals in atom order.
// The empty event yields `p0 & ~p0` over the first atom.
formula synthesize_formula( const event& e, const signature& sig );

// A deductively closed set of Boolean formulas, represented by the set of
// valuations satisfying all of its members. Empty worlds is the inconsistent theory.
class theory
{
    event _worlds;

public:
    explicit theory( event worlds ) : _worlds{ std::move( worlds ) } {}

    static theory of( const formula& f, const signature& sig ) { return theory( truth_set( f, sig ) ); }
    static theory tautologies( const signature& sig ) { return theory( event::full_of( sig ) ); }

    [[nodiscard]] const event& worlds() const { return _worlds; }
    [[nodiscard]] bool consistent() const { return !_worlds.empty(); }
    [[nodiscard]] bool entails( const event& e ) const { return _worlds.is_subset_of( e ); }

    bool operator==( const theory& ) const = default;
};

// psi in Cn(t)
[[nodiscard]] bool cn_member( const theory& t, const formula& f, const signature& sig );

// Cn(t u {f})
theory expand_theory( const theory& t, const formula& f, const signature& sig );

// Set intersection of two theories (the union of their world sets).
theory intersect( const theory& lhs, const theory& rhs );

} // namespace doxa
