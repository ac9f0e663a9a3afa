#pragma once

// Pointed frames: states, an actual state, a serial belief relation and a
// Stalnaker-Lewis selection function, plus a valuation of the states.

#include "doxa/logic.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace doxa
{

using state_index = std::size_t;

// A set of model states (an event over S), bit i standing for the i-th state.
class state_set
{
    std::uint64_t _bits = 0;

public:
    static constexpr std::size_t max_states = 64;

    constexpr state_set() = default;
    constexpr explicit state_set( std::uint64_t bits ) : _bits{ bits } {}

    static constexpr state_set single( state_index s ) { return state_set( std::uint64_t{ 1 } << s ); }
    static constexpr state_set universe( std::size_t n )
    {
        return state_set( n >= 64 ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << n ) - 1 );
    }

    [[nodiscard]] constexpr std::uint64_t bits() const { return _bits; }
    [[nodiscard]] constexpr bool empty() const { return _bits == 0; }
    [[nodiscard]] constexpr std::size_t count() const { return static_cast<std::size_t>( std::popcount( _bits ) ); }
    [[nodiscard]] constexpr bool contains( state_index s ) const { return ( ( _bits >> s ) & 1U ) != 0; }
    [[nodiscard]] constexpr bool is_subset_of( state_set other ) const { return ( _bits & ~other._bits ) == 0; }
    [[nodiscard]] constexpr bool intersects( state_set other ) const { return ( _bits & other._bits ) != 0; }
    [[nodiscard]] std::optional<state_index> first() const;
    [[nodiscard]] std::vector<state_index> members() const;

    constexpr void insert( state_index s ) { _bits |= std::uint64_t{ 1 } << s; }
    constexpr void erase( state_index s ) { _bits &= ~( std::uint64_t{ 1 } << s ); }

    friend constexpr state_set operator&( state_set a, state_set b ) { return state_set( a._bits & b._bits ); }
    friend constexpr state_set operator|( state_set a, state_set b ) { return state_set( a._bits | b._bits ); }
    friend constexpr state_set operator-( state_set a, state_set b ) { return state_set( a._bits & ~b._bits ); }

    constexpr auto operator<=>( const state_set& ) const = default;
};

// Tiers of a total preorder, most plausible first; the tiers partition S.
using ranking = std::vector<state_set>;

// f(s, E) for s in B(s_@) and nonempty E, given either extensionally or as
// the minimal elements of E under a (shared or per-state) preorder.
class selection_function
{
public:
    struct explicit_table
    {
        std::map<std::pair<state_index, state_set>, state_set> entries;
    };
    struct shared_preorder
    {
        ranking tiers;
    };
    struct per_state_preorder
    {
        std::map<state_index, ranking> tiers;
    };
    using representation = std::variant<explicit_table, shared_preorder, per_state_preorder>;

private:
    representation _repr;

public:
    selection_function() : _repr{ shared_preorder{} } {}
    explicit selection_function( representation repr ) : _repr{ std::move( repr ) } {}

    [[nodiscard]] const representation& repr() const { return _repr; }

    // Throws domain_error if the table has no entry for (s, e).
    [[nodiscard]] state_set select( state_index s, state_set e ) const;

    // Materializes every f(s, E) for s in `domain` and nonempty E over n states.
    [[nodiscard]] static explicit_table expand( const selection_function& f, state_set domain, std::size_t n );
};

[[nodiscard]] state_set minimal_in( const ranking& tiers, state_set e );

struct state
{
    std::string id;
    valuation val = 0;
};

class pointed_model
{
    signature _sig;
    std::vector<state> _states;
    state_index _actual;
    std::vector<state_set> _belief;
    selection_function _selection;
    std::map<state_index, state_index> _bridge;

public:
    // Structural checks only (ids, ranges, tier partitions, bridge targets).
    // Seriality and the selection properties are validate_frame's business.
    pointed_model( signature sig, std::vector<state> states, state_index actual, std::vector<state_set> belief,
                   selection_function selection, std::map<state_index, state_index> bridge = {} );

    [[nodiscard]] const signature& sig() const { return _sig; }
    [[nodiscard]] const std::vector<state>& states() const { return _states; }
    [[nodiscard]] std::size_t size() const { return _states.size(); }
    [[nodiscard]] state_index actual() const { return _actual; }
    [[nodiscard]] const std::vector<state_set>& belief() const { return _belief; }
    [[nodiscard]] state_set belief( state_index s ) const { return _belief.at( s ); }
    // B(s_@)
    [[nodiscard]] state_set believed() const { return _belief[ _actual ]; }
    [[nodiscard]] const selection_function& selection() const { return _selection; }
    [[nodiscard]] const std::map<state_index, state_index>& bridge() const { return _bridge; }
    [[nodiscard]] state_set all_states() const { return state_set::universe( _states.size() ); }
    [[nodiscard]] std::optional<state_index> index_of( std::string_view id ) const;

    // ||phi||_S for a truth set over W.
    [[nodiscard]] state_set states_in( const event& worlds ) const;
    [[nodiscard]] state_set truth_set( const formula& f ) const { return states_in( doxa::truth_set( f, _sig ) ); }
    // val[X], a subset of W.
    [[nodiscard]] event valuations_of( state_set states ) const;

    // f(s, E), routed through the bridge for s outside B(s_@).
    [[nodiscard]] state_set select( state_index s, state_set e ) const;

    [[nodiscard]] pointed_model with_selection( selection_function selection ) const;
    [[nodiscard]] pointed_model with_belief( std::vector<state_set> belief ) const;
};

enum class frame_clause
{
    seriality,
    a1,
    a2,
    b,
    c,
    d,
    e1,
    e2,
};

inline constexpr frame_clause all_frame_clauses[] = {
    frame_clause::seriality, frame_clause::a1, frame_clause::a2, frame_clause::b,
    frame_clause::c,         frame_clause::d,  frame_clause::e1, frame_clause::e2,
};

std::string_view clause_id( frame_clause clause );
std::optional<frame_clause> parse_clause( std::string_view id );

struct frame_violation
{
    frame_clause clause;
    state_index state = 0;
    state_set e;
    state_set f;
};

struct validation_report
{
    std::vector<frame_violation> violations;
    bool exhaustive = true;

    [[nodiscard]] bool passed() const { return violations.empty(); }
    [[nodiscard]] bool violates( frame_clause clause ) const;
    [[nodiscard]] const frame_violation* find( frame_clause clause ) const;
};

struct validation_options
{
    // Above this many states, (E, F) pairs are sampled instead of enumerated.
    std::size_t exhaustive_state_limit = 8;
    std::size_t sampled_pairs = 20000;
    std::uint64_t seed = 0;
};

// Reports the first violation of each clause in (state, E, F) enumeration order.
// Throws domain_error when an explicit table is incomplete.
validation_report validate_frame( const pointed_model& m, const validation_options& options = {} );

// A formula of the restricted modal language: conditionals only between
// Boolean formulas, belief only over Boolean/conditional combinations.
class modal_formula
{
    node_ptr _root;
    int _level;

    modal_formula( node_ptr root, int level ) : _root{ std::move( root ) }, _level{ level } {}

public:
    // Throws nesting_error for trees outside the fragment.
    static modal_formula from_node( node_ptr root );
    static modal_formula boolean( const formula& f );
    static modal_formula conditional( const formula& antecedent, const formula& consequent );
    static modal_formula belief( const modal_formula& inner );
    static modal_formula negation( const modal_formula& f );
    static modal_formula conjunction( const modal_formula& lhs, const modal_formula& rhs );
    static modal_formula disjunction( const modal_formula& lhs, const modal_formula& rhs );

    [[nodiscard]] const node_ptr& node() const { return _root; }
    // 0: Boolean, 1: contains conditionals, 2: contains belief.
    [[nodiscard]] int level() const { return _level; }
};

modal_formula parse_modal_formula( std::string_view text, const signature& sig );

bool eval_extended( const pointed_model& m, state_index s, const modal_formula& f );

struct generation_params
{
    std::size_t n_atoms = 2;
    std::size_t n_states = 4;
    bool duplicate_valuations = false;
    bool per_state_orders = false;
    std::optional<frame_clause> drop_clause;
    std::size_t max_retries = 10000;
};

// Deterministic in (params, seed). Throws generation_exhausted after max_retries.
pointed_model generate_frame( const generation_params& params, std::uint64_t seed );

std::vector<std::string> default_atom_names( std::size_t n );

} // namespace doxa
