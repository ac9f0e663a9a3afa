#include "doxa/error.hpp"
#include "doxa/frame.hpp"
#include "doxa/rng.hpp"

#include <algorithm>
#include <numeric>

namespace doxa
{

std::vector<std::string> default_atom_names( std::size_t n )
{
    static const char* letters[] = { "p", "q", "r", "s", "t", "u", "v", "w" };
    std::vector<std::string> names;
    for ( std::size_t i = 0; i < n; ++i )
        names.push_back( i < std::size( letters ) ? letters[ i ] : "x" + std::to_string( i ) );
    return names;
}

namespace
{

// Random weak order on `states`, as tiers from most to least plausible.
ranking random_weak_order( std::vector<state_index> states, random_source& rng )
{
    if ( states.empty() )
        return {};
    rng.shuffle( states );
    std::vector<std::vector<state_index>> buckets( states.size() );
    for ( const auto s : states )
        buckets[ rng.below( states.size() ) ].push_back( s );

    ranking tiers;
    for ( const auto& bucket : buckets )
    {
        if ( bucket.empty() )
            continue;
        state_set tier;
        for ( const auto s : bucket )
            tier.insert( s );
        tiers.push_back( tier );
    }
    return tiers;
}

// Merges each pair of adjacent tiers with probability 1/2.
ranking random_coarsening( const ranking& tiers, random_source& rng )
{
    ranking out;
    for ( const auto tier : tiers )
    {
        if ( !out.empty() && rng.coin() )
            out.back() = out.back() | tier;
        else
            out.push_back( tier );
    }
    return out;
}

pointed_model sample_base( const generation_params& params, random_source& rng )
{
    signature sig( default_atom_names( params.n_atoms ) );
    const auto m = params.n_states;
    const auto width = sig.valuation_count();

    std::vector<valuation> vals( m );
    if ( params.duplicate_valuations )
    {
        for ( auto& v : vals )
            v = static_cast<valuation>( rng.below( width ) );
    }
    else
    {
        std::vector<valuation> pool( width );
        std::iota( pool.begin(), pool.end(), valuation{ 0 } );
        rng.shuffle( pool );
        std::copy_n( pool.begin(), m, vals.begin() );
        std::sort( vals.begin(), vals.end() );
    }

    std::vector<state> states;
    for ( std::size_t i = 0; i < m; ++i )
        states.push_back( { "s" + std::to_string( i ), vals[ i ] } );

    const auto actual = static_cast<state_index>( rng.below( m ) );
    std::vector<state_set> belief( m );
    for ( auto& b : belief )
        b = state_set( rng.nonempty_subset( m ) );
    const auto believed = belief[ actual ];

    std::vector<state_index> outside;
    for ( state_index s = 0; s < m; ++s )
        if ( !believed.contains( s ) )
            outside.push_back( s );
    const auto upper = random_weak_order( outside, rng );

    selection_function selection;
    if ( params.per_state_orders )
    {
        selection_function::per_state_preorder per_state;
        for ( const auto s : believed.members() )
        {
            ranking tiers{ believed };
            for ( const auto tier : random_coarsening( upper, rng ) )
                tiers.push_back( tier );
            per_state.tiers.emplace( s, std::move( tiers ) );
        }
        selection = selection_function( std::move( per_state ) );
    }
    else
    {
        ranking tiers{ believed };
        tiers.insert( tiers.end(), upper.begin(), upper.end() );
        selection = selection_function( selection_function::shared_preorder{ std::move( tiers ) } );
    }

    std::map<state_index, state_index> bridge;
    const auto anchor = *believed.first();
    for ( const auto s : outside )
        bridge.emplace( s, anchor );

    return pointed_model( std::move( sig ), std::move( states ), actual, std::move( belief ), std::move( selection ),
                          std::move( bridge ) );
}

// Applies `edit` to every ranking of a preorder-based selection function.
template <typename Edit>
std::optional<selection_function> edit_rankings( const selection_function& f, Edit&& edit )
{
    if ( const auto* shared = std::get_if<selection_function::shared_preorder>( &f.repr() ) )
        return selection_function( selection_function::shared_preorder{ edit( shared->tiers ) } );
    if ( const auto* per_state = std::get_if<selection_function::per_state_preorder>( &f.repr() ) )
    {
        auto out = *per_state;
        for ( auto& [ s, tiers ] : out.tiers )
            tiers = edit( tiers );
        return selection_function( std::move( out ) );
    }
    return std::nullopt;
}

// Orders stay orders, so (a), (d) and (e.1) survive; the edits below only
// touch how B(s_@) sits at the bottom.
std::optional<pointed_model> perturb_order( const pointed_model& base, frame_clause clause, random_source& rng )
{
    const auto believed = base.believed();
    const auto outside = base.all_states() - believed;

    if ( clause == frame_clause::b )
    {
        // Put part of B(s_@) strictly first: its other members lose weak centering.
        if ( believed.count() < 2 )
            return std::nullopt;
        state_set first;
        while ( first.empty() || first == believed )
            first = state_set( rng.nonempty_subset( base.size() ) & believed.bits() );
        auto selection = edit_rankings( base.selection(), [ & ]( ranking tiers ) {
            tiers.front() = believed - first;
            tiers.insert( tiers.begin(), first );
            return tiers;
        } );
        return base.with_selection( std::move( *selection ) );
    }

    if ( clause == frame_clause::c )
    {
        // Tie some outside states with B(s_@): they are now selected alongside it.
        if ( outside.empty() )
            return std::nullopt;
        const state_set moved( rng.nonempty_subset( base.size() ) & outside.bits() );
        if ( moved.empty() )
            return std::nullopt;
        auto selection = edit_rankings( base.selection(), [ & ]( const ranking& tiers ) {
            ranking out{ tiers.front() | moved };
            for ( std::size_t i = 1; i < tiers.size(); ++i )
                if ( const auto rest = tiers[ i ] - moved; !rest.empty() )
                    out.push_back( rest );
            return out;
        } );
        return base.with_selection( std::move( *selection ) );
    }

    // (e.2): independent orders above the shared bottom tier B(s_@). Two
    // believed states ordering three outside states in opposite ways is the
    // smallest shape that breaks it.
    if ( believed.count() < 2 || outside.count() < 3 )
        return std::nullopt;
    std::vector<state_index> above = outside.members();
    selection_function::per_state_preorder per_state;
    for ( const auto s : believed.members() )
    {
        ranking tiers{ believed };
        for ( const auto tier : random_weak_order( above, rng ) )
            tiers.push_back( tier );
        per_state.tiers.emplace( s, std::move( tiers ) );
    }
    return base.with_selection( selection_function( std::move( per_state ) ) );
}

std::optional<pointed_model> perturb( const pointed_model& base, frame_clause clause, random_source& rng )
{
    const auto m = base.size();
    const auto all = base.all_states();

    if ( clause == frame_clause::seriality )
    {
        auto belief = base.belief();
        state_index victim = base.actual();
        if ( m > 1 )
        {
            victim = static_cast<state_index>( rng.below( m - 1 ) );
            if ( victim >= base.actual() )
                ++victim;
        }
        belief[ victim ] = state_set{};
        if ( victim == base.actual() )
            return pointed_model( base.sig(), base.states(), base.actual(), std::move( belief ), base.selection() );
        return base.with_belief( std::move( belief ) );
    }

    // Order edits isolate these clauses where a single table edit cannot;
    // with too few states for them, fall through to a table edit.
    if ( clause == frame_clause::b || clause == frame_clause::c || clause == frame_clause::e2 )
        if ( auto edited = perturb_order( base, clause, rng ) )
            return edited;

    const auto believed = base.believed().members();
    auto table = selection_function::expand( base.selection(), base.believed(), m );
    const auto s = believed[ rng.below( believed.size() ) ];
    auto e = state_set( rng.nonempty_subset( m ) );
    if ( clause == frame_clause::b )
        e.insert( s );

    auto& slot = table.entries.at( { s, e } );
    state_set replacement;
    switch ( clause )
    {
    case frame_clause::a1:
        break;
    case frame_clause::a2:
        if ( e == all )
            return std::nullopt;
        replacement = slot | state_set( rng.nonempty_subset( m ) & ( all - e ).bits() );
        if ( replacement == slot )
            return std::nullopt;
        break;
    case frame_clause::b:
    {
        const auto others = e - state_set::single( s );
        if ( others.empty() )
            return std::nullopt;
        replacement = state_set( rng.nonempty_subset( m ) & others.bits() );
        if ( replacement.empty() )
            return std::nullopt;
        break;
    }
    default:
        replacement = state_set( rng.nonempty_subset( m ) & e.bits() );
        if ( replacement.empty() || replacement == slot )
            return std::nullopt;
        break;
    }
    slot = replacement;
    return base.with_selection( selection_function( std::move( table ) ) );
}

} // namespace

pointed_model generate_frame( const generation_params& params, std::uint64_t seed )
{
    if ( params.n_atoms == 0 || params.n_atoms > signature::max_atoms )
        throw format_error( "n_atoms must be between 1 and 16" );
    if ( params.n_states == 0 || params.n_states > state_set::max_states )
        throw format_error( "n_states must be between 1 and 64" );
    if ( !params.duplicate_valuations && params.n_states > ( std::size_t{ 1 } << params.n_atoms ) )
        throw format_error( "more states than valuations requires duplicate valuations" );
    if ( params.drop_clause && params.drop_clause != frame_clause::seriality && params.n_states > 8 )
        throw format_error( "clause perturbation needs an explicit table; at most 8 states" );

    // Under one shared order every believed state selects alike, so B_EF is
    // all of B(s_@) or nothing; table edits for (e.2) need differing orders.
    auto base_params = params;
    if ( params.drop_clause == frame_clause::e2 )
        base_params.per_state_orders = true;
    random_source rng( seed );
    std::optional<pointed_model> fallback;
    std::size_t since_fallback = 0;

    for ( std::size_t attempt = 0; attempt < params.max_retries; ++attempt )
    {
        auto base = sample_base( base_params, rng );
        if ( base_params.per_state_orders && !validate_frame( base ).passed() )
            continue;
        if ( !params.drop_clause )
            return base;

        auto mutated = perturb( base, *params.drop_clause, rng );
        if ( !mutated )
            continue;
        const auto report = validate_frame( *mutated );
        if ( !report.violates( *params.drop_clause ) )
            continue;
        if ( report.violations.size() == 1 )
            return *mutated;
        if ( !fallback )
            fallback = std::move( mutated );
        // prefer a clean single-clause witness, but do not search forever for one
        if ( ++since_fallback > 200 )
            break;
    }

    if ( fallback )
        return *fallback;
    throw generation_exhausted( "no frame found after " + std::to_string( params.max_retries ) + " attempts" );
}

} // namespace doxa
