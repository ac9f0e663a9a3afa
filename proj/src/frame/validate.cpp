#include "doxa/error.hpp"
#include "doxa/frame.hpp"
#include "doxa/rng.hpp"

#include <array>
#include <tuple>

namespace doxa
{

std::string_view clause_id( frame_clause clause )
{
    switch ( clause )
    {
    case frame_clause::seriality: return "seriality";
    case frame_clause::a1: return "4a1";
    case frame_clause::a2: return "4a2";
    case frame_clause::b: return "4b";
    case frame_clause::c: return "4c";
    case frame_clause::d: return "4d";
    case frame_clause::e1: return "4e1";
    case frame_clause::e2: return "4e2";
    }
    return "?";
}

std::optional<frame_clause> parse_clause( std::string_view id )
{
    if ( id.starts_with( "4(" ) && id.ends_with( ")" ) )
    {
        // accept the "4(c)" spelling as well
        std::string compact = "4";
        compact += id.substr( 2, id.size() - 3 );
        for ( const auto clause : all_frame_clauses )
            if ( clause_id( clause ) == compact )
                return clause;
    }
    for ( const auto clause : all_frame_clauses )
        if ( clause_id( clause ) == id )
            return clause;
    return std::nullopt;
}

bool validation_report::violates( frame_clause clause ) const
{
    return find( clause ) != nullptr;
}

const frame_violation* validation_report::find( frame_clause clause ) const
{
    for ( const auto& v : violations )
        if ( v.clause == clause )
            return &v;
    return nullptr;
}

namespace
{

// Keeps, per clause, the violation with the smallest (state, E, F) key.
class witness_tracker
{
    std::array<std::optional<frame_violation>, std::size( all_frame_clauses )> _best;

public:
    void offer( frame_clause clause, state_index s, std::uint64_t e, std::uint64_t f = 0 )
    {
        auto& slot = _best[ static_cast<std::size_t>( clause ) ];
        if ( !slot ||
             std::tuple{ s, e, f } < std::tuple{ slot->state, slot->e.bits(), slot->f.bits() } )
            slot = frame_violation{ clause, s, state_set( e ), state_set( f ) };
    }

    std::vector<frame_violation> collect() const
    {
        std::vector<frame_violation> out;
        for ( const auto& slot : _best )
            if ( slot )
                out.push_back( *slot );
        return out;
    }
};

// Selection values for the states of B(s_@), addressed by position in that set.
template <typename Lookup>
class clause_checker
{
    const std::vector<state_index>& _believed;
    std::uint64_t _believed_mask;
    Lookup& _select;
    witness_tracker& _tracker;
    std::vector<std::uint64_t> _on_e;
    std::vector<std::uint64_t> _on_x;

public:
    clause_checker( const std::vector<state_index>& believed, std::uint64_t believed_mask, Lookup& select,
                    witness_tracker& tracker )
            : _believed{ believed }, _believed_mask{ believed_mask }, _select{ select }, _tracker{ tracker },
              _on_e( believed.size() ), _on_x( believed.size() )
    {
    }

    // 4(a), 4(b), 4(c) for one event E.
    void single( std::uint64_t e )
    {
        const auto prior = _believed_mask & e;
        for ( std::size_t i = 0; i < _believed.size(); ++i )
        {
            const auto s = _believed[ i ];
            const auto chosen = _select( i, e );
            if ( chosen == 0 )
                _tracker.offer( frame_clause::a1, s, e );
            if ( ( chosen & ~e ) != 0 )
                _tracker.offer( frame_clause::a2, s, e );
            if ( ( ( e >> s ) & 1U ) != 0 && ( ( chosen >> s ) & 1U ) == 0 )
                _tracker.offer( frame_clause::b, s, e );
            if ( prior != 0 && ( chosen & ~prior ) != 0 )
                _tracker.offer( frame_clause::c, s, e );
        }
    }

    // 4(d), 4(e.1), 4(e.2) for a pair (E, F) with E & F nonempty.
    void pair( std::uint64_t e, std::uint64_t f )
    {
        const auto x = e & f;
        std::uint64_t hit = 0; // positions forming B_EF
        for ( std::size_t i = 0; i < _believed.size(); ++i )
        {
            _on_e[ i ] = _select( i, e );
            _on_x[ i ] = _select( i, x );
            if ( ( _on_e[ i ] & f & ~_on_x[ i ] ) != 0 )
                _tracker.offer( frame_clause::d, _believed[ i ], e, f );
            if ( ( _on_e[ i ] & f ) != 0 )
                hit |= std::uint64_t{ 1 } << i;
        }
        if ( hit == 0 )
            return;

        for ( std::size_t i = 0; i < _believed.size(); ++i )
        {
            if ( ( ( hit >> i ) & 1U ) != 0 )
            {
                if ( ( _on_x[ i ] & ~( _on_e[ i ] & f ) ) != 0 )
                    _tracker.offer( frame_clause::e1, _believed[ i ], e, f );
                continue;
            }
            bool covered = false;
            for ( auto rest = hit; rest != 0 && !covered; rest &= rest - 1 )
            {
                const auto j = static_cast<std::size_t>( std::countr_zero( rest ) );
                covered = ( _on_x[ i ] & ~_on_x[ j ] ) == 0;
            }
            if ( !covered )
                _tracker.offer( frame_clause::e2, _believed[ i ], e, f );
        }
    }
};

} // namespace

validation_report validate_frame( const pointed_model& m, const validation_options& options )
{
    validation_report report;
    witness_tracker tracker;

    for ( state_index s = 0; s < m.size(); ++s )
        if ( m.belief( s ).empty() )
        {
            tracker.offer( frame_clause::seriality, s, 0 );
            break;
        }

    const auto believed_set = m.believed();
    const auto believed = believed_set.members();
    const auto n = m.size();

    if ( n <= options.exhaustive_state_limit )
    {
        const std::uint64_t events = std::uint64_t{ 1 } << n;
        std::vector<std::uint64_t> dense( believed.size() * events, 0 );
        for ( std::size_t i = 0; i < believed.size(); ++i )
            for ( std::uint64_t mask = 1; mask < events; ++mask )
                dense[ i * events + mask ] = m.selection().select( believed[ i ], state_set( mask ) ).bits();

        auto lookup = [ & ]( std::size_t i, std::uint64_t mask ) { return dense[ i * events + mask ]; };
        clause_checker checker( believed, believed_set.bits(), lookup, tracker );
        for ( std::uint64_t e = 1; e < events; ++e )
        {
            checker.single( e );
            for ( std::uint64_t f = 1; f < events; ++f )
                if ( ( e & f ) != 0 )
                    checker.pair( e, f );
        }
    }
    else
    {
        report.exhaustive = false;
        random_source rng( options.seed );
        auto lookup = [ & ]( std::size_t i, std::uint64_t mask ) {
            return m.selection().select( believed[ i ], state_set( mask ) ).bits();
        };
        clause_checker checker( believed, believed_set.bits(), lookup, tracker );
        for ( std::size_t k = 0; k < options.sampled_pairs; ++k )
        {
            const auto e = rng.nonempty_subset( n );
            std::uint64_t f;
            do
                f = rng.nonempty_subset( n );
            while ( ( e & f ) == 0 );
            checker.single( e );
            checker.pair( e, f );
        }
    }

    report.violations = tracker.collect();
    return report;
}

} // namespace doxa
