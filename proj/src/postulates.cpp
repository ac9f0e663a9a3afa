#include "doxa/postulates.hpp"

#include "doxa/contraction.hpp"
#include "doxa/error.hpp"
#include "doxa/rng.hpp"

#include <bit>

namespace doxa
{

const theory& contraction_table::at( const event& phi ) const
{
    const auto it = entries.find( phi );
    if ( it == entries.end() )
        throw partial_table( "contraction table has no entry for " + to_string( phi ) );
    return it->second;
}

bool contraction_table::total() const
{
    return sig.size() <= max_table_atoms && entries.size() == ( std::size_t{ 1 } << sig.valuation_count() );
}

std::string_view postulate_id( postulate p )
{
    static constexpr std::string_view ids[] = { "K-1", "K-2", "K-3", "K-4", "K-5", "K-6", "K-7", "K-8" };
    return ids[ static_cast<std::size_t>( p ) - 1 ];
}

bool postulate_report::passed() const
{
    for ( const auto& o : outcomes )
        if ( o.result == verdict::fail )
            return false;
    return true;
}

std::vector<counterexample> postulate_report::counterexamples() const
{
    std::vector<counterexample> out;
    for ( const auto& o : outcomes )
        if ( o.minimal )
            out.push_back( *o.minimal );
    return out;
}

namespace
{

using mask = std::uint64_t;

bool subset( mask a, mask b ) { return ( a & ~b ) == 0; }

int popcount( mask a ) { return std::popcount( a ); }

// Lexicographic comparison of the ascending index lists of two equal-size masks.
bool indices_less( mask a, mask b )
{
    while ( a != 0 && b != 0 )
    {
        const auto ia = std::countr_zero( a );
        const auto ib = std::countr_zero( b );
        if ( ia != ib )
            return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

struct raw_failure
{
    mask phi;
    mask psi;
    mask witness;
    mask difference;
};

bool smaller( const raw_failure& lhs, const raw_failure& rhs )
{
    if ( popcount( lhs.phi ) != popcount( rhs.phi ) )
        return popcount( lhs.phi ) < popcount( rhs.phi );
    if ( popcount( lhs.psi ) != popcount( rhs.psi ) )
        return popcount( lhs.psi ) < popcount( rhs.psi );
    if ( lhs.phi != rhs.phi )
        return indices_less( lhs.phi, rhs.phi );
    return indices_less( lhs.psi, rhs.psi );
}

struct tally
{
    std::size_t failures = 0;
    std::optional<raw_failure> minimal;

    void record( const raw_failure& f )
    {
        ++failures;
        if ( !minimal || smaller( f, *minimal ) )
            minimal = f;
    }
};

class checker
{
    std::size_t _width;
    mask _all;
    mask _k;
    std::vector<mask> _result;

public:
    std::array<tally, 8> tallies;

    explicit checker( const contraction_table& table )
            : _width{ table.sig.valuation_count() },
              _all{ _width >= 64 ? ~mask{ 0 } : ( mask{ 1 } << _width ) - 1 },
              _k{ table.k.worlds().to_mask() }
    {
        _result.resize( std::size_t{ 1 } << _width );
        for ( mask phi = 0; phi < _result.size(); ++phi )
            _result[ phi ] = table.at( event::from_mask( _width, phi ) ).worlds().to_mask();
    }

    [[nodiscard]] std::size_t event_count() const { return _result.size(); }

    void single( mask phi )
    {
        const auto r = _result[ phi ];
        if ( !subset( _k, r ) )
            fail( postulate::k2, { phi, r, r, _k & ~r } );
        if ( !subset( _k, phi ) && !subset( r, _k ) )
            fail( postulate::k3, { phi, _k, _k, r & ~_k } );
        if ( phi != _all && subset( r, phi ) )
            fail( postulate::k4, { phi, phi, phi, ~phi & _all } );
        if ( subset( _k, phi ) && !subset( r & phi, _k ) )
            fail( postulate::k5, { phi, _k, _k, r & phi & ~_k } );
    }

    void pair( mask phi, mask psi )
    {
        const auto both = _result[ phi & psi ];
        const auto left = _result[ phi ];
        const auto right = _result[ psi ];
        if ( !subset( both, left | right ) )
            fail( postulate::k7, { phi, psi, left | right, both & ~( left | right ) } );
        if ( !subset( both, phi ) && !subset( left, both ) )
            fail( postulate::k8, { phi, psi, both, left & ~both } );
    }

private:
    void fail( postulate p, const raw_failure& f ) { tallies[ static_cast<std::size_t>( p ) - 1 ].record( f ); }
};

} // namespace

postulate_report check_postulates( const contraction_table& table, const postulate_options& options )
{
    if ( table.partial || !table.total() )
        throw partial_table( "postulate checks quantify over every event; the table is not total" );
    if ( table.k.worlds().width() != table.sig.valuation_count() )
        throw signature_mismatch( "K is not over the table's signature" );

    checker c( table );
    const auto n = c.event_count();
    for ( mask phi = 0; phi < n; ++phi )
        c.single( phi );

    postulate_report report;
    const auto total_pairs = n * n;
    if ( options.max_pairs == 0 || options.max_pairs >= total_pairs )
    {
        for ( mask phi = 0; phi < n; ++phi )
            for ( mask psi = 0; psi < n; ++psi )
                c.pair( phi, psi );
        report.pairs_checked = total_pairs;
    }
    else
    {
        random_source rng( options.seed );
        for ( std::size_t i = 0; i < options.max_pairs; ++i )
        {
            const auto phi = rng.below( n );
            const auto psi = rng.below( n );
            c.pair( phi, psi );
        }
        report.pairs_checked = options.max_pairs;
        report.exhaustive = false;
    }

    const auto width = table.sig.valuation_count();
    for ( const auto p : all_postulates )
    {
        auto& out = report.outcomes[ static_cast<std::size_t>( p ) - 1 ];
        out.which = p;
        if ( p == postulate::k1 || p == postulate::k6 )
        {
            out.result = verdict::structural;
            continue;
        }
        const auto& t = c.tallies[ static_cast<std::size_t>( p ) - 1 ];
        out.failures = t.failures;
        if ( !t.minimal )
            continue;
        out.result = verdict::fail;
        const auto& f = *t.minimal;
        out.minimal = counterexample{ p,
                                      event::from_mask( width, f.phi ),
                                      event::from_mask( width, f.psi ),
                                      event::from_mask( width, f.witness ),
                                      static_cast<valuation>( std::countr_zero( f.difference ) ) };
    }
    return report;
}

namespace
{

void require_table_size( const signature& sig )
{
    if ( sig.size() > max_table_atoms )
        throw domain_error( "contraction tables are materialized only for up to 3 atoms" );
}

} // namespace

contraction_table table_from_model( const pointed_model& m )
{
    require_table_size( m.sig() );
    contraction_table table{ m.sig(), belief_set( m ), {}, false };
    const auto width = m.sig().valuation_count();
    for ( mask e = 0; e < ( mask{ 1 } << width ); ++e )
    {
        auto phi = event::from_mask( width, e );
        table.entries.emplace( phi, contract_full( m, synthesize_formula( phi, m.sig() ) ) );
    }
    return table;
}

contraction_table partial_table_from_model( const pointed_model& m )
{
    require_table_size( m.sig() );
    contraction_table table{ m.sig(), belief_set( m ), {}, true };
    const auto width = m.sig().valuation_count();
    for ( mask e = 0; e < ( mask{ 1 } << width ); ++e )
    {
        auto phi = event::from_mask( width, e );
        const auto f = synthesize_formula( phi, m.sig() );
        if ( m.truth_set( formula::negation( f ) ).empty() )
            continue;
        table.entries.emplace( phi, contract_partial( m, f ) );
    }
    return table;
}

bool is_extension( const contraction_table& partial, const contraction_table& full )
{
    if ( partial.sig != full.sig )
        throw signature_mismatch( "tables are over different signatures" );
    if ( partial.k != full.k )
        return false;
    for ( const auto& [ phi, result ] : partial.entries )
    {
        const auto it = full.entries.find( phi );
        if ( it == full.entries.end() || it->second != result )
            return false;
    }
    return true;
}

} // namespace doxa
