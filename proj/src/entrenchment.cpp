#include "doxa/entrenchment.hpp"

#include "doxa/error.hpp"

namespace doxa
{

entrenchment_relation::entrenchment_relation( signature sig, theory k )
        : _sig{ std::move( sig ) }, _k{ std::move( k ) }, _events{ 0 }
{
    if ( _sig.size() > max_table_atoms )
        throw domain_error( "entrenchment relations are materialized only for up to 3 atoms" );
    if ( _k.worlds().width() != _sig.valuation_count() )
        throw signature_mismatch( "K is not over the relation's signature" );
    _events = std::size_t{ 1 } << _sig.valuation_count();
    _le.assign( _events * _events, false );
}

std::size_t entrenchment_relation::slot( const event& phi, const event& psi ) const
{
    if ( phi.width() != _sig.valuation_count() || psi.width() != _sig.valuation_count() )
        throw signature_mismatch( "event width does not match the relation's signature" );
    return phi.to_mask() * _events + psi.to_mask();
}

bool entrenchment_relation::le( const event& phi, const event& psi ) const
{
    return _le[ slot( phi, psi ) ];
}

bool entrenchment_relation::less( const event& phi, const event& psi ) const
{
    return le( phi, psi ) && !le( psi, phi );
}

void entrenchment_relation::add( const event& phi, const event& psi )
{
    _le[ slot( phi, psi ) ] = true;
}

std::vector<std::pair<event, event>> entrenchment_relation::pairs() const
{
    const auto width = _sig.valuation_count();
    std::vector<std::pair<event, event>> out;
    for ( std::size_t i = 0; i < _le.size(); ++i )
        if ( _le[ i ] )
            out.emplace_back( event::from_mask( width, i / _events ), event::from_mask( width, i % _events ) );
    return out;
}

entrenchment_relation entrenchment_from_contraction( const contraction_table& table )
{
    const auto report = check_postulates( table );
    if ( !report.passed() )
        throw postulate_violation( "entrenchment is read off AGM tables only; the table violates (" +
                                   std::string( postulate_id( report.counterexamples().front().which ) ) + ")" );

    entrenchment_relation relation( table.sig, table.k );
    const auto width = table.sig.valuation_count();
    const std::uint64_t events = std::uint64_t{ 1 } << width;
    for ( std::uint64_t a = 0; a < events; ++a )
    {
        const auto phi = event::from_mask( width, a );
        for ( std::uint64_t b = 0; b < events; ++b )
        {
            const auto psi = event::from_mask( width, b );
            const auto both = phi & psi;
            if ( both.is_full() || !table.at( both ).entails( phi ) )
                relation.add( phi, psi );
        }
    }
    return relation;
}

contraction_table contraction_from_entrenchment( const entrenchment_relation& relation )
{
    const auto& sig = relation.sig();
    const auto& k = relation.k().worlds();
    const auto width = sig.valuation_count();
    const std::uint64_t events = std::uint64_t{ 1 } << width;

    contraction_table table{ sig, relation.k(), {}, false };
    std::vector<bool> qualifies( events );
    for ( std::uint64_t a = 0; a < events; ++a )
    {
        const auto phi = event::from_mask( width, a );
        auto worlds = event::full( width );
        for ( std::uint64_t b = 0; b < events; ++b )
        {
            const auto psi = event::from_mask( width, b );
            qualifies[ b ] = k.is_subset_of( psi ) && ( phi.is_full() || relation.less( phi, phi | psi ) );
            if ( qualifies[ b ] )
                worlds &= psi;
        }
        // The member set is a theory only if it holds every consequence of its members.
        for ( std::uint64_t b = 0; b < events; ++b )
        {
            const auto psi = event::from_mask( width, b );
            if ( !qualifies[ b ] && worlds.is_subset_of( psi ) )
                throw ill_formed_relation( "K - phi is not deductively closed at phi = " + to_string( phi ) +
                                           ": psi = " + to_string( psi ) +
                                           " follows from the qualifying formulas but does not qualify" );
        }
        table.entries.emplace( phi, theory( std::move( worlds ) ) );
    }
    return table;
}

} // namespace doxa
