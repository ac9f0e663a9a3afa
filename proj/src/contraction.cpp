#include "doxa/contraction.hpp"
#include "doxa/error.hpp"

namespace doxa
{

namespace
{

state_set selected_union( const pointed_model& m, state_set e )
{
    state_set out;
    for ( const auto s : m.believed().members() )
        out = out | m.select( s, e );
    return out;
}

} // namespace

theory belief_set( const pointed_model& m )
{
    return theory( m.valuations_of( m.believed() ) );
}

theory contract_partial( const pointed_model& m, const formula& phi )
{
    const auto e = m.truth_set( formula::negation( phi ) );
    if ( e.empty() )
        throw outside_partial_domain( "no state of the model falsifies " + to_string( phi, m.sig() ) );
    return theory( m.valuations_of( m.believed() | selected_union( m, e ) ) );
}

theory contract_full( const pointed_model& m, const formula& phi )
{
    const auto negated = formula::negation( phi );
    if ( !m.truth_set( negated ).empty() )
        return contract_partial( m, phi );
    return intersect( belief_set( m ), theory::of( negated, m.sig() ) );
}

theory revise( const pointed_model& m, const formula& phi )
{
    const auto e = m.truth_set( phi );
    if ( e.empty() )
        return theory( event::empty_of( m.sig() ) );
    return theory( m.valuations_of( selected_union( m, e ) ) );
}

modal_expansion expand_modal( const pointed_model& m, const formula& phi )
{
    const auto believed = m.believed();
    if ( !believed.intersects( m.truth_set( phi ) ) )
        return no_members{};
    return theory( m.valuations_of( believed ) & truth_set( phi, m.sig() ) );
}

bool contraction_member_modal( const pointed_model& m, const formula& phi, const formula& psi )
{
    const auto query = modal_formula::conjunction(
            modal_formula::belief( modal_formula::boolean( psi ) ),
            modal_formula::belief( modal_formula::conditional( formula::negation( phi ), psi ) ) );
    return eval_extended( m, m.actual(), query );
}

} // namespace doxa
