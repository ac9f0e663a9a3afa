#pragma once

// Belief change read off a pointed model: the belief set K and the
// contraction, revision and expansion it induces.

#include "doxa/frame.hpp"
#include "doxa/logic.hpp"

#include <variant>

namespace doxa
{

// K = { phi : B(s_@) is inside ||phi|| }, i.e. the valuations realized by B(s_@).
theory belief_set( const pointed_model& m );

// val[B(s_@)] u val[ union of f(s, ||~phi||_S) over s in B(s_@) ].
// Throws outside_partial_domain when ||~phi||_S is empty.
theory contract_partial( const pointed_model& m, const formula& phi );

// Falls back to K n Cn(~phi), evaluated over W, when no state falsifies phi.
theory contract_full( const pointed_model& m, const formula& phi );

// val[ union of f(s, ||phi||_S) ]; the inconsistent theory when ||phi||_S is empty.
theory revise( const pointed_model& m, const formula& phi );

// Returned by expand_modal when s_@ believes ~phi: no formula passes the
// membership test, which is not the same thing as the inconsistent theory.
struct no_members
{
    bool operator==( const no_members& ) const = default;
};

using modal_expansion = std::variant<theory, no_members>;

modal_expansion expand_modal( const pointed_model& m, const formula& phi );

// psi is in K - phi read modally: s_@ satisfies B psi and B(~phi > psi).
bool contraction_member_modal( const pointed_model& m, const formula& phi, const formula& psi );

} // namespace doxa
