#pragma once

// Epistemic entrenchment as a relation on events over W, and the two
// bridges between entrenchment and contraction.

#include "doxa/postulates.hpp"

#include <utility>
#include <vector>

namespace doxa
{

class entrenchment_relation
{
    signature _sig;
    theory _k;
    std::size_t _events;
    std::vector<bool> _le;

public:
    // Empty relation. Requires n <= 3.
    entrenchment_relation( signature sig, theory k );

    [[nodiscard]] const signature& sig() const { return _sig; }
    [[nodiscard]] const theory& k() const { return _k; }

    // phi <= psi
    [[nodiscard]] bool le( const event& phi, const event& psi ) const;
    // phi <= psi and not psi <= phi
    [[nodiscard]] bool less( const event& phi, const event& psi ) const;
    void add( const event& phi, const event& psi );

    // Every (phi, psi) with phi <= psi, ordered by phi mask then psi mask.
    [[nodiscard]] std::vector<std::pair<event, event>> pairs() const;

    bool operator==( const entrenchment_relation& ) const = default;

private:
    [[nodiscard]] std::size_t slot( const event& phi, const event& psi ) const;
};

// phi <= psi iff phi is not in K - (phi & psi), or phi & psi is a tautology.
// Throws postulate_violation unless the table is AGM.
entrenchment_relation entrenchment_from_contraction( const contraction_table& table );

// psi in K - phi iff psi in K and (phi is a tautology or phi < phi | psi).
// Throws ill_formed_relation, naming phi and psi, when some K - phi is not a
// theory: psi follows from the qualifying formulas but does not qualify itself.
contraction_table contraction_from_entrenchment( const entrenchment_relation& relation );

} // namespace doxa
