#pragma once

// The canonical model of an AGM contraction table, and Grove-style sphere
// systems as a supply of AGM tables.

#include "doxa/frame.hpp"
#include "doxa/postulates.hpp"

#include <cstdint>
#include <vector>

namespace doxa
{

// One state per valuation (state i has valuation i), s_@ = state 0,
// B(s_@) = worlds(K), B(s) = {s} elsewhere, and f(s, E) = (K - phi') n E with
// ||phi'|| the complement of E, for every s in B(s_@).
// Throws postulate_violation for a table that is not AGM or has inconsistent K.
pointed_model build_canonical( const contraction_table& table );

struct roundtrip_report
{
    validation_report frame;
    bool belief_ok = false;
    // Events phi where contract_full(m, phi) differs from the table entry.
    std::vector<event> mismatches;

    [[nodiscard]] bool passed() const { return frame.passed() && belief_ok && mismatches.empty(); }
};

roundtrip_report verify_roundtrip( const pointed_model& m, const contraction_table& table );

// A strictly increasing chain worlds(K) = S_0 < S_1 < ... < S_k = W.
struct sphere_system
{
    signature sig;
    std::vector<event> spheres;
};

// Throws format_error unless the chain is nonempty, strictly increasing and ends in W.
void check_spheres( const sphere_system& system );

// K - phi = S_0 u (S_i n ||~phi||) for the first S_i meeting ||~phi||.
contraction_table table_from_spheres( const sphere_system& system );

// Every sphere system over the signature, ordered by K mask and then by chain.
// Only for n <= 2; the count is the sum over K of the ordered Bell number of |W - K|.
std::vector<sphere_system> enumerate_sphere_systems( const signature& sig );

sphere_system random_sphere_system( const signature& sig, std::uint64_t seed );

} // namespace doxa
