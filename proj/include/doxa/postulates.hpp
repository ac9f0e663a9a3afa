#pragma once

// Contraction functions given extensionally, and an exhaustive check of the
// eight basic AGM contraction postulates over every (phi, psi) event pair.

#include "doxa/frame.hpp"
#include "doxa/logic.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace doxa
{

// K - phi for each phi, keyed by ||phi|| over W.
struct contraction_table
{
    signature sig;
    theory k;
    std::map<event, theory> entries;
    // A partial table may omit events; a total one must list all 2^(2^n).
    bool partial = false;

    [[nodiscard]] const theory& at( const event& phi ) const;
    [[nodiscard]] bool total() const;

    bool operator==( const contraction_table& ) const = default;
};

// Tables are materialized over every event, so n is capped here.
inline constexpr std::size_t max_table_atoms = 3;

enum class postulate
{
    k1 = 1,
    k2,
    k3,
    k4,
    k5,
    k6,
    k7,
    k8,
};

inline constexpr postulate all_postulates[] = {
    postulate::k1, postulate::k2, postulate::k3, postulate::k4,
    postulate::k5, postulate::k6, postulate::k7, postulate::k8,
};

// "K-1" ... "K-8"
std::string_view postulate_id( postulate p );

// One failing instance. For the single-formula postulates `psi` names the
// formula that ought (or ought not) to be in K - phi:
//   K-2: K - phi itself, K-3/K-5: K itself, K-4: phi.
// `witness` is a formula showing the failure and `world` a valuation in the
// offending difference.
struct counterexample
{
    postulate which;
    event phi;
    event psi;
    event witness;
    valuation world = 0;
};

enum class verdict
{
    structural,
    pass,
    fail,
};

struct postulate_outcome
{
    postulate which;
    verdict result = verdict::pass;
    std::size_t failures = 0;
    // Smallest by (|phi|, |psi|, phi indices, psi indices).
    std::optional<counterexample> minimal;
};

struct postulate_report
{
    std::array<postulate_outcome, 8> outcomes;
    bool exhaustive = true;
    std::size_t pairs_checked = 0;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] const postulate_outcome& outcome( postulate p ) const
    {
        return outcomes[ static_cast<std::size_t>( p ) - 1 ];
    }
    [[nodiscard]] std::vector<counterexample> counterexamples() const;
};

struct postulate_options
{
    // 0 enumerates every pair; otherwise at most this many pairs are drawn.
    std::size_t max_pairs = 0;
    std::uint64_t seed = 0;
};

// Throws partial_table unless the table is total.
postulate_report check_postulates( const contraction_table& table, const postulate_options& options = {} );

// contract_full on the canonical formula of every event. Requires n <= 3.
contraction_table table_from_model( const pointed_model& m );

// contract_partial on every event phi with ||~phi||_S nonempty.
contraction_table partial_table_from_model( const pointed_model& m );

// True iff `full` agrees with `partial` on the partial table's domain.
// Throws signature_mismatch if the tables are over different atoms.
bool is_extension( const contraction_table& partial, const contraction_table& full );

} // namespace doxa
