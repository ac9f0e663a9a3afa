#pragma once

// Seeded sweeps: generate frames, validate them and check the postulates on
// the contraction each one induces. Frame i uses derive_seed(seed, i), so a
// sweep is reproducible item by item and independent of the worker count.

#include "doxa/frame.hpp"
#include "doxa/postulates.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace doxa
{

struct fuzz_params
{
    generation_params generation;
    std::uint64_t seed = 0;
    std::size_t count = 1;
    // Pair sampling cap for the postulate check; 0 is exhaustive.
    std::size_t max_pairs = 0;
    std::size_t jobs = 1;
};

struct fuzz_case
{
    std::size_t index = 0;
    std::uint64_t seed = 0;
    // Set when generation gave up; the other fields are then empty.
    std::optional<std::string> error;
    std::optional<pointed_model> model;
    validation_report frame;
    // Absent above three atoms, where tables are not materialized.
    std::optional<postulate_report> postulates;
};

struct fuzz_summary
{
    std::vector<fuzz_case> cases;

    [[nodiscard]] std::size_t frame_failures() const;
    [[nodiscard]] std::size_t postulate_failures() const;
    [[nodiscard]] std::size_t generation_failures() const;
};

fuzz_case fuzz_one( const fuzz_params& params, std::size_t index );
fuzz_summary run_fuzz( const fuzz_params& params );

} // namespace doxa
