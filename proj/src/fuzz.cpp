#include "doxa/fuzz.hpp"

#include "doxa/error.hpp"
#include "doxa/parallel.hpp"
#include "doxa/rng.hpp"

#include <algorithm>

namespace doxa
{

std::size_t fuzz_summary::frame_failures() const
{
    return static_cast<std::size_t>(
            std::count_if( cases.begin(), cases.end(), []( const fuzz_case& c ) { return !c.error && !c.frame.passed(); } ) );
}

std::size_t fuzz_summary::postulate_failures() const
{
    return static_cast<std::size_t>( std::count_if( cases.begin(), cases.end(), []( const fuzz_case& c ) {
        return c.postulates && !c.postulates->passed();
    } ) );
}

std::size_t fuzz_summary::generation_failures() const
{
    return static_cast<std::size_t>(
            std::count_if( cases.begin(), cases.end(), []( const fuzz_case& c ) { return c.error.has_value(); } ) );
}

fuzz_case fuzz_one( const fuzz_params& params, std::size_t index )
{
    fuzz_case out;
    out.index = index;
    out.seed = derive_seed( params.seed, index );
    try
    {
        out.model = generate_frame( params.generation, out.seed );
    }
    catch ( const generation_exhausted& e )
    {
        out.error = e.what();
        return out;
    }

    out.frame = validate_frame( *out.model, { .seed = out.seed } );
    if ( params.generation.n_atoms <= max_table_atoms )
        out.postulates = check_postulates( table_from_model( *out.model ),
                                           { .max_pairs = params.max_pairs, .seed = out.seed } );
    return out;
}

fuzz_summary run_fuzz( const fuzz_params& params )
{
    fuzz_summary summary;
    summary.cases.resize( params.count );
    parallel_for( params.count, params.jobs, [ & ]( std::size_t i ) { summary.cases[ i ] = fuzz_one( params, i ); } );
    return summary;
}

} // namespace doxa
