// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
//
//   acceptance [--freeze DIR]
//
// --freeze rewrites the regression fixture found by the 4(d) search into DIR.

#include "../support.hpp"

#include "doxa/canonical.hpp"
#include "doxa/cli.hpp"
#include "doxa/contraction.hpp"
#include "doxa/entrenchment.hpp"
#include "doxa/error.hpp"
#include "doxa/fuzz.hpp"
#include "doxa/io.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace doxa;
namespace fs = std::filesystem;

namespace
{

struct outcome
{
    bool ok = true;
    std::string detail;
    std::string first_failure;

    void fail( const std::string& why )
    {
        if ( ok )
            first_failure = why;
        ok = false;
    }
};

struct cli_result
{
    int code;
    std::string out;
};

cli_result cli( const std::vector<std::string>& args )
{
    std::ostringstream out, err;
    const int code = run( args, out, err );
    return { code, out.str() };
}

fs::path scratch_dir()
{
    const auto dir = fs::temp_directory_path() / "doxa_acceptance";
    fs::create_directories( dir );
    return dir;
}

std::string write_model( const pointed_model& m, const std::string& name )
{
    const auto path = ( scratch_dir() / name ).string();
    std::ofstream( path ) << model_to_json( m ).dump( 2 ) << '\n';
    return path;
}

std::string read_file( const std::string& path )
{
    std::ifstream in( path );
    return { std::istreambuf_iterator<char>( in ), {} };
}

// Every ordered partition of `items` into nonempty blocks.
void ordered_partitions( std::vector<state_index> items, ranking& prefix, const std::function<void( const ranking& )>& emit )
{
    if ( items.empty() )
    {
        emit( prefix );
        return;
    }
    const auto n = items.size();
    for ( std::uint64_t pick = 1; pick < ( std::uint64_t{ 1 } << n ); ++pick )
    {
        state_set block;
        std::vector<state_index> rest;
        for ( std::size_t i = 0; i < n; ++i )
            if ( ( pick >> i ) & 1U )
                block.insert( items[ i ] );
            else
                rest.push_back( items[ i ] );
        prefix.push_back( block );
        ordered_partitions( rest, prefix, emit );
        prefix.pop_back();
    }
}

// All shared-preorder frames over the four valuations of {p, q}: every actual
// state, every nonempty B(s_@), every ordering of the remaining states above it.
// Non-actual states believe either themselves or exactly what s_@ believes.
std::vector<pointed_model> exhaustive_n2_frames()
{
    const signature sig( default_atom_names( 2 ) );
    std::vector<state> states;
    for ( valuation v = 0; v < 4; ++v )
        states.push_back( { "s" + std::to_string( v ), v } );

    std::vector<pointed_model> out;
    for ( state_index actual = 0; actual < 4; ++actual )
        for ( std::uint64_t b = 1; b < 16; ++b )
        {
            const state_set believed( b );
            std::vector<state_index> outside;
            for ( state_index s = 0; s < 4; ++s )
                if ( !believed.contains( s ) )
                    outside.push_back( s );
            std::map<state_index, state_index> bridge;
            for ( const auto s : outside )
                bridge.emplace( s, *believed.first() );

            ranking prefix{ believed };
            ordered_partitions( outside, prefix, [ & ]( const ranking& tiers ) {
                for ( const bool self_belief : { true, false } )
                {
                    std::vector<state_set> belief( 4 );
                    for ( state_index s = 0; s < 4; ++s )
                        belief[ s ] = self_belief ? state_set::single( s ) : believed;
                    belief[ actual ] = believed;
                    out.emplace_back( sig, states, actual, std::move( belief ),
                                      selection_function( selection_function::shared_preorder{ tiers } ), bridge );
                }
            } );
        }
    return out;
}

std::vector<sphere_system> sphere_family( std::size_t n3_samples, std::uint64_t seed )
{
    auto out = enumerate_sphere_systems( signature( default_atom_names( 2 ) ) );
    const signature sig3( default_atom_names( 3 ) );
    for ( std::size_t i = 0; i < n3_samples; ++i )
        out.push_back( random_sphere_system( sig3, derive_seed( seed, i ) ) );
    return out;
}

std::string describe_failures( const postulate_report& report )
{
    std::string out;
    for ( const auto& o : report.outcomes )
        if ( o.result == verdict::fail )
            out += std::string( out.empty() ? "" : "," ) + std::string( postulate_id( o.which ) );
    return out;
}

// 1. Frames satisfying every clause yield contractions satisfying every postulate.
outcome frames_satisfy_postulates( const std::vector<pointed_model>& exhaustive )
{
    outcome r;
    const auto start = std::chrono::steady_clock::now();

    std::size_t through_cli = 0;
    for ( std::size_t i = 0; i < exhaustive.size(); ++i )
    {
        if ( !validate_frame( exhaustive[ i ] ).passed() )
        {
            r.fail( "exhaustive frame " + std::to_string( i ) + " is not a valid frame" );
            continue;
        }
        const auto path = write_model( exhaustive[ i ], "exhaustive.model" );
        const auto res = cli( { "verify-agm", "--model", path } );
        ++through_cli;
        if ( res.code != exit_code::ok )
            r.fail( "verify-agm rejected exhaustive frame " + std::to_string( i ) + ": " + res.out );
    }

    constexpr std::size_t random_frames = 1200;
    std::size_t n3_frames = 0;
    for ( std::size_t i = 0; i < random_frames; ++i )
    {
        random_source rng( derive_seed( 0xacce55, i ) );
        const auto n_atoms = 1 + rng.below( 3 );
        const auto n_states = 1 + rng.below( 6 );
        const generation_params params{ .n_atoms = n_atoms,
                                        .n_states = n_states,
                                        .duplicate_valuations = true,
                                        .per_state_orders = rng.below( 4 ) == 0 };
        const auto m = generate_frame( params, rng.bits() );
        if ( !validate_frame( m ).passed() )
        {
            r.fail( "random frame " + std::to_string( i ) + " failed validation" );
            continue;
        }
        const postulate_options options{ .max_pairs = n_atoms == 3 ? std::size_t{ 2000 } : std::size_t{ 0 }, .seed = i };
        n3_frames += n_atoms == 3;
        const auto report = check_postulates( table_from_model( m ), options );
        if ( !report.passed() )
            r.fail( "random frame " + std::to_string( i ) + " fails " + describe_failures( report ) );
    }

    const auto seconds =
            std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
    if ( seconds > 300 )
        r.fail( "took " + std::to_string( seconds ) + "s" );
    std::ostringstream d;
    d << exhaustive.size() << " exhaustive n=2 frames via verify-agm (" << through_cli << " runs, 256 pairs each), "
      << random_frames << " random frames (" << n3_frames << " at n=3 with 2000 sampled pairs), " << std::fixed
      << std::setprecision( 1 ) << seconds << "s";
    r.detail = d.str();
    return r;
}

// 2. Sphere tables survive the canonical construction.
outcome canonical_roundtrip( const std::vector<sphere_system>& family )
{
    outcome r;
    for ( std::size_t i = 0; i < family.size(); ++i )
    {
        const auto table = table_from_spheres( family[ i ] );
        if ( !check_postulates( table ).passed() )
        {
            r.fail( "sphere table " + std::to_string( i ) + " is not AGM" );
            continue;
        }
        const auto m = build_canonical( table );
        const auto report = verify_roundtrip( m, table );
        if ( !report.passed() )
            r.fail( "system " + std::to_string( i ) + ": " + std::to_string( report.frame.violations.size() ) +
                    " frame violations, " + std::to_string( report.mismatches.size() ) + " mismatched events" );
    }
    r.detail = std::to_string( family.size() ) + " sphere systems (75 at n=2)";
    return r;
}

// 3. Consistency, expansion and splitting identities on random instances.
outcome identity_suites()
{
    constexpr std::size_t cases = 10000;
    outcome r;

    for ( std::size_t i = 0; i < cases; ++i )
    {
        random_source rng( derive_seed( 1, i ) );
        const generation_params params{ .n_atoms = 1 + rng.below( 3 ),
                                        .n_states = 1 + rng.below( 6 ),
                                        .duplicate_valuations = true };
        const auto m = generate_frame( params, rng.bits() );
        if ( !belief_set( m ).consistent() )
            r.fail( "serial model " + std::to_string( i ) + " has an inconsistent belief set" );
    }

    for ( std::size_t i = 0; i < cases; ++i )
    {
        random_source rng( derive_seed( 2, i ) );
        const auto n = 1 + rng.below( 4 );
        const signature sig( default_atom_names( n ) );
        const theory a( test::random_event( rng, sig.valuation_count() ) );
        const auto alpha = test::random_formula( rng, n, 4 );
        const auto expected = a.worlds() & test::as_event( test::truth_set_naive( alpha, n ), sig.valuation_count() );
        if ( expand_theory( a, alpha, sig ).worlds() != expected )
            r.fail( "expansion case " + std::to_string( i ) );
    }

    for ( std::size_t i = 0; i < cases; ++i )
    {
        random_source rng( derive_seed( 3, i ) );
        const auto n = 1 + rng.below( 3 );
        const signature sig( default_atom_names( n ) );
        const theory a( test::random_event( rng, sig.valuation_count() ) );
        const auto phi = test::random_formula( rng, n, 3 );
        const auto not_phi = formula::negation( phi );
        if ( intersect( expand_theory( a, phi, sig ), expand_theory( a, not_phi, sig ) ) != a )
            r.fail( "split case " + std::to_string( i ) );

        const auto m = generate_frame( { .n_atoms = n, .n_states = 1 + rng.below( 6 ), .duplicate_valuations = true },
                                       rng.bits() );
        const auto c = contract_full( m, phi );
        if ( intersect( belief_set( m ), expand_theory( c, not_phi, sig ) ) != c )
            r.fail( "recovery-shape case " + std::to_string( i ) );
    }
    r.detail = "3 x " + std::to_string( cases ) + " instances";
    return r;
}

// 4. Set-based and modal membership in K - phi agree.
outcome modal_consistency( const std::vector<pointed_model>& exhaustive )
{
    outcome r;
    std::size_t checked = 0;
    for ( std::size_t i = 0; i < exhaustive.size(); ++i )
    {
        const auto& m = exhaustive[ i ];
        const auto& sig = m.sig();
        for ( std::uint64_t p = 0; p < 16; ++p )
        {
            const auto phi_event = event::from_mask( 4, p );
            if ( m.states_in( ~phi_event ).empty() )
                continue;
            const auto phi = synthesize_formula( phi_event, sig );
            const auto c = contract_partial( m, phi );
            for ( std::uint64_t q = 0; q < 16; ++q )
            {
                const auto psi_event = event::from_mask( 4, q );
                const bool by_sets = c.entails( psi_event );
                const bool by_modal = contraction_member_modal( m, phi, synthesize_formula( psi_event, sig ) );
                ++checked;
                if ( by_sets != by_modal )
                    r.fail( "frame " + std::to_string( i ) + " phi=" + to_string( phi_event ) +
                            " psi=" + to_string( psi_event ) );
            }
        }
    }
    r.detail = std::to_string( checked ) + " (phi, psi) pairs over " + std::to_string( exhaustive.size() ) + " frames";
    return r;
}

// 5. Broken frames are caught, and broken (d) eventually breaks (K-7).
outcome mutation_sensitivity( const std::optional<fs::path>& freeze_dir )
{
    outcome r;
    for ( const auto& [ name, clause ] : std::vector<std::pair<std::string, std::string>>{
                  { "drop4b.model", "4b" }, { "only4c.model", "4c" }, { "drop4d.model", "4d" } } )
    {
        const auto res = cli( { "--format", "machine", "check-frame", test::fixture( name ) } );
        const auto doc = json::parse( res.out );
        if ( res.code != exit_code::failed || doc[ "violations" ].size() != 1 ||
             doc[ "violations" ][ 0 ][ "clause" ] != clause )
            r.fail( name + " is not rejected for exactly " + clause );
    }

    for ( const auto* name : { "only4c.model", "drop4c.model" } )
    {
        const auto res = cli( { "--format", "machine", "verify-agm", "--model", test::fixture( name ) } );
        const auto doc = json::parse( res.out );
        bool k3 = false;
        for ( const auto& c : doc[ "counterexamples" ] )
            k3 = k3 || c[ "postulate" ] == "K-3";
        if ( res.code != exit_code::failed || !k3 )
            r.fail( std::string( name ) + " yields no K-3 counterexample (exit " + std::to_string( res.code ) + ")" );
    }

    const fuzz_params params{ .generation = { .n_atoms = 2, .n_states = 4, .drop_clause = frame_clause::d },
                              .seed = 42 };
    std::optional<fuzz_case> found;
    std::size_t tried = 0;
    for ( ; tried < 10000 && !found; ++tried )
    {
        auto c = fuzz_one( params, tried );
        if ( c.postulates && c.postulates->outcome( postulate::k7 ).result == verdict::fail )
            found = std::move( c );
    }
    if ( !found )
    {
        r.fail( "no K-7 counterexample in 10000 perturbed frames" );
        return r;
    }

    const auto frozen_name = std::string( "found_4d_k7.model" );
    if ( freeze_dir )
        std::ofstream( *freeze_dir / frozen_name ) << model_to_json( *found->model ).dump( 2 ) << '\n';
    try
    {
        if ( model_to_json( load_model( test::fixture( frozen_name ) ) ) != model_to_json( *found->model ) )
            r.fail( "search result differs from " + frozen_name );
        const auto res = cli( { "--format", "machine", "verify-agm", "--model", test::fixture( frozen_name ) } );
        const auto doc = json::parse( res.out );
        bool k7 = false;
        for ( const auto& c : doc[ "counterexamples" ] )
            k7 = k7 || c[ "postulate" ] == "K-7";
        if ( !k7 )
            r.fail( frozen_name + " no longer fails K-7" );
    }
    catch ( const doxa::error& e )
    {
        r.fail( e.what() );
    }
    r.detail = "4b/4c/4d rejected; K-7 found at perturbation #" + std::to_string( found->index ) + " of " +
               std::to_string( tried );
    return r;
}

// 6. Contraction -> entrenchment -> contraction is the identity on AGM tables.
outcome entrenchment_roundtrip( const std::vector<sphere_system>& family )
{
    outcome r;
    for ( std::size_t i = 0; i < family.size(); ++i )
    {
        const auto table = table_from_spheres( family[ i ] );
        try
        {
            if ( contraction_from_entrenchment( entrenchment_from_contraction( table ) ) != table )
                r.fail( "system " + std::to_string( i ) + " does not round trip" );
        }
        catch ( const doxa::error& e )
        {
            r.fail( "system " + std::to_string( i ) + ": " + e.what() );
        }
    }
    r.detail = std::to_string( family.size() ) + " sphere systems (75 at n=2)";
    return r;
}

// 7. Every event is the truth set of its synthesized formula.
outcome logic_roundtrip()
{
    outcome r;
    std::size_t events = 0;
    for ( std::size_t n = 1; n <= 3; ++n )
    {
        const signature sig( default_atom_names( n ) );
        const auto width = sig.valuation_count();
        for ( std::uint64_t mask = 0; mask < ( std::uint64_t{ 1 } << width ); ++mask )
        {
            const auto e = event::from_mask( width, mask );
            const auto f = synthesize_formula( e, sig );
            ++events;
            if ( truth_set( f, sig ) != e )
                r.fail( "n=" + std::to_string( n ) + " event " + to_string( e ) );
            if ( truth_set( parse_formula( to_string( f, sig ), sig ), sig ) != e )
                r.fail( "n=" + std::to_string( n ) + " event " + to_string( e ) + " after printing" );
        }
    }
    r.detail = std::to_string( events ) + " events for n = 1..3";
    return r;
}

// 8. Machine output does not depend on the run or the worker count.
outcome determinism()
{
    outcome r;
    const std::vector<std::vector<std::string>> commands{
            { "fuzz", "--atoms", "2", "--states", "4", "--seed", "7", "--count", "200" },
            { "fuzz", "--atoms", "3", "--states", "6", "--seed", "8", "--count", "40", "--duplicates" },
            { "fuzz", "--atoms", "2", "--states", "4", "--seed", "9", "--count", "60", "--drop", "4d" },
            { "--max-pairs", "300", "verify-agm", "--model", test::fixture( "drop4c.model" ) },
            { "check-frame", test::fixture( "example2.model" ) },
            { "entrench", "--from-table", test::fixture( "pq.table" ) },
    };
    for ( const auto& command : commands )
    {
        std::optional<std::string> reference;
        for ( const auto* jobs : { "1", "1", "3", "8" } )
        {
            std::vector<std::string> args{ "--format", "machine", "--jobs", jobs };
            args.insert( args.end(), command.begin(), command.end() );
            const auto out = cli( args ).out;
            if ( !reference )
                reference = out;
            else if ( out != *reference )
                r.fail( "output of '" + command[ 0 ] + "' changed with --jobs " + jobs );
        }
    }

    std::optional<std::string> canonical;
    for ( int i = 0; i < 2; ++i )
    {
        const auto path = ( scratch_dir() / ( "canonical" + std::to_string( i ) + ".model" ) ).string();
        cli( { "canonical", "--spheres", test::fixture( "pq.spheres" ), "--out", path } );
        const auto text = read_file( path );
        if ( canonical && text != *canonical )
            r.fail( "canonical --out differs between runs" );
        canonical = text;
    }
    r.detail = std::to_string( commands.size() ) + " commands x 4 runs (jobs 1,1,3,8), canonical --out x 2";
    return r;
}

} // namespace

int main( int argc, char** argv )
{
    std::optional<fs::path> freeze_dir;
    for ( int i = 1; i < argc; ++i )
        if ( std::string( argv[ i ] ) == "--freeze" && i + 1 < argc )
            freeze_dir = argv[ ++i ];

    const auto exhaustive = exhaustive_n2_frames();
    const auto family_200 = sphere_family( 200, 0x5be7e );
    const auto family_100 = sphere_family( 100, 0xe27e );

    const std::vector<std::pair<std::string, std::function<outcome()>>> criteria{
            { "frames satisfying 4(a)-4(e) give AGM contractions", [ & ] { return frames_satisfy_postulates( exhaustive ); } },
            { "canonical model round trip", [ & ] { return canonical_roundtrip( family_200 ); } },
            { "belief set, expansion and split suites", [] { return identity_suites(); } },
            { "set and modal membership agree", [ & ] { return modal_consistency( exhaustive ); } },
            { "mutation sensitivity", [ & ] { return mutation_sensitivity( freeze_dir ); } },
            { "entrenchment round trip", [ & ] { return entrenchment_roundtrip( family_100 ); } },
            { "logic round trip", [] { return logic_roundtrip(); } },
            { "deterministic output", [] { return determinism(); } },
    };

    bool all = true;
    for ( std::size_t i = 0; i < criteria.size(); ++i )
    {
        outcome o;
        try
        {
            o = criteria[ i ].second();
        }
        catch ( const std::exception& e )
        {
            o.fail( std::string( "exception: " ) + e.what() );
        }
        all = all && o.ok;
        std::cout << ( o.ok ? "PASS" : "FAIL" ) << " criterion " << i + 1 << ": " << criteria[ i ].first;
        if ( !o.detail.empty() )
            std::cout << " [" << o.detail << "]";
        if ( !o.ok )
            std::cout << " first failure: " << o.first_failure;
        std::cout << std::endl;
    }
    return all ? 0 : 1;
}
