#include "doxa/cli.hpp"

#include "doxa/canonical.hpp"
#include "doxa/contraction.hpp"
#include "doxa/entrenchment.hpp"
#include "doxa/error.hpp"
#include "doxa/fuzz.hpp"
#include "doxa/io.hpp"
#include "doxa/postulates.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

namespace doxa
{

namespace
{

struct global_options
{
    std::string format = "text";
    std::size_t max_pairs = 0;
    std::size_t jobs = 1;

    [[nodiscard]] bool machine() const { return format == "machine"; }
};

void emit( std::ostream& out, const json& doc )
{
    out << doc.dump( 2 ) << '\n';
}

std::string describe( state_set s, const pointed_model& m )
{
    std::string text = "{";
    for ( const auto i : s.members() )
    {
        if ( text.size() > 1 )
            text += ", ";
        text += m.states()[ i ].id;
    }
    return text + "}";
}

json state_list( state_set s, const pointed_model& m )
{
    auto out = json::array();
    for ( const auto i : s.members() )
        out.push_back( m.states()[ i ].id );
    return out;
}

bool pair_clause( frame_clause c )
{
    return c == frame_clause::d || c == frame_clause::e1 || c == frame_clause::e2;
}

json frame_report_json( const validation_report& report, const pointed_model& m )
{
    auto violations = json::array();
    for ( const auto& v : report.violations )
    {
        json item{ { "clause", clause_id( v.clause ) }, { "state", m.states()[ v.state ].id } };
        if ( v.clause != frame_clause::seriality )
            item[ "E" ] = state_list( v.e, m );
        if ( pair_clause( v.clause ) )
            item[ "F" ] = state_list( v.f, m );
        violations.push_back( item );
    }
    return { { "verdict", report.passed() ? "pass" : "fail" },
             { "exhaustive", report.exhaustive },
             { "violations", violations } };
}

void print_frame_report( std::ostream& out, const validation_report& report, const pointed_model& m )
{
    out << "frame: " << ( report.passed() ? "pass" : "fail" ) << ( report.exhaustive ? "" : " (sampled)" ) << '\n';
    for ( const auto& v : report.violations )
    {
        const auto& id = m.states()[ v.state ].id;
        out << "  " << clause_id( v.clause ) << " at " << id;
        if ( v.clause == frame_clause::seriality )
            out << ": B(" << id << ") is empty";
        else
            out << ": E = " << describe( v.e, m );
        if ( pair_clause( v.clause ) )
            out << ", F = " << describe( v.f, m );
        out << '\n';
    }
}

std::string_view verdict_name( verdict v )
{
    switch ( v )
    {
    case verdict::structural:
        return "structural";
    case verdict::pass:
        return "pass";
    case verdict::fail:
        return "fail";
    }
    return "?";
}

json postulate_report_json( const postulate_report& report, const signature& sig )
{
    auto outcomes = json::array();
    for ( const auto& o : report.outcomes )
        outcomes.push_back( { { "postulate", postulate_id( o.which ) },
                              { "verdict", verdict_name( o.result ) },
                              { "failures", o.failures } } );
    auto records = json::array();
    for ( const auto& c : report.counterexamples() )
        records.push_back( { { "postulate", postulate_id( c.which ) },
                             { "phi", event_to_json( c.phi ) },
                             { "psi", event_to_json( c.psi ) },
                             { "witness", to_string( synthesize_formula( c.witness, sig ), sig ) },
                             { "world", c.world } } );
    return { { "verdict", report.passed() ? "pass" : "fail" },
             { "exhaustive", report.exhaustive },
             { "pairs_checked", report.pairs_checked },
             { "postulates", outcomes },
             { "counterexamples", records } };
}

void print_postulate_report( std::ostream& out, const postulate_report& report, const signature& sig )
{
    const auto dnf = [ & ]( const event& e ) { return to_string( synthesize_formula( e, sig ), sig ); };
    for ( const auto& o : report.outcomes )
    {
        out << '(' << postulate_id( o.which ) << ") " << verdict_name( o.result );
        if ( o.result == verdict::structural )
            out << " (holds by representation)";
        if ( o.minimal )
        {
            const auto& c = *o.minimal;
            out << ", " << o.failures << " failing instance" << ( o.failures == 1 ? "" : "s" ) << "; smallest: phi "
                << to_string( c.phi ) << " = " << dnf( c.phi ) << ", psi " << to_string( c.psi ) << " = "
                << dnf( c.psi ) << ", witness " << dnf( c.witness ) << ", world " << c.world;
        }
        out << '\n';
    }
    out << "postulates: " << ( report.passed() ? "pass" : "fail" ) << " (" << report.pairs_checked << " pairs, "
        << ( report.exhaustive ? "exhaustive" : "sampled" ) << ")\n";
}

void print_theory( std::ostream& out, const global_options& g, const theory& t, const signature& sig )
{
    if ( g.machine() )
    {
        emit( out, theory_to_json( t, sig ) );
        return;
    }
    out << "worlds: " << to_string( t.worlds() ) << '\n';
    out << "dnf: " << to_string( synthesize_formula( t.worlds(), sig ), sig ) << '\n';
}

void write_file( const std::string& path, const json& doc )
{
    std::ofstream file( path );
    if ( !file )
        throw format_error( path + ": cannot write file" );
    file << doc.dump( 2 ) << '\n';
}

} // namespace

int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Belief contraction from doxastic frames, with AGM postulate checks", "doxa" };
    app.require_subcommand( 1 );
    app.fallthrough();

    global_options g;
    app.add_option( "--format", g.format, "Output format" )->check( CLI::IsMember( { "text", "machine" } ) );
    app.add_option( "--max-pairs", g.max_pairs, "Cap on sampled (phi, psi) pairs; 0 checks every pair" );
    app.add_option( "--jobs", g.jobs, "Worker threads for sweeps" )->check( CLI::PositiveNumber );

    std::string model_path, phi_text, psi_text, table_path, spheres_path, out_path, from_table, to_table;
    bool partial = false, modal = false;

    auto* check_frame = app.add_subcommand( "check-frame", "Validate a pointed model's frame conditions" );
    check_frame->add_option( "model", model_path, "Model file" )->required();

    auto* contract = app.add_subcommand( "contract", "Contract the model's belief set by a formula" );
    contract->add_option( "model", model_path, "Model file" )->required();
    contract->add_option( "--phi", phi_text, "Formula to contract by" )->required();
    contract->add_flag( "--partial", partial, "Fail instead of falling back when no state falsifies phi" );
    contract->add_flag( "--modal", modal, "Test one formula for membership through B psi & B(~phi > psi)" );
    contract->add_option( "--psi", psi_text, "Formula tested with --modal" );

    auto* revise_cmd = app.add_subcommand( "revise", "Revise the model's belief set by a formula" );
    revise_cmd->add_option( "model", model_path, "Model file" )->required();
    revise_cmd->add_option( "--phi", phi_text, "Formula to revise by" )->required();

    auto* expand = app.add_subcommand( "expand", "Expand the belief set syntactically and modally" );
    expand->add_option( "model", model_path, "Model file" )->required();
    expand->add_option( "--phi", phi_text, "Formula to expand by" )->required();

    auto* verify = app.add_subcommand( "verify-agm", "Check postulates K-1 to K-8 on a contraction" );
    auto* verify_model = verify->add_option( "--model", model_path, "Model inducing the contraction" );
    auto* verify_table = verify->add_option( "--table", table_path, "Contraction table file" );
    verify_model->excludes( verify_table );

    auto* canonical = app.add_subcommand( "canonical", "Build the canonical model of an AGM table" );
    auto* canonical_table = canonical->add_option( "--table", table_path, "Contraction table file" );
    auto* canonical_spheres = canonical->add_option( "--spheres", spheres_path, "Sphere system file" );
    canonical_table->excludes( canonical_spheres );
    canonical->add_option( "--out", out_path, "Write the model here instead of standard output" );

    auto* entrench = app.add_subcommand( "entrench", "Translate between contraction and entrenchment" );
    auto* entrench_from = entrench->add_option( "--from-table", from_table, "Table to read entrenchment off" );
    auto* entrench_to = entrench->add_option( "--to-table", to_table, "Relation to turn into a table" );
    entrench_from->excludes( entrench_to );

    fuzz_params fuzz;
    std::string drop;
    auto* fuzz_cmd = app.add_subcommand( "fuzz", "Generate seeded frames and check each one" );
    fuzz_cmd->add_option( "--atoms", fuzz.generation.n_atoms, "Number of atoms" )->capture_default_str();
    fuzz_cmd->add_option( "--states", fuzz.generation.n_states, "Number of states" )->capture_default_str();
    fuzz_cmd->add_option( "--seed", fuzz.seed, "Sweep seed" )->capture_default_str();
    fuzz_cmd->add_option( "--count", fuzz.count, "Number of frames" )->capture_default_str();
    fuzz_cmd->add_option( "--drop", drop, "Perturb frames until this clause fails (4a1 ... 4e2, seriality)" );
    fuzz_cmd->add_flag( "--per-state-orders", fuzz.generation.per_state_orders, "Let plausibility orders vary by state" );
    fuzz_cmd->add_flag( "--duplicates", fuzz.generation.duplicate_valuations, "Allow states to share valuations" );

    try
    {
        std::vector<std::string> reversed( args.rbegin(), args.rend() );
        app.parse( reversed );
    }
    catch ( const CLI::CallForHelp& )
    {
        out << app.help();
        return exit_code::ok;
    }
    catch ( const CLI::CallForAllHelp& )
    {
        out << app.help( "", CLI::AppFormatMode::All );
        return exit_code::ok;
    }
    catch ( const CLI::ParseError& e )
    {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    }

    try
    {
        if ( check_frame->parsed() )
        {
            const auto m = load_model( model_path );
            const auto report = validate_frame( m );
            if ( g.machine() )
                emit( out, frame_report_json( report, m ) );
            else
                print_frame_report( out, report, m );
            return report.passed() ? exit_code::ok : exit_code::failed;
        }

        if ( contract->parsed() )
        {
            const auto m = load_model( model_path );
            const auto phi = parse_formula( phi_text, m.sig() );
            if ( modal )
            {
                if ( psi_text.empty() )
                {
                    err << "error: --modal needs --psi\n";
                    return exit_code::usage;
                }
                const auto psi = parse_formula( psi_text, m.sig() );
                const bool member = contraction_member_modal( m, phi, psi );
                if ( g.machine() )
                    emit( out, { { "member", member } } );
                else
                    out << "member: " << ( member ? "true" : "false" ) << '\n';
                return exit_code::ok;
            }
            print_theory( out, g, partial ? contract_partial( m, phi ) : contract_full( m, phi ), m.sig() );
            return exit_code::ok;
        }

        if ( revise_cmd->parsed() )
        {
            const auto m = load_model( model_path );
            print_theory( out, g, revise( m, parse_formula( phi_text, m.sig() ) ), m.sig() );
            return exit_code::ok;
        }

        if ( expand->parsed() )
        {
            const auto m = load_model( model_path );
            const auto phi = parse_formula( phi_text, m.sig() );
            const auto syntactic = expand_theory( belief_set( m ), phi, m.sig() );
            const auto modal_result = expand_modal( m, phi );
            const auto* modal_theory = std::get_if<theory>( &modal_result );
            const bool diverges = modal_theory == nullptr || *modal_theory != syntactic;
            if ( g.machine() )
            {
                emit( out, { { "syntactic", theory_to_json( syntactic, m.sig() ) },
                             { "modal", modal_theory ? theory_to_json( *modal_theory, m.sig() ) : json( "no members" ) },
                             { "diverges", diverges } } );
            }
            else
            {
                out << "syntactic: " << to_string( syntactic.worlds() ) << " = "
                    << to_string( synthesize_formula( syntactic.worlds(), m.sig() ), m.sig() ) << '\n';
                if ( modal_theory )
                    out << "modal: " << to_string( modal_theory->worlds() ) << " = "
                        << to_string( synthesize_formula( modal_theory->worlds(), m.sig() ), m.sig() ) << '\n';
                else
                    out << "modal: no members (B~phi holds at the actual state)\n";
            }
            if ( diverges )
                err << "warning: the modal expansion differs from K+phi; phi contradicts the belief set\n";
            return exit_code::ok;
        }

        if ( verify->parsed() )
        {
            if ( model_path.empty() == table_path.empty() )
            {
                err << "error: verify-agm needs exactly one of --model and --table\n";
                return exit_code::usage;
            }
            const auto table = table_path.empty() ? table_from_model( load_model( model_path ) ) : load_table( table_path );
            const auto report = check_postulates( table, { .max_pairs = g.max_pairs, .seed = 0 } );
            if ( g.machine() )
                emit( out, postulate_report_json( report, table.sig ) );
            else
                print_postulate_report( out, report, table.sig );
            return report.passed() ? exit_code::ok : exit_code::failed;
        }

        if ( canonical->parsed() )
        {
            if ( table_path.empty() == spheres_path.empty() )
            {
                err << "error: canonical needs exactly one of --table and --spheres\n";
                return exit_code::usage;
            }
            const auto table = table_path.empty() ? table_from_spheres( load_spheres( spheres_path ) ) : load_table( table_path );
            const auto m = build_canonical( table );
            const auto report = verify_roundtrip( m, table );

            auto mismatches = json::array();
            for ( const auto& phi : report.mismatches )
                mismatches.push_back( event_to_json( phi ) );
            const json roundtrip{ { "frame", frame_report_json( report.frame, m ) },
                                  { "belief_set", report.belief_ok ? "match" : "mismatch" },
                                  { "mismatches", mismatches },
                                  { "verdict", report.passed() ? "pass" : "fail" } };

            if ( !out_path.empty() )
                write_file( out_path, model_to_json( m ) );
            if ( g.machine() )
            {
                json doc{ { "roundtrip", roundtrip } };
                if ( out_path.empty() )
                    doc[ "model" ] = model_to_json( m );
                emit( out, doc );
            }
            else
            {
                if ( out_path.empty() )
                    emit( out, model_to_json( m ) );
                print_frame_report( out, report.frame, m );
                out << "belief set: " << ( report.belief_ok ? "match" : "mismatch" ) << '\n';
                out << "contractions: " << ( table.entries.size() - report.mismatches.size() ) << " of "
                    << table.entries.size() << " match\n";
                for ( const auto& phi : report.mismatches )
                    out << "  mismatch at phi " << to_string( phi ) << '\n';
                out << "roundtrip: " << ( report.passed() ? "pass" : "fail" ) << '\n';
            }
            return report.passed() ? exit_code::ok : exit_code::failed;
        }

        if ( entrench->parsed() )
        {
            if ( from_table.empty() == to_table.empty() )
            {
                err << "error: entrench needs exactly one of --from-table and --to-table\n";
                return exit_code::usage;
            }
            // Both directions emit a file in the documented format, whatever --format says.
            if ( !from_table.empty() )
                emit( out, relation_to_json( entrenchment_from_contraction( load_table( from_table ) ) ) );
            else
                emit( out, table_to_json( contraction_from_entrenchment( load_relation( to_table ) ) ) );
            return exit_code::ok;
        }

        if ( fuzz_cmd->parsed() )
        {
            if ( !drop.empty() )
            {
                fuzz.generation.drop_clause = parse_clause( drop );
                if ( !fuzz.generation.drop_clause )
                {
                    err << "error: unknown clause '" << drop << "'\n";
                    return exit_code::usage;
                }
            }
            fuzz.max_pairs = g.max_pairs;
            fuzz.jobs = g.jobs;

            const auto summary = run_fuzz( fuzz );
            if ( g.machine() )
            {
                auto cases = json::array();
                for ( const auto& c : summary.cases )
                {
                    json item{ { "index", c.index }, { "seed", c.seed } };
                    if ( c.error )
                        item[ "error" ] = *c.error;
                    else
                        item[ "frame" ] = frame_report_json( c.frame, *c.model );
                    if ( c.postulates )
                        item[ "postulates" ] = postulate_report_json( *c.postulates, c.model->sig() );
                    cases.push_back( item );
                }
                emit( out, { { "cases", cases },
                             { "summary",
                               { { "frames", summary.cases.size() },
                                 { "frame_failures", summary.frame_failures() },
                                 { "postulate_failures", summary.postulate_failures() },
                                 { "generation_failures", summary.generation_failures() } } } } );
            }
            else
            {
                for ( const auto& c : summary.cases )
                {
                    out << "#" << c.index << " seed " << c.seed << ": ";
                    if ( c.error )
                    {
                        out << "generation failed (" << *c.error << ")\n";
                        continue;
                    }
                    out << "frame " << ( c.frame.passed() ? "pass" : "fail" );
                    for ( const auto& v : c.frame.violations )
                        out << ' ' << clause_id( v.clause );
                    if ( c.postulates )
                    {
                        out << ", postulates " << ( c.postulates->passed() ? "pass" : "fail" );
                        for ( const auto& cx : c.postulates->counterexamples() )
                            out << ' ' << postulate_id( cx.which );
                    }
                    out << '\n';
                }
                out << summary.cases.size() << " frames, " << summary.frame_failures() << " frame failures, "
                    << summary.postulate_failures() << " postulate failures, " << summary.generation_failures()
                    << " generation failures\n";
            }
            const bool clean = summary.frame_failures() == 0 && summary.postulate_failures() == 0 &&
                               summary.generation_failures() == 0;
            return clean ? exit_code::ok : exit_code::failed;
        }
    }
    catch ( const outside_partial_domain& e )
    {
        err << "error: " << e.what() << '\n';
        return exit_code::outside_domain;
    }
    catch ( const postulate_violation& e )
    {
        err << "error: " << e.what() << '\n';
        return exit_code::failed;
    }
    catch ( const ill_formed_relation& e )
    {
        err << "error: " << e.what() << '\n';
        return exit_code::failed;
    }
    catch ( const error& e )
    {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    }
    return exit_code::usage;
}

} // namespace doxa
