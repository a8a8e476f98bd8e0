// hmlt: model checking, may/must testing and formula/test translation for
// recursive Hennessy-Milner logic over finite LTSs.

#include "hml/compilers.hpp"
#include "hml/error.hpp"
#include "hml/experiment.hpp"
#include "hml/formula_io.hpp"
#include "hml/harness.hpp"
#include "hml/lts_io.hpp"
#include "hml/semantics.hpp"
#include "hml/test_io.hpp"
#include "hml/test_lts.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace
{

enum exit_code
{
    exit_ok = 0,
    exit_false = 1,
    exit_input = 2,
    exit_harness = 3,
};

std::string read_file( const fs::path& path )
{
    std::ifstream in( path );
    if ( !in )
        throw hml::domain_error( "cannot read " + path.string() );
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

// An argument that names an existing file is read, anything else is taken
// literally.
std::string file_or_literal( const std::string& arg )
{
    std::error_code ec;
    if ( fs::is_regular_file( arg, ec ) )
        return read_file( arg );
    return arg;
}

bool starts_with_lts_header( std::string_view text )
{
    std::istringstream in{ std::string( text ) };
    std::string token;
    while ( in >> token )
    {
        if ( token.front() == '#' )
        {
            std::getline( in, token );
            continue;
        }
        return token == "lts";
    }
    return false;
}

// A test given as a term or as an LTS file. Terms are explored; an LTS is
// used as is, rooted at its initial state.
struct LoadedTest
{
    hml::Lts lts;
    hml::StateId root = 0;
    std::vector< hml::Test > terms;
    std::string text;
};

LoadedTest load_test( const std::string& arg, std::size_t cap )
{
    auto text = file_or_literal( arg );
    if ( starts_with_lts_header( text ) )
    {
        auto lts = hml::parse_lts( text );
        auto root = lts.initial();
        auto canonical = hml::to_text( lts );
        return { std::move( lts ), root, {}, std::move( canonical ) };
    }
    auto term = hml::parse_test( text );
    auto explored = hml::reachable_lts( term, cap );
    return { std::move( explored.lts ), explored.root, std::move( explored.terms ), hml::to_string( term ) };
}

std::string test_state_label( const LoadedTest& test, hml::StateId s )
{
    return test.terms.empty() ? test.lts.state_name( s ) : hml::to_string( test.terms[ s ] );
}

void print_json( const ordered_json& value ) { std::cout << value.dump( 2 ) << '\n'; }

struct Common
{
    std::string format = "text";
    std::size_t cap = hml::default_exploration_cap;

    bool json() const { return format == "json"; }
};

void add_common( CLI::App& app, Common& common )
{
    app.add_option( "--format", common.format, "Output format" )
        ->check( CLI::IsMember( { "text", "json" } ) );
    app.add_option( "--cap", common.cap, "Test exploration cap (states)" )->check( CLI::PositiveNumber );
}

int run_check( const Common& common, const std::string& lts_path, const std::string& state, const std::string& formula )
{
    auto lts = hml::load_lts( lts_path );
    auto phi = hml::parse_formula( file_or_literal( formula ) );
    if ( !phi.is_closed() )
        throw hml::domain_error( "formula has free variable " + phi.free_vars().front() );
    auto s = lts.state( state );
    bool holds = hml::interpret( lts, phi ).contains( s );
    if ( common.json() )
        print_json( { { "state", state }, { "formula", hml::to_string( phi ) }, { "holds", holds } } );
    else
        std::cout << "holds=" << ( holds ? "true" : "false" ) << '\n';
    return holds ? exit_ok : exit_false;
}

int run_testing( const Common& common, bool must_verb, const std::string& lts_path, const std::string& state,
                 const std::string& test_arg, bool witness )
{
    auto lts = hml::load_lts( lts_path );
    auto test = load_test( test_arg, common.cap );
    auto p = lts.state( state );
    auto graph = hml::parallel_compose( lts, test.lts, p, test.root );
    bool may = hml::may_satisfy( graph );
    bool must = hml::must_satisfy( graph );

    std::optional< hml::Computation > trace;
    if ( witness )
        trace = must_verb ? hml::must_counterexample( graph ) : hml::may_witness( graph );
    std::vector< std::string > steps;
    if ( trace )
        for ( auto c : trace->path )
        {
            const auto& conf = graph.config( c );
            steps.push_back( lts.state_name( conf.process ) + " | " + test_state_label( test, conf.test ) );
        }

    if ( common.json() )
    {
        ordered_json out = { { "state", state }, { "may", may }, { "must", must } };
        if ( witness )
        {
            if ( trace )
            {
                out[ "witness" ] = steps;
                out[ "loop" ] = trace->loop_start ? ordered_json( *trace->loop_start ) : ordered_json( nullptr );
            }
            else
                out[ "witness" ] = nullptr;
        }
        print_json( out );
    }
    else
    {
        std::cout << "may=" << ( may ? "true" : "false" ) << " must=" << ( must ? "true" : "false" ) << '\n';
        for ( const auto& step : steps )
            std::cout << step << '\n';
        if ( trace && trace->loop_start )
            std::cout << "loop " << *trace->loop_start << '\n';
    }
    return ( must_verb ? must : may ) ? exit_ok : exit_false;
}

int run_compile_formula( const Common& common, const std::string& mode, const std::string& formula )
{
    auto phi = hml::parse_formula( file_or_literal( formula ) );
    auto test = mode == "must" ? hml::formula_to_must_test( phi ) : hml::formula_to_may_test( phi );
    if ( common.json() )
        print_json( { { "mode", mode }, { "formula", hml::to_string( phi ) }, { "test", hml::to_string( test ) } } );
    else
        std::cout << hml::to_string( test ) << '\n';
    return exit_ok;
}

int run_compile_test( const Common& common, const std::string& mode, const std::string& test_arg, bool show_system )
{
    auto test = load_test( test_arg, common.cap );
    std::vector< std::string > labels;
    for ( const auto& term : test.terms )
        labels.push_back( hml::canonical_key( term ) );
    auto system = mode == "must" ? hml::must_system( test.lts, test.root, labels )
                                 : hml::may_system( test.lts, test.root, labels );
    auto phi = hml::bekic_eliminate( system );
    if ( common.json() )
    {
        ordered_json out = { { "mode", mode }, { "test", test.text } };
        if ( show_system )
        {
            out[ "system" ] = ordered_json::array();
            for ( std::size_t i = 0; i < system.vars.size(); ++i )
                out[ "system" ].push_back( { { "var", system.vars[ i ] },
                                             { "body", hml::to_string( system.bodies[ i ] ) } } );
        }
        out[ "formula" ] = hml::to_string( phi );
        print_json( out );
    }
    else
    {
        if ( show_system )
            std::cout << hml::to_string( system );
        std::cout << hml::to_string( phi ) << '\n';
    }
    return exit_ok;
}

void emit_counterexamples( const hml::TrialReport& report, const fs::path& dir )
{
    fs::create_directories( dir );
    for ( const auto& check : report.checks )
    {
        if ( !check.counterexample )
            continue;
        const auto& x = *check.counterexample;
        auto write = [ & ]( const std::string& ext, const std::string& content ) {
            if ( content.empty() )
                return;
            std::ofstream out( dir / ( x.check + ext ) );
            out << content;
            if ( content.back() != '\n' )
                out << '\n';
        };
        write( ".lts", x.lts );
        write( ".formula", x.formula );
        write( ".other_formula", x.other_formula );
        write( ".test", x.test );
        std::ostringstream summary;
        summary << "check " << x.check << "\ntrial " << x.trial << "\n";
        if ( !x.state.empty() )
            summary << "state " << x.state << '\n';
        summary << "expected " << x.expected << "\nactual " << x.actual << '\n';
        write( ".txt", summary.str() );
    }
}

int run_verify( const Common& common, const hml::TrialConfig& cfg, const hml::HarnessOptions& options,
                const std::string& emit_dir )
{
    auto report = hml::verify_theorems( cfg, options );
    std::cout << ( common.json() ? hml::to_json( report ) : hml::to_text( report ) );
    if ( !emit_dir.empty() )
        emit_counterexamples( report, emit_dir );
    return report.passed() ? exit_ok : exit_harness;
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "Hennessy-Milner logic with recursion: model checking, may/must testing and translations" };
    app.require_subcommand( 1 );

    Common common;
    std::string lts_path, state, subject, mode = "must";
    bool witness = false;
    bool show_system = false;

    auto* check = app.add_subcommand( "check", "Does a state satisfy a closed formula?" );
    check->add_option( "lts", lts_path, "LTS file" )->required();
    check->add_option( "state", state, "State name" )->required();
    check->add_option( "formula", subject, "Formula file or literal" )->required();
    add_common( *check, common );

    CLI::App* testing[ 2 ];
    const char* verbs[ 2 ] = { "may", "must" };
    for ( int i = 0; i < 2; ++i )
    {
        testing[ i ] = app.add_subcommand( verbs[ i ], std::string( "Does a state " ) + verbs[ i ] + "-satisfy a test?" );
        testing[ i ]->add_option( "lts", lts_path, "Process LTS file" )->required();
        testing[ i ]->add_option( "state", state, "Process state name" )->required();
        testing[ i ]->add_option( "test", subject, "Test term, test file or test LTS file" )->required();
        testing[ i ]->add_flag( "--witness", witness,
                                "Print a successful computation (may) or an unsuccessful one (must)" );
        add_common( *testing[ i ], common );
    }

    auto* compile_formula = app.add_subcommand( "compile-formula", "Translate a formula into a test" );
    compile_formula->add_option( "--mode", mode, "must or may" )->check( CLI::IsMember( { "must", "may" } ) );
    compile_formula->add_option( "--formula", subject, "Formula file or literal" )->required();
    add_common( *compile_formula, common );

    auto* compile_test = app.add_subcommand( "compile-test", "Translate a test into a formula" );
    compile_test->add_option( "--mode", mode, "must or may" )->check( CLI::IsMember( { "must", "may" } ) );
    compile_test->add_option( "--test", subject, "Test term, test file or test LTS file" )->required();
    compile_test->add_flag( "--show-system", show_system, "Also print the equation system before elimination" );
    add_common( *compile_test, common );

    hml::TrialConfig cfg;
    hml::HarnessOptions options;
    std::string emit_dir;
    auto* verify = app.add_subcommand( "verify", "Run the randomized verification harness" );
    verify->add_option( "--seed", cfg.seed, "Random seed" );
    verify->add_option( "--trials", cfg.trials, "Number of trials" );
    verify->add_option( "--max-states", cfg.max_states, "Largest process LTS" );
    verify->add_option( "--alphabet-size", cfg.alphabet_size, "Visible actions" );
    verify->add_option( "--max-formula-depth", cfg.max_formula_depth, "Largest formula depth" );
    verify->add_option( "--max-test-depth", cfg.max_test_depth, "Largest test depth" );
    verify->add_option( "--tau-density", cfg.tau_density, "Probability of a tau transition" );
    verify->add_option( "--divergence-bias", cfg.divergence_bias, "Probability of an injected tau self-loop" );
    verify->add_option( "--guard-bias", cfg.guard_bias, "Probability of a guarded binder occurrence" );
    verify->add_option( "--threads", options.threads, "Worker threads (0: all cores)" );
    verify->add_flag( "--mutate", options.mutate, "Break the must-test compiler on purpose" );
    verify->add_option( "--emit-counterexamples", emit_dir, "Write counterexample files to this directory" );
    add_common( *verify, common );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::ParseError& e )
    {
        int code = app.exit( e );
        return code == 0 ? exit_ok : exit_input;
    }

    try
    {
        if ( check->parsed() )
            return run_check( common, lts_path, state, subject );
        for ( int i = 0; i < 2; ++i )
            if ( testing[ i ]->parsed() )
                return run_testing( common, i == 1, lts_path, state, subject, witness );
        if ( compile_formula->parsed() )
            return run_compile_formula( common, mode, subject );
        if ( compile_test->parsed() )
            return run_compile_test( common, mode, subject, show_system );
        options.exploration_cap = common.cap;
        return run_verify( common, cfg, options, emit_dir );
    }
    catch ( const hml::invariant_error& e )
    {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_harness;
    }
    catch ( const std::exception& e )
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
}
