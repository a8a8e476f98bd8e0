// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "hml/compilers.hpp"
#include "hml/experiment.hpp"
#include "hml/formula_io.hpp"
#include "hml/generators.hpp"
#include "hml/harness.hpp"
#include "hml/lts_io.hpp"
#include "hml/semantics.hpp"
#include "hml/test_io.hpp"
#include "hml/test_lts.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#ifndef HMLT_PATH
#error "HMLT_PATH must name the hmlt executable"
#endif

using namespace hml;
namespace fs = std::filesystem;

namespace
{

struct Outcome
{
    bool pass = true;
    std::string detail;

    void require( bool ok, const std::string& what )
    {
        if ( !ok && pass )
            detail = what;
        pass = pass && ok;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since( Clock::time_point start )
{
    return std::chrono::duration< double >( Clock::now() - start ).count();
}

std::string describe( const CheckResult& c )
{
    std::ostringstream out;
    out << c.name << " trials=" << c.trials << " cases=" << c.cases << " failures=" << c.failures;
    return out.str();
}

void require_check( Outcome& out, const TrialReport& report, const std::string& name, std::size_t min_trials )
{
    const auto* c = report.find( name );
    if ( c == nullptr )
    {
        out.require( false, "missing check " + name );
        return;
    }
    out.require( c->failures == 0 && c->trials >= min_trials, describe( *c ) );
    if ( out.pass )
        out.detail += ( out.detail.empty() ? "" : "; " ) + describe( *c );
}

struct Shell
{
    std::string output;
    int status = -1;
};

Shell run( const std::string& command )
{
    Shell result;
    FILE* pipe = popen( ( command + " 2>/dev/null" ).c_str(), "r" );
    if ( pipe == nullptr )
        return result;
    std::array< char, 4096 > buffer{};
    std::size_t n;
    while ( ( n = fread( buffer.data(), 1, buffer.size(), pipe ) ) > 0 )
        result.output.append( buffer.data(), n );
    int raw = pclose( pipe );
    result.status = WIFEXITED( raw ) ? WEXITSTATUS( raw ) : -1;
    return result;
}

std::string quote( const std::string& s ) { return "'" + s + "'"; }

std::string read_field( const fs::path& file, const std::string& key )
{
    std::ifstream in( file );
    std::string line;
    while ( std::getline( in, line ) )
        if ( line.rfind( key + " ", 0 ) == 0 )
            return line.substr( key.size() + 1 );
    return {};
}

std::string trimmed( std::string s )
{
    while ( !s.empty() && ( s.back() == '\n' || s.back() == ' ' ) )
        s.pop_back();
    return s;
}

bool must_passes( const Lts& process, StateId p, const TestLts& t )
{
    return must_satisfy( parallel_compose( process, t.lts, p, t.root ) );
}

bool may_passes( const Lts& process, StateId p, const TestLts& t )
{
    return may_satisfy( parallel_compose( process, t.lts, p, t.root ) );
}

// Adds a state that loops on τ and copies the outgoing transitions of `s`.
std::pair< Lts, StateId > with_divergent_copy( const Lts& lts, StateId s )
{
    LtsBuilder b( lts.name() );
    for ( StateId x = 0; x < lts.num_states(); ++x )
        b.add_state( lts.state_name( x ) );
    for ( const auto& tr : lts.transitions() )
        b.add_transition( tr.source, tr.action, tr.target );
    std::string name = "div";
    while ( lts.find_state( name ) )
        name += "_";
    StateId p = b.add_state( name );
    b.add_transition( p, Action::tau(), p );
    for ( const auto& tr : lts.outgoing( s ) )
        b.add_transition( p, tr.action, tr.target );
    b.set_initial( lts.initial() );
    return { b.build(), p };
}

std::vector< TestLts > test_family( std::uint64_t seed, std::size_t count )
{
    TrialConfig cfg;
    cfg.max_test_depth = 4;
    cfg.alphabet_size = 2;
    std::vector< TestLts > out;
    for ( const char* text : { "w.0", "a.w.0", "b.w.0", "a.0 + tau.w.0", "tau.a.w.0 + tau.b.w.0", "a.b.w.0",
                               "mu X. a.X + b.w.0", "tau.w.0 + a.0" } )
        out.push_back( reachable_lts( parse_test( text ) ) );
    for ( std::size_t i = 0; i < count; ++i )
    {
        Rng rng( derive_seed( seed, i, 0 ) );
        out.push_back( reachable_lts( generate_test( cfg, rng ) ) );
    }
    return out;
}

Outcome negative_examples()
{
    Outcome out;
    const auto fixture = fixture_lts();
    const StateId s = fixture.state( "s" ), p = fixture.state( "p" ), q = fixture.state( "q" );
    const StateId d = fixture.state( "d" ), zero = fixture.state( "zero" );
    const auto family = test_family( 4, 500 );

    // (a) divergent copies of states satisfying [a]ff.
    const auto box_a = parse_formula( "[a]ff" );
    TrialConfig cfg;
    cfg.alphabet_size = 2;
    cfg.max_states = 6;
    std::size_t instances = 0;
    for ( std::size_t i = 0; i < 200 && out.pass; ++i )
    {
        Rng rng( derive_seed( 41, i, 0 ) );
        auto lts = generate_lts( cfg, rng );
        auto sat = interpret( lts, box_a );
        for ( StateId x = 0; x < lts.num_states() && out.pass; ++x )
        {
            if ( !sat.contains( x ) )
                continue;
            ++instances;
            auto [ variant, dp ] = with_divergent_copy( lts, x );
            out.require( !interpret( variant, box_a ).contains( dp ), "(a) divergent copy satisfies [a]ff" );
            for ( std::size_t k = 0; k < family.size() && out.pass; k += 7 )
                out.require( may_passes( variant, x, family[ k ] ) == may_passes( variant, dp, family[ k ] ),
                             "(a) may verdicts differ" );
        }
    }
    out.require( instances > 0, "(a) no state satisfied [a]ff" );

    // (b) 0 passes every test offering ω at once; d fails the rest.
    std::size_t immediate = 0, guarded = 0, tau_free = 0;
    for ( const auto& t : family )
    {
        bool offers = !t.lts.strong_successors( t.root, Action::omega() ).none();
        if ( offers )
        {
            ++immediate;
            out.require( must_passes( fixture, zero, t ), "(b) 0 fails a test with immediate ω" );
            continue;
        }
        ++guarded;
        auto g = parallel_compose( fixture, t.lts, d, t.root );
        auto cx = must_counterexample( g );
        out.require( cx.has_value() && cx->loop_start.has_value(), "(b) d has no unsuccessful loop" );
        if ( t.lts.strong_successors( t.root, Action::tau() ).none() )
        {
            ++tau_free;
            // The loop is the self-loop d | t → d | t.
            out.require( cx && cx->path.size() == 1 && cx->loop_start == 0u, "(b) expected the self-loop computation" );
        }
    }
    out.require( interpret( fixture, parse_formula( "<a>tt" ) ).contains( d ), "(b) d does not satisfy <a>tt" );
    out.require( !interpret( fixture, parse_formula( "<a>tt" ) ).contains( zero ), "(b) 0 satisfies <a>tt" );
    out.require( immediate > 0 && tau_free > 0, "(b) family lacks a case" );

    // (c) ⟨a⟩tt ∧ ⟨b⟩tt is split by p and q.
    auto both = interpret( fixture, parse_formula( "<a>tt /\\ <b>tt" ) );
    out.require( both.contains( s ) && !both.contains( p ) && !both.contains( q ), "(c) fixture semantics" );
    std::size_t may_s = 0;
    for ( const auto& t : family )
        if ( may_passes( fixture, s, t ) )
        {
            ++may_s;
            out.require( may_passes( fixture, p, t ) || may_passes( fixture, q, t ), "(c) s may t but neither p nor q" );
        }

    if ( out.pass )
    {
        std::ostringstream detail;
        detail << "(a) " << instances << " states; (b) immediate=" << immediate << " guarded=" << guarded
               << " tau_free=" << tau_free << "; (c) " << may_s << " tests passed by s";
        out.detail = detail.str();
    }
    return out;
}

Outcome acc_equivalence( const TrialReport& report )
{
    Outcome out;
    require_check( out, report, "acc-equivalence", 200 );
    TrialConfig cfg;
    std::size_t pairs = 0;
    for ( std::size_t i = 0; i < 200 && out.pass; ++i )
    {
        Rng rng( derive_seed( 9, i, 0 ) );
        auto lts = generate_lts( cfg, rng );
        std::vector< std::string > chosen;
        if ( i % 4 != 0 )
            for ( const auto& a : action_names( cfg.alphabet_size ) )
                if ( rng.chance( 0.5 ) )
                    chosen.push_back( a );
        std::vector< Formula > offers;
        for ( const auto& a : chosen )
            offers.push_back( Formula::diamond( Action::visible( a ), Formula::tt() ) );
        auto expected = Formula::box( Action::tau(), disj_all( offers ) );
        out.require( interpret( lts, Formula::acc( chosen ) ) == interpret( lts, expected ),
                     "Acc disagrees on " + to_string( expected ) );
        ++pairs;
    }
    if ( out.pass )
        out.detail += "; explicit pairs=" + std::to_string( pairs ) + " (every fourth with A empty)";
    return out;
}

Outcome determinism()
{
    Outcome out;
    const std::string cli = quote( HMLT_PATH );
    auto first = run( cli + " verify --seed 42 --trials 100" );
    auto second = run( cli + " verify --seed 42 --trials 100" );
    out.require( first.status == 0 && second.status == 0, "verify did not pass" );
    out.require( !first.output.empty() && first.output == second.output, "reports differ" );

    auto dir = fs::temp_directory_path() / ( "hmlt-cx-" + std::to_string( ::getpid() ) );
    fs::remove_all( dir );
    auto mutated = run( cli + " verify --seed 42 --trials 100 --mutate --emit-counterexamples " + quote( dir.string() ) );
    out.require( mutated.status == 3, "mutated verify did not report failure" );

    std::size_t replayed = 0;
    if ( fs::exists( dir ) )
        for ( const auto& entry : fs::directory_iterator( dir ) )
        {
            if ( entry.path().extension() != ".txt" )
                continue;
            auto base = entry.path();
            base.replace_extension();
            auto file = [ & ]( const char* ext ) { return quote( base.string() + ext ); };
            std::string check = read_field( entry.path(), "check" );
            std::string state = quote( read_field( entry.path(), "state" ) );
            std::string lhs = trimmed( run( cli + " check " + file( ".lts" ) + " " + state + " " + file( ".formula" ) ).output );
            std::string rhs;
            if ( fs::exists( base.string() + ".other_formula" ) )
                rhs = trimmed( run( cli + " check " + file( ".lts" ) + " " + state + " " + file( ".other_formula" ) ).output );
            else
            {
                std::string mode = check.rfind( "may", 0 ) == 0 ? "may" : "must";
                auto verdicts = run( cli + " " + mode + " " + file( ".lts" ) + " " + state + " " + file( ".test" ) ).output;
                std::istringstream tokens( verdicts );
                for ( std::string token; tokens >> token; )
                    if ( token.rfind( mode + "=", 0 ) == 0 )
                        rhs = "holds=" + token.substr( mode.size() + 1 );
            }
            out.require( lhs.rfind( "holds=", 0 ) == 0 && rhs.rfind( "holds=", 0 ) == 0, check + ": replay failed" );
            out.require( lhs != rhs, check + ": counterexample does not re-fail (" + lhs + " vs " + rhs + ")" );
            ++replayed;
        }
    fs::remove_all( dir );
    out.require( replayed > 0, "no counterexample emitted" );
    if ( out.pass )
        out.detail = "report bytes=" + std::to_string( first.output.size() ) + "; replayed " +
                     std::to_string( replayed ) + " counterexamples";
    return out;
}

} // namespace

int main()
{
    bool all = true;
    auto report_line = [ & ]( int id, const std::string& title, const std::function< Outcome() >& body ) {
        auto start = Clock::now();
        Outcome o;
        try
        {
            o = body();
        }
        catch ( const std::exception& e )
        {
            o.pass = false;
            o.detail = std::string( "exception: " ) + e.what();
        }
        all = all && o.pass;
        std::printf( "%s criterion %d %s (%.2fs) %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), seconds_since( start ),
                     o.detail.c_str() );
        std::fflush( stdout );
    };

    TrialConfig cfg;
    cfg.seed = 42;
    cfg.trials = 500;
    TrialReport report;
    double verify_seconds = 0;
    {
        auto start = Clock::now();
        report = verify_theorems( cfg );
        verify_seconds = seconds_since( start );
    }
    std::printf( "verify seed=42 trials=500 took %.2fs divergent_trials=%zu\n", verify_seconds, report.divergent_trials );

    report_line( 1, "must formula to test", [ & ] {
        Outcome o;
        require_check( o, report, "must-formula-to-test", 500 );
        o.require( report.divergent_trials * 10 >= report.config.trials * 3, "divergent trials below 30%" );
        o.require( verify_seconds <= 120, "verify exceeded two minutes" );
        return o;
    } );
    report_line( 2, "must test to formula", [ & ] {
        Outcome o;
        require_check( o, report, "must-test-to-formula", 500 );
        require_check( o, report, "must-output-fragment", 500 );
        return o;
    } );
    report_line( 3, "may translations", [ & ] {
        Outcome o;
        for ( const char* name : { "may-formula-to-test", "may-test-to-formula", "may-output-fragment" } )
            require_check( o, report, name, 500 );
        return o;
    } );
    report_line( 4, "negative examples", negative_examples );
    report_line( 5, "simultaneous fixpoint elimination", [ & ] {
        Outcome o;
        require_check( o, report, "bekic", 200 );
        const auto* c = report.find( "bekic" );
        o.require( c && c->cases >= 20 * c->trials, "fewer than 20 LTSs per system" );
        return o;
    } );
    report_line( 6, "fixpoint properties", [ & ] {
        Outcome o;
        for ( const char* name : { "fixpoint-prefixed", "fixpoint-unfold" } )
            require_check( o, report, name, 200 );
        return o;
    } );
    report_line( 7, "approximant convergence", [ & ] {
        Outcome o;
        require_check( o, report, "approximants", 200 );
        return o;
    } );
    report_line( 8, "divergent state forces the full space", [ & ] {
        Outcome o;
        require_check( o, report, "divergent-full-space", 200 );
        return o;
    } );
    report_line( 9, "acceptance sets", [ & ] { return acc_equivalence( report ); } );
    report_line( 10, "determinism and replay", determinism );

    std::printf( "%s\n", all ? "ALL PASS" : "SOME FAILED" );
    return all ? 0 : 1;
}
