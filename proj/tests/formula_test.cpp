#include "oracles.hpp"

#include "hml/error.hpp"
#include "hml/formula_io.hpp"
#include "hml/generators.hpp"
#include "hml/semantics.hpp"

#include <doctest.h>

using namespace hml;

namespace
{

std::vector< Formula > random_formulas( std::uint64_t seed, std::size_t count, fragment kind,
                                        const std::vector< std::string >& scope = {}, std::size_t depth = 5 )
{
    TrialConfig cfg;
    cfg.max_formula_depth = depth;
    std::vector< Formula > out;
    for ( std::size_t i = 0; i < count; ++i )
    {
        Rng rng( derive_seed( seed, i, 1 ) );
        out.push_back( generate_formula( cfg, kind, rng, scope ) );
    }
    return out;
}

} // namespace

TEST_CASE( "printing and parsing" )
{
    CHECK( to_string( parse_formula( "<a>tt /\\ <b>tt" ) ) == "<a>tt /\\ <b>tt" );
    CHECK( to_string( parse_formula( "min X.[a]X" ) ) == "min X. [a]X" );
    CHECK( to_string( parse_formula( "Acc{b, a, a}" ) ) == "Acc{a,b}" );
    CHECK( to_string( parse_formula( "(tt \\/ ff) /\\ tt" ) ) == "(tt \\/ ff) /\\ tt" );
    CHECK( to_string( parse_formula( "tt \\/ (ff \\/ tt)" ) ) == "tt \\/ (ff \\/ tt)" );
    CHECK( to_string( parse_formula( "<a>(min X. X) /\\ tt" ) ) == "<a>(min X. X) /\\ tt" );

    // \/ is looser than /\ and modalities bind tightest.
    auto f = parse_formula( "[a]tt /\\ ff \\/ tt" );
    CHECK( f.kind() == formula_kind::disj );
    CHECK( f.left().kind() == formula_kind::conj );
    CHECK( f.left().left().kind() == formula_kind::box );
    auto g = parse_formula( "min X. <a>X \\/ tt" );
    CHECK( g.kind() == formula_kind::min );
    CHECK( g.body().kind() == formula_kind::disj );

    for ( auto kind : { fragment::may, fragment::must, fragment::full } )
        for ( const auto& phi : random_formulas( 21, 300, kind, { "Y" } ) )
        {
            auto text = to_string( phi );
            CHECK_MESSAGE( parse_formula( text ) == phi, text );
        }
}

TEST_CASE( "parse errors carry positions" )
{
    CHECK_THROWS_AS( parse_formula( "" ), parse_error );
    CHECK_THROWS_AS( parse_formula( "<a>" ), parse_error );
    CHECK_THROWS_AS( parse_formula( "min x. tt" ), parse_error );
    CHECK_THROWS_AS( parse_formula( "<omega>tt" ), std::exception );
    CHECK_THROWS_AS( parse_formula( "tt tt" ), parse_error );
    try
    {
        parse_formula( "tt /\\\n  [a" );
        FAIL( "expected a parse error" );
    }
    catch ( const parse_error& e )
    {
        CHECK( e.line() == 2 );
    }
}

TEST_CASE( "free variables" )
{
    CHECK( Formula::tt().free_vars().empty() );
    CHECK( parse_formula( "min X.(<a>X \\/ Y)" ).free_vars() == std::vector< std::string >{ "Y" } );
    for ( const auto& phi : random_formulas( 22, 300, fragment::full, { "Y", "Z" } ) )
    {
        auto expected = oracle::free_vars( phi );
        CHECK( std::vector< std::string >( expected.begin(), expected.end() ) == phi.free_vars() );
    }
}

TEST_CASE( "substitution" )
{
    CHECK( substitute( parse_formula( "<a>X" ), "X", Formula::tt() ) == parse_formula( "<a>tt" ) );
    auto bound = parse_formula( "min X.<a>X" );
    CHECK( substitute( bound, "X", parse_formula( "[b]ff" ) ) == bound );

    // Capture is avoided by renaming the binder.
    auto captured = substitute( parse_formula( "min X. <a>X \\/ Y" ), "Y", Formula::var( "X" ) );
    CHECK( captured.kind() == formula_kind::min );
    CHECK( captured.name() != "X" );
    CHECK( captured.free_vars() == std::vector< std::string >{ "X" } );
    CHECK( alpha_equivalent( captured, parse_formula( "min Z. <a>Z \\/ X" ) ) );
}

TEST_CASE( "substitution lemma on random instances" )
{
    TrialConfig cfg;
    const std::vector< std::string > scope{ "X0", "X1", "Y" };
    auto phis = random_formulas( 23, 150, fragment::full, scope, 4 );
    auto psis = random_formulas( 24, 150, fragment::full, scope, 3 );
    for ( std::size_t i = 0; i < phis.size(); ++i )
    {
        cfg.max_states = 4;
        Rng rng( derive_seed( 25, i, 0 ) );
        auto lts = generate_lts( cfg, rng );
        std::map< std::string, oracle::States > env;
        Env lib_env;
        for ( const auto& v : scope )
        {
            oracle::States set;
            for ( StateId s = 0; s < lts.num_states(); ++s )
                if ( rng.chance( 0.5 ) )
                    set.insert( s );
            env[ v ] = set;
            lib_env.emplace( v, oracle::to_set( lts, set ) );
        }
        oracle::BruteSemantics brute( lts );
        auto lhs = brute.eval( substitute( phis[ i ], "Y", psis[ i ] ), env );
        auto extended = env;
        extended[ "Y" ] = brute.eval( psis[ i ], env );
        auto rhs = brute.eval( phis[ i ], extended );
        CHECK_MESSAGE( lhs == rhs, to_string( phis[ i ] ), " with Y := ", to_string( psis[ i ] ) );
    }
}

TEST_CASE( "alpha equivalence" )
{
    CHECK( alpha_equivalent( parse_formula( "min X. [a]X" ), parse_formula( "min Y. [a]Y" ) ) );
    CHECK_FALSE( alpha_equivalent( parse_formula( "min X. [a]X" ), parse_formula( "min Y. [a]X" ) ) );
    CHECK_FALSE( alpha_equivalent( parse_formula( "min X. min Y. X" ), parse_formula( "min X. min Y. Y" ) ) );
    CHECK( alpha_equivalent( parse_formula( "Z" ), parse_formula( "Z" ) ) );
    CHECK_FALSE( alpha_equivalent( parse_formula( "min X. X" ), parse_formula( "max X. X" ) ) );
}

TEST_CASE( "constructor preconditions" )
{
    CHECK_THROWS_AS( Formula::var( "x" ), domain_error );
    CHECK_THROWS_AS( Formula::min( "Acc", Formula::tt() ), domain_error );
    CHECK_THROWS_AS( Formula::box( Action::omega(), Formula::tt() ), domain_error );
    CHECK_THROWS_AS( Formula::acc( { "tau" } ), domain_error );
    CHECK( Formula::acc( { "b", "a", "b" } ).actions() == std::vector< std::string >{ "a", "b" } );
    CHECK( fresh_variable( "X", { "X", "X1" } ) == "X2" );
}
