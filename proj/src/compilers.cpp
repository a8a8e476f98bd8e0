#include "hml/compilers.hpp"

#include "hml/error.hpp"
#include "hml/formula_io.hpp"

#include <cstdint>
#include <cstdio>
#include <deque>

namespace hml
{

namespace
{

Test must_test( const Formula& phi, const MustCompileOptions& options )
{
    switch ( phi.kind() )
    {
    case formula_kind::tt:
        return Test::success();
    case formula_kind::ff:
        return Test::nil();
    case formula_kind::acc:
    {
        std::vector< Test > offers;
        for ( const auto& a : phi.actions() )
            offers.push_back( Test::prefix( Action::visible( a ), Test::success() ) );
        return sum_all( offers );
    }
    case formula_kind::var:
        return Test::var( phi.name() );
    case formula_kind::box:
    {
        Test body = must_test( phi.body(), options );
        if ( phi.action().is_tau() )
            return Test::prefix( Action::tau(), body );
        Test step = Test::prefix( phi.action(), body );
        if ( options.mutate_box )
            return step;
        return Test::sum( step, Test::prefix( Action::tau(), Test::success() ) );
    }
    case formula_kind::conj:
        if ( phi.is_closed() && is_tt_grammar( phi ) )
            return Test::success();
        return Test::sum( Test::prefix( Action::tau(), must_test( phi.left(), options ) ),
                          Test::prefix( Action::tau(), must_test( phi.right(), options ) ) );
    case formula_kind::min:
    {
        Test body = must_test( phi.body(), options );
        if ( !phi.body().has_free( phi.name() ) )
            return body;
        return Test::mu( phi.name(), body );
    }
    default:
        throw invariant_error( "unexpected formula in mustHML: " + to_string( phi ) );
    }
}

Test may_test( const Formula& phi )
{
    switch ( phi.kind() )
    {
    case formula_kind::tt:
        return Test::success();
    case formula_kind::ff:
        return Test::nil();
    case formula_kind::var:
        return Test::var( phi.name() );
    case formula_kind::disj:
        return Test::sum( Test::prefix( Action::tau(), may_test( phi.left() ) ),
                          Test::prefix( Action::tau(), may_test( phi.right() ) ) );
    case formula_kind::diamond:
        return Test::prefix( phi.action(), may_test( phi.body() ) );
    case formula_kind::min:
        return Test::mu( phi.name(), may_test( phi.body() ) );
    default:
        throw invariant_error( "unexpected formula in mayHML: " + to_string( phi ) );
    }
}

// 24-bit FNV-1a digest as six hex digits.
std::string short_hash( const std::string& text )
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for ( unsigned char c : text )
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buffer[ 8 ];
    std::snprintf( buffer, sizeof buffer, "%06llx", static_cast< unsigned long long >( h & 0xffffff ) );
    return buffer;
}

std::vector< StateId > reachable_order( const Lts& lts, StateId root )
{
    if ( root >= lts.num_states() )
        throw domain_error( "unknown test state " + std::to_string( root ) );
    std::vector< StateId > order{ root };
    std::vector< bool > seen( lts.num_states(), false );
    seen[ root ] = true;
    for ( std::size_t i = 0; i < order.size(); ++i )
        for ( const auto& tr : lts.outgoing( order[ i ] ) )
            if ( !seen[ tr.target ] )
            {
                seen[ tr.target ] = true;
                order.push_back( tr.target );
            }
    return order;
}

enum class side
{
    must,
    may,
};

SimFormula build_system( const Lts& test, StateId root, const std::vector< std::string >& labels, side mode )
{
    if ( !labels.empty() && labels.size() != test.num_states() )
        throw domain_error( "one label per test state is required" );

    const auto order = reachable_order( test, root );
    std::vector< std::string > names( test.num_states() );
    SimFormula system;
    for ( std::size_t i = 0; i < order.size(); ++i )
    {
        auto s = order[ i ];
        names[ s ] = "X" + std::to_string( i ) + "_" + short_hash( labels.empty() ? test.state_name( s ) : labels[ s ] );
        system.vars.push_back( names[ s ] );
    }

    for ( auto s : order )
    {
        const auto out = test.outgoing( s );
        bool success = false;
        bool internal = false;
        for ( const auto& tr : out )
        {
            success = success || tr.action.is_omega();
            internal = internal || tr.action.is_tau();
        }

        Formula body = Formula::ff();
        if ( success )
            body = Formula::tt();
        else if ( out.empty() )
            body = Formula::ff();
        else if ( mode == side::may )
        {
            std::vector< Formula > options;
            for ( const auto& tr : out )
                options.push_back( Formula::diamond( tr.action, Formula::var( names[ tr.target ] ) ) );
            body = disj_all( options );
        }
        else
        {
            // Transitions are sorted with τ first, so the [τ] conjuncts lead.
            std::vector< Formula > parts;
            std::vector< std::string > offered;
            for ( const auto& tr : out )
            {
                parts.push_back( Formula::box( tr.action, Formula::var( names[ tr.target ] ) ) );
                if ( tr.action.is_visible() )
                    offered.push_back( tr.action.name() );
            }
            if ( !internal )
                parts.push_back( Formula::acc( offered ) );
            body = conj_all( parts );
        }
        system.bodies.push_back( body );
    }
    system.index = 0;
    return system;
}

std::vector< std::string > term_labels( const TestLts& explored )
{
    std::vector< std::string > labels;
    labels.reserve( explored.terms.size() );
    for ( const auto& term : explored.terms )
        labels.push_back( canonical_key( term ) );
    return labels;
}

} // namespace

Test formula_to_must_test( const Formula& phi, const MustCompileOptions& options )
{
    if ( auto bad = first_non_must( phi ) )
        throw domain_error( "formula is not in mustHML; offending subterm: " + to_string( *bad ) );
    return must_test( phi, options );
}

Test formula_to_may_test( const Formula& phi )
{
    if ( auto bad = first_non_may( phi ) )
        throw domain_error( "formula is not in mayHML; offending subterm: " + to_string( *bad ) );
    return may_test( phi );
}

SimFormula must_system( const Lts& test, StateId root, const std::vector< std::string >& labels )
{
    return build_system( test, root, labels, side::must );
}

SimFormula may_system( const Lts& test, StateId root, const std::vector< std::string >& labels )
{
    return build_system( test, root, labels, side::may );
}

SimFormula must_system( const Test& t, std::size_t cap )
{
    auto explored = reachable_lts( t, cap );
    return must_system( explored.lts, explored.root, term_labels( explored ) );
}

SimFormula may_system( const Test& t, std::size_t cap )
{
    auto explored = reachable_lts( t, cap );
    return may_system( explored.lts, explored.root, term_labels( explored ) );
}

Formula test_to_must_formula( const Test& t, std::size_t cap ) { return bekic_eliminate( must_system( t, cap ) ); }
Formula test_to_must_formula( const Lts& test, StateId root ) { return bekic_eliminate( must_system( test, root ) ); }
Formula test_to_may_formula( const Test& t, std::size_t cap ) { return bekic_eliminate( may_system( t, cap ) ); }
Formula test_to_may_formula( const Lts& test, StateId root ) { return bekic_eliminate( may_system( test, root ) ); }

} // namespace hml
