#include "hml/generators.hpp"

#include "hml/error.hpp"

#include <algorithm>

namespace hml
{

void TrialConfig::validate() const
{
    if ( max_states == 0 || alphabet_size == 0 || max_formula_depth == 0 || max_test_depth == 0 )
        throw domain_error( "trial bounds must be at least 1" );
    if ( alphabet_size > 20 )
        throw domain_error( "alphabet_size is limited to 20 actions" );
    for ( double p : { tau_density, divergence_bias, guard_bias } )
        if ( !( p >= 0.0 && p <= 1.0 ) )
            throw domain_error( "generation probabilities must lie in [0, 1]" );
}

std::vector< std::string > action_names( std::size_t count )
{
    std::vector< std::string > names;
    for ( char c = 'a'; names.size() < count && c <= 'z'; ++c )
        if ( c != 'w' )
            names.emplace_back( 1, c );
    return names;
}

Lts generate_lts( const TrialConfig& cfg, Rng& rng )
{
    const auto actions = action_names( cfg.alphabet_size );
    const auto n = 1 + rng.below( cfg.max_states );
    LtsBuilder builder( "random" );
    for ( std::size_t s = 0; s < n; ++s )
        builder.add_state( "s" + std::to_string( s ) );

    const auto max_degree = std::min< std::uint64_t >( 3, n - 1 );
    for ( StateId s = 0; s < n; ++s )
    {
        const auto degree = rng.below( max_degree + 1 );
        for ( std::uint64_t i = 0; i < degree; ++i )
        {
            auto target = static_cast< StateId >( rng.below( n ) );
            auto action =
                rng.chance( cfg.tau_density ) ? Action::tau() : Action::visible( actions[ rng.below( actions.size() ) ] );
            builder.add_transition( s, action, target );
        }
    }
    if ( rng.chance( cfg.divergence_bias ) )
    {
        auto s = static_cast< StateId >( rng.below( n ) );
        builder.add_transition( s, Action::tau(), s );
    }
    builder.set_initial( StateId{ 0 } );
    return builder.build();
}

Lts fixture_lts()
{
    LtsBuilder builder( "fixtures" );
    for ( const char* name : { "s", "p", "q", "d", "zero" } )
        builder.add_state( name );
    const auto a = Action::visible( "a" );
    const auto b = Action::visible( "b" );
    builder.add_transition( "s", a, "zero" );
    builder.add_transition( "s", b, "zero" );
    builder.add_transition( "p", a, "zero" );
    builder.add_transition( "q", b, "zero" );
    builder.add_transition( "d", Action::tau(), "d" );
    builder.add_transition( "d", a, "zero" );
    builder.add_transition( "d", b, "zero" );
    builder.set_initial( "s" );
    return builder.build();
}

namespace
{

class FormulaGenerator
{
public:
    FormulaGenerator( const TrialConfig& cfg, fragment kind, Rng& rng )
            : _cfg{ cfg }, _kind{ kind }, _rng{ rng }, _actions{ action_names( cfg.alphabet_size ) }
    {}

    Formula generate( std::size_t depth, std::vector< std::string >& scope, std::size_t level )
    {
        if ( depth <= 1 || _rng.chance( 0.15 ) )
            return leaf( scope );

        enum { disj, conj, diamond, box, min, max };
        std::vector< int > choices;
        switch ( _kind )
        {
        case fragment::may:
            choices = { disj, diamond, diamond, min };
            break;
        case fragment::must:
            choices = { conj, box, box, min };
            break;
        case fragment::full:
            choices = { disj, conj, diamond, box, min, max };
            break;
        }
        switch ( choices[ _rng.below( choices.size() ) ] )
        {
        case disj:
        {
            auto left = generate( depth - 1, scope, level );
            return Formula::disj( left, generate( depth - 1, scope, level ) );
        }
        case conj:
        {
            auto left = generate( depth - 1, scope, level );
            return Formula::conj( left, generate( depth - 1, scope, level ) );
        }
        case diamond:
        {
            auto alpha = action();
            return Formula::diamond( alpha, generate( depth - 1, scope, level ) );
        }
        case box:
        {
            auto alpha = action();
            return Formula::box( alpha, generate( depth - 1, scope, level ) );
        }
        default:
            return binder( depth, scope, level );
        }
    }

private:
    Formula binder( std::size_t depth, std::vector< std::string >& scope, std::size_t level )
    {
        const bool least = _kind != fragment::full || _rng.chance( 0.6 );
        const auto name = "X" + std::to_string( level );
        scope.push_back( name );
        Formula body = Formula::tt();
        if ( depth >= 4 && _rng.chance( _cfg.guard_bias ) )
        {
            auto rest = generate( depth - 2, scope, level + 1 );
            auto alpha = action();
            bool universal = _kind == fragment::must || ( _kind == fragment::full && _rng.chance( 0.5 ) );
            body = universal ? Formula::conj( rest, Formula::box( alpha, Formula::var( name ) ) )
                             : Formula::disj( rest, Formula::diamond( alpha, Formula::var( name ) ) );
        }
        else
            body = generate( depth - 1, scope, level + 1 );
        scope.pop_back();
        return least ? Formula::min( name, body ) : Formula::max( name, body );
    }

    Formula leaf( const std::vector< std::string >& scope )
    {
        std::vector< int > choices{ 0, 1 };
        if ( _kind != fragment::may )
            choices.push_back( 2 );
        if ( !scope.empty() )
            choices.insert( choices.end(), { 3, 3 } );
        switch ( choices[ _rng.below( choices.size() ) ] )
        {
        case 0:
            return Formula::tt();
        case 1:
            return Formula::ff();
        case 2:
        {
            std::vector< std::string > offered;
            for ( const auto& a : _actions )
                if ( _rng.chance( 0.5 ) )
                    offered.push_back( a );
            return Formula::acc( offered );
        }
        default:
            return Formula::var( scope[ _rng.below( scope.size() ) ] );
        }
    }

    Action action()
    {
        if ( _rng.chance( 0.25 ) )
            return Action::tau();
        return Action::visible( _actions[ _rng.below( _actions.size() ) ] );
    }

    const TrialConfig& _cfg;
    fragment _kind;
    Rng& _rng;
    std::vector< std::string > _actions;
};

class TestGenerator
{
public:
    TestGenerator( const TrialConfig& cfg, Rng& rng ) : _cfg{ cfg }, _rng{ rng }, _actions{ action_names( cfg.alphabet_size ) }
    {}

    Test generate( std::size_t depth, std::vector< std::string >& scope, std::size_t level )
    {
        if ( depth <= 1 || _rng.chance( 0.15 ) )
            return leaf( scope );
        auto pick = _rng.below( 20 );
        if ( pick < 8 )
        {
            auto alpha = action();
            return Test::prefix( alpha, generate( depth - 1, scope, level ) );
        }
        if ( pick < 14 )
        {
            auto left = generate( depth - 1, scope, level );
            return Test::sum( left, generate( depth - 1, scope, level ) );
        }
        const auto name = "X" + std::to_string( level );
        scope.push_back( name );
        Test body = Test::nil();
        if ( depth >= 4 && _rng.chance( _cfg.guard_bias ) )
        {
            auto rest = generate( depth - 2, scope, level + 1 );
            auto alpha = action();
            body = Test::sum( rest, Test::prefix( alpha, Test::var( name ) ) );
        }
        else
            body = generate( depth - 1, scope, level + 1 );
        scope.pop_back();
        return Test::mu( name, body );
    }

private:
    Test leaf( const std::vector< std::string >& scope )
    {
        auto pick = _rng.below( scope.empty() ? 2 : 4 );
        if ( pick == 0 )
            return Test::nil();
        if ( pick == 1 )
            return Test::success();
        return Test::var( scope[ _rng.below( scope.size() ) ] );
    }

    Action action()
    {
        if ( _rng.chance( 0.25 ) )
            return Action::tau();
        return Action::visible( _actions[ _rng.below( _actions.size() ) ] );
    }

    const TrialConfig& _cfg;
    Rng& _rng;
    std::vector< std::string > _actions;
};

} // namespace

Formula generate_formula( const TrialConfig& cfg, fragment kind, Rng& rng, const std::vector< std::string >& scope )
{
    FormulaGenerator generator( cfg, kind, rng );
    auto names = scope;
    return generator.generate( cfg.max_formula_depth, names, 0 );
}

Test generate_test( const TrialConfig& cfg, Rng& rng )
{
    TestGenerator generator( cfg, rng );
    std::vector< std::string > scope;
    return generator.generate( cfg.max_test_depth, scope, 0 );
}

SimFormula generate_system( const TrialConfig& cfg, Rng& rng, std::size_t max_vars )
{
    SimFormula system;
    const auto n = 1 + rng.below( std::max< std::size_t >( max_vars, 1 ) );
    for ( std::size_t i = 0; i < n; ++i )
        system.vars.push_back( "Y" + std::to_string( i ) );
    auto body_cfg = cfg;
    body_cfg.max_formula_depth = std::min< std::size_t >( cfg.max_formula_depth, 4 );
    for ( std::size_t i = 0; i < n; ++i )
        system.bodies.push_back( generate_formula( body_cfg, fragment::full, rng, system.vars ) );
    system.index = rng.below( n );
    return system;
}

} // namespace hml
