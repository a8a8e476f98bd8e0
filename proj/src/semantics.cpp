#include "hml/semantics.hpp"

#include "hml/error.hpp"
#include "hml/formula_io.hpp"

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace hml
{

void SimFormula::validate() const
{
    if ( vars.empty() )
        throw domain_error( "a simultaneous fixpoint needs at least one variable" );
    if ( vars.size() != bodies.size() )
        throw domain_error( "a simultaneous fixpoint needs one body per variable" );
    if ( index >= vars.size() )
        throw domain_error( "projection index " + std::to_string( index ) + " out of range for "
                            + std::to_string( vars.size() ) + " variables" );
    std::set< std::string > seen;
    for ( const auto& v : vars )
        if ( !seen.insert( v ).second )
            throw domain_error( "duplicate variable '" + v + "' in simultaneous fixpoint" );
}

std::vector< std::string > SimFormula::free_vars() const
{
    std::set< std::string > free;
    for ( const auto& body : bodies )
        free.insert( body.free_vars().begin(), body.free_vars().end() );
    for ( const auto& v : vars )
        free.erase( v );
    return { free.begin(), free.end() };
}

std::string to_string( const SimFormula& system )
{
    std::ostringstream out;
    out << "min " << ( system.index < system.vars.size() ? system.vars[ system.index ] : "?" ) << " of\n";
    for ( std::size_t i = 0; i < system.vars.size() && i < system.bodies.size(); ++i )
        out << "  " << system.vars[ i ] << " = " << to_string( system.bodies[ i ] ) << '\n';
    return out.str();
}

std::size_t Evaluator::KeyHash::operator()( const std::vector< std::uint64_t >& key ) const
{
    return boost::hash_range( key.begin(), key.end() );
}

StateSet Evaluator::evaluate( const Formula& phi, const Env& env )
{
    for ( const auto& v : phi.free_vars() )
        if ( !env.contains( v ) )
            throw domain_error( "free variable " + v + " is not bound in the environment" );
    Env local = env;
    return eval( phi, local );
}

std::vector< StateSet > Evaluator::solve( const SimFormula& system, const Env& env )
{
    system.validate();
    for ( const auto& v : system.free_vars() )
        if ( !env.contains( v ) )
            throw domain_error( "free variable " + v + " is not bound in the environment" );

    Env local = env;
    const auto n = system.vars.size();
    std::vector< StateSet > current( n, _lts.empty_set() );
    std::size_t length = 0;
    ++_stats.fixpoints;
    while ( true )
    {
        for ( std::size_t i = 0; i < n; ++i )
            local.insert_or_assign( system.vars[ i ], current[ i ] );
        std::vector< StateSet > next;
        next.reserve( n );
        for ( const auto& body : system.bodies )
            next.push_back( eval( body, local ) );
        ++length;
        bool stable = true;
        for ( std::size_t i = 0; i < n; ++i )
        {
            if ( !current[ i ].is_subset_of( next[ i ] ) )
                ++_stats.non_monotone_steps;
            stable = stable && next[ i ] == current[ i ];
        }
        if ( stable )
            break;
        current = std::move( next );
    }
    record_sequence( length );
    return current;
}

StateSet Evaluator::evaluate( const SimFormula& system, const Env& env )
{
    return solve( system, env )[ system.index ];
}

void Evaluator::record_sequence( std::size_t length )
{
    _stats.iterations += length;
    _stats.max_iterations = std::max( _stats.max_iterations, length );
}

StateSet Evaluator::acceptance( const std::vector< std::string >& actions ) const
{
    // Acc A = {s | s⇓ and every s ⇒τ s' has s' ⇒a for some a ∈ A}.
    StateSet able = _lts.empty_set();
    for ( const auto& a : actions )
        able |= _lts.weak_predecessors( _lts.full_set(), Action::visible( a ) );
    StateSet reaches_unable = _lts.weak_predecessors( able.complement(), Action::tau() );
    return _lts.convergent_states() - reaches_unable;
}

StateSet Evaluator::eval( const Formula& phi, Env& env )
{
    switch ( phi.kind() )
    {
    case formula_kind::tt:
        return _lts.full_set();
    case formula_kind::ff:
        return _lts.empty_set();
    case formula_kind::var:
    {
        auto it = env.find( phi.name() );
        if ( it == env.end() )
            throw domain_error( "free variable " + phi.name() + " is not bound in the environment" );
        return it->second;
    }
    default:
        break;
    }

    const bool memoize = phi.is_fixpoint() || phi.is_closed();
    std::vector< std::uint64_t > key;
    if ( memoize )
    {
        key.push_back( reinterpret_cast< std::uintptr_t >( phi.node() ) );
        for ( const auto& v : phi.free_vars() )
            env.find( v )->second.append_words( key );
        if ( auto it = _memo.find( key ); it != _memo.end() )
            return it->second.value;
    }

    StateSet result;
    switch ( phi.kind() )
    {
    case formula_kind::acc:
        result = acceptance( phi.actions() );
        break;
    case formula_kind::disj:
        result = eval( phi.left(), env ) | eval( phi.right(), env );
        break;
    case formula_kind::conj:
        result = eval( phi.left(), env ) & eval( phi.right(), env );
        break;
    case formula_kind::diamond:
        result = _lts.weak_predecessors( eval( phi.body(), env ), phi.action() );
        break;
    case formula_kind::box:
    {
        // [·α·]P = {s | s⇓ and s ⇒α s' implies s' ∈ P}
        StateSet escape = _lts.weak_predecessors( eval( phi.body(), env ).complement(), phi.action() );
        result = _lts.convergent_states() - escape;
        break;
    }
    case formula_kind::min:
    case formula_kind::max:
        result = eval_fixpoint( phi, env );
        break;
    default:
        break;
    }

    if ( memoize )
        _memo.emplace( std::move( key ), Memo{ phi, result } );
    return result;
}

StateSet Evaluator::eval_fixpoint( const Formula& phi, Env& env )
{
    const bool least = phi.kind() == formula_kind::min;
    const auto& var = phi.name();

    std::optional< StateSet > shadowed;
    if ( auto it = env.find( var ); it != env.end() )
        shadowed = it->second;

    std::vector< StateSet > outer;
    for ( const auto& v : phi.free_vars() )
        outer.push_back( env.find( v )->second );

    ++_stats.fixpoints;
    StateSet current = least ? _lts.empty_set() : _lts.full_set();
    if ( auto it = _warm.find( phi.node() ); it != _warm.end() )
    {
        bool favourable = true;
        for ( std::size_t i = 0; i < outer.size() && favourable; ++i )
            favourable = least ? it->second.env[ i ].is_subset_of( outer[ i ] )
                               : outer[ i ].is_subset_of( it->second.env[ i ] );
        if ( favourable )
            current = it->second.value;
    }

    std::size_t length = 0;
    while ( true )
    {
        env.insert_or_assign( var, current );
        StateSet next = eval( phi.body(), env );
        ++length;
        if ( next == current )
            break;
        if ( least ? !current.is_subset_of( next ) : !next.is_subset_of( current ) )
            ++_stats.non_monotone_steps;
        current = std::move( next );
    }
    record_sequence( length );
    _warm.insert_or_assign( phi.node(), Warm{ phi, std::move( outer ), current } );

    if ( shadowed )
        env.insert_or_assign( var, *shadowed );
    else
        env.erase( var );
    return current;
}

StateSet interpret( const Lts& lts, const Formula& phi, const Env& env )
{
    Evaluator evaluator( lts );
    return evaluator.evaluate( phi, env );
}

StateSet interpret_simultaneous( const Lts& lts, const SimFormula& system, const Env& env )
{
    Evaluator evaluator( lts );
    return evaluator.evaluate( system, env );
}

Formula bekic_eliminate( const SimFormula& system )
{
    system.validate();
    if ( auto free = system.free_vars(); !free.empty() )
        throw domain_error( "cannot eliminate an open simultaneous fixpoint (free variable " + free.front() + ")" );

    std::vector< std::string > vars{ system.vars[ system.index ] };
    std::vector< Formula > bodies{ system.bodies[ system.index ] };
    for ( std::size_t i = 0; i < system.vars.size(); ++i )
    {
        if ( i == system.index )
            continue;
        vars.push_back( system.vars[ i ] );
        bodies.push_back( system.bodies[ i ] );
    }

    while ( vars.size() > 1 )
    {
        const std::string last = vars.back();
        const Formula closed = Formula::min( last, bodies.back() );
        vars.pop_back();
        bodies.pop_back();
        for ( auto& body : bodies )
            body = substitute( body, last, closed );
    }
    return Formula::min( vars.front(), bodies.front() );
}

namespace
{

// Grammar checks walk the formula as a DAG: Bekić elimination shares
// subterms heavily and a tree walk can be exponential.
class GrammarCheck
{
public:
    explicit GrammarCheck( bool must ) : _must{ must } {}

    std::optional< Formula > first_outside( const Formula& phi )
    {
        if ( !_checked.insert( phi.node() ).second )
            return std::nullopt;
        switch ( phi.kind() )
        {
        case formula_kind::tt:
        case formula_kind::ff:
        case formula_kind::var:
            return std::nullopt;
        case formula_kind::min:
            return first_outside( phi.body() );
        default:
            break;
        }
        if ( _must && phi.kind() == formula_kind::acc )
            return std::nullopt;
        if ( phi.kind() == ( _must ? formula_kind::box : formula_kind::diamond ) )
            return first_outside( phi.body() );
        if ( phi.kind() == ( _must ? formula_kind::conj : formula_kind::disj ) )
        {
            if ( auto bad = first_outside( phi.left() ) )
                return bad;
            return first_outside( phi.right() );
        }
        return phi;
    }

private:
    bool _must;
    std::unordered_set< const FormulaNode* > _checked;
};

} // namespace

std::optional< Formula > first_non_must( const Formula& phi )
{
    GrammarCheck check( true );
    return check.first_outside( phi );
}

std::optional< Formula > first_non_may( const Formula& phi )
{
    GrammarCheck check( false );
    return check.first_outside( phi );
}

bool in_must_grammar( const Formula& phi ) { return !first_non_must( phi ); }
bool in_may_grammar( const Formula& phi ) { return !first_non_may( phi ); }

namespace
{

void require_closed( const Formula& phi, const char* what )
{
    if ( !phi.is_closed() )
        throw domain_error( std::string( what ) + " is defined for closed formulae; " + phi.free_vars().front()
                            + " is free in " + to_string( phi ) );
}

bool tt_shape( const Formula& phi, std::unordered_set< const FormulaNode* >& checked )
{
    if ( checked.contains( phi.node() ) )
        return true;
    bool ok = false;
    switch ( phi.kind() )
    {
    case formula_kind::tt:
        ok = true;
        break;
    case formula_kind::conj:
        ok = tt_shape( phi.left(), checked ) && tt_shape( phi.right(), checked );
        break;
    case formula_kind::min:
        ok = tt_shape( phi.body(), checked );
        break;
    default:
        break;
    }
    if ( ok )
        checked.insert( phi.node() );
    return ok;
}

class Approximator
{
public:
    Formula approx( const Formula& phi, unsigned k )
    {
        if ( k == 0 )
            return Formula::ff();
        auto key = std::make_pair( phi.node(), k );
        if ( auto it = _memo.find( key ); it != _memo.end() )
            return it->second;

        Formula result = phi;
        switch ( phi.kind() )
        {
        case formula_kind::box:
            result = Formula::box( phi.action(), approx( phi.body(), k ) );
            break;
        case formula_kind::conj:
            result = Formula::conj( approx( phi.left(), k ), approx( phi.right(), k ) );
            break;
        case formula_kind::min:
            result = approx( unfold( phi ), k - 1 );
            break;
        default:
            // tt, ff, Acc A and free variables are their own approximants.
            break;
        }
        _memo.emplace( key, result );
        return result;
    }

private:
    // φ{min X.φ / X}, shared across calls so that memoization by node
    // identity hits on repeated unfoldings.
    const Formula& unfold( const Formula& fixpoint )
    {
        auto it = _unfolded.find( fixpoint.node() );
        if ( it == _unfolded.end() )
            it = _unfolded.emplace( fixpoint.node(), substitute( fixpoint.body(), fixpoint.name(), fixpoint ) ).first;
        return it->second;
    }

    std::map< std::pair< const FormulaNode*, unsigned >, Formula > _memo;
    std::map< const FormulaNode*, Formula > _unfolded;
};

std::size_t nesting( const Formula& phi, std::unordered_map< const FormulaNode*, std::size_t >& memo )
{
    if ( auto it = memo.find( phi.node() ); it != memo.end() )
        return it->second;
    std::size_t depth = 0;
    switch ( phi.kind() )
    {
    case formula_kind::disj:
    case formula_kind::conj:
        depth = std::max( nesting( phi.left(), memo ), nesting( phi.right(), memo ) );
        break;
    case formula_kind::diamond:
    case formula_kind::box:
        depth = nesting( phi.body(), memo );
        break;
    case formula_kind::min:
    case formula_kind::max:
        depth = 1 + nesting( phi.body(), memo );
        break;
    default:
        break;
    }
    memo.emplace( phi.node(), depth );
    return depth;
}

} // namespace

Formula approximant( const Formula& phi, unsigned k )
{
    if ( auto bad = first_non_must( phi ) )
        throw domain_error( "approximants are defined for mustHML only; offending subterm " + to_string( *bad ) );
    Approximator approximator;
    return approximator.approx( phi, k );
}

bool is_mayhml( const Formula& phi )
{
    require_closed( phi, "mayHML membership" );
    return in_may_grammar( phi );
}

bool is_musthml( const Formula& phi )
{
    require_closed( phi, "mustHML membership" );
    return in_must_grammar( phi );
}

bool is_tt_grammar( const Formula& phi )
{
    if ( !is_musthml( phi ) )
        throw domain_error( "tt-equivalence is decided for mustHML formulae only, got " + to_string( phi ) );
    std::unordered_set< const FormulaNode* > checked;
    return tt_shape( phi, checked );
}

std::size_t fixpoint_nesting_depth( const Formula& phi )
{
    std::unordered_map< const FormulaNode*, std::size_t > memo;
    return nesting( phi, memo );
}

} // namespace hml
