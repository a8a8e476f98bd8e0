#include "hml/test_term.hpp"

#include "hml/error.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <unordered_map>

namespace hml
{

namespace
{

std::size_t mix( std::size_t h, std::size_t v )
{
    return h ^ ( v + 0x9e3779b97f4a7c15ULL + ( h << 6 ) + ( h >> 2 ) );
}

void check_variable( const std::string& name )
{
    if ( !is_variable_name( name ) )
        throw domain_error( "invalid test variable name '" + name + "'" );
}

std::string fresh_name( const std::string& base, const std::set< std::string >& avoid )
{
    if ( !avoid.contains( base ) )
        return base;
    for ( std::size_t i = 1;; ++i )
    {
        auto candidate = base + std::to_string( i );
        if ( !avoid.contains( candidate ) )
            return candidate;
    }
}

} // namespace

Test Test::make( TestNode node )
{
    std::size_t h = std::hash< int >{}( static_cast< int >( node.kind ) );
    h = mix( h, std::hash< std::string >{}( node.name ) );
    if ( node.kind == test_kind::prefix )
        h = mix( h, std::hash< std::string >{}( node.action.to_string() ) );
    for ( const auto& c : node.children )
    {
        h = mix( h, c.hash() );
        node.depth = std::max( node.depth, c.depth() + 1 );
        if ( node.free.empty() )
            node.free = c.free_vars();
        else
        {
            std::vector< std::string > merged;
            std::set_union( node.free.begin(), node.free.end(), c.free_vars().begin(), c.free_vars().end(),
                            std::back_inserter( merged ) );
            node.free = std::move( merged );
        }
    }
    if ( node.kind == test_kind::mu )
        std::erase( node.free, node.name );
    node.hash = h;
    return Test( std::make_shared< const TestNode >( std::move( node ) ) );
}

Test Test::nil()
{
    static const Test zero = make( TestNode{ .kind = test_kind::nil } );
    return zero;
}

Test Test::success()
{
    static const Test omega = make( TestNode{ .kind = test_kind::success, .action = Action::omega() } );
    return omega;
}

Test Test::prefix( Action alpha, Test body )
{
    if ( alpha.is_omega() )
        throw domain_error( "omega only occurs in the success test w.0" );
    if ( alpha.is_visible() && alpha.name() == "w" )
        throw domain_error( "action name 'w' is reserved for the success test" );
    return make( TestNode{ .kind = test_kind::prefix, .action = std::move( alpha ), .children = { std::move( body ) } } );
}

Test Test::var( std::string name )
{
    check_variable( name );
    TestNode node{ .kind = test_kind::var, .name = name };
    node.free = { std::move( name ) };
    return make( std::move( node ) );
}

Test Test::sum( Test left, Test right )
{
    return make( TestNode{ .kind = test_kind::sum, .children = { std::move( left ), std::move( right ) } } );
}

Test Test::mu( std::string var, Test body )
{
    check_variable( var );
    return make( TestNode{ .kind = test_kind::mu, .name = std::move( var ), .children = { std::move( body ) } } );
}

test_kind Test::kind() const { return _node->kind; }
const Action& Test::action() const { return _node->action; }
const std::string& Test::name() const { return _node->name; }
const Test& Test::left() const { return _node->children.at( 0 ); }
const Test& Test::right() const { return _node->children.at( 1 ); }
const Test& Test::body() const { return _node->children.at( 0 ); }
const std::vector< std::string >& Test::free_vars() const { return _node->free; }
std::size_t Test::depth() const { return _node->depth; }
std::size_t Test::hash() const { return _node->hash; }

bool Test::has_free( std::string_view var ) const
{
    return std::binary_search( _node->free.begin(), _node->free.end(), var );
}

bool operator==( const Test& a, const Test& b )
{
    if ( a._node == b._node )
        return true;
    const auto& x = *a._node;
    const auto& y = *b._node;
    if ( x.hash != y.hash || x.kind != y.kind || x.name != y.name || x.action != y.action )
        return false;
    return x.children == y.children;
}

namespace
{

class TestSubstitution
{
public:
    TestSubstitution( const std::string& var, const Test& u ) : _var{ var }, _u{ u } {}

    Test apply( const Test& t )
    {
        if ( !t.has_free( _var ) )
            return t;
        if ( auto it = _memo.find( t.node() ); it != _memo.end() )
            return it->second.second;
        Test result = rebuild( t );
        _memo.emplace( t.node(), std::make_pair( t, result ) );
        return result;
    }

private:
    Test rebuild( const Test& t )
    {
        switch ( t.kind() )
        {
        case test_kind::var:
            return _u;
        case test_kind::prefix:
            return Test::prefix( t.action(), apply( t.body() ) );
        case test_kind::sum:
            return Test::sum( apply( t.left() ), apply( t.right() ) );
        case test_kind::mu:
        {
            std::string bound = t.name();
            Test body = t.body();
            if ( _u.has_free( bound ) )
            {
                std::set< std::string > avoid( _u.free_vars().begin(), _u.free_vars().end() );
                avoid.insert( body.free_vars().begin(), body.free_vars().end() );
                avoid.insert( _var );
                auto renamed = fresh_name( bound, avoid );
                body = test_substitute( body, bound, Test::var( renamed ) );
                bound = std::move( renamed );
            }
            return Test::mu( bound, apply( body ) );
        }
        default:
            return t;
        }
    }

    const std::string& _var;
    const Test& _u;
    std::unordered_map< const TestNode*, std::pair< Test, Test > > _memo;
};

void canonical( const Test& t, std::vector< std::string >& binders, std::string& out )
{
    switch ( t.kind() )
    {
    case test_kind::nil:
        out += '0';
        return;
    case test_kind::success:
        out += 'w';
        return;
    case test_kind::var:
    {
        auto it = std::find( binders.rbegin(), binders.rend(), t.name() );
        if ( it == binders.rend() )
            out += '$' + t.name();
        else
            out += '#' + std::to_string( it - binders.rbegin() );
        return;
    }
    case test_kind::prefix:
        out += t.action().is_tau() ? std::string( "~" ) : t.action().name();
        out += '.';
        canonical( t.body(), binders, out );
        return;
    case test_kind::sum:
        out += '(';
        canonical( t.left(), binders, out );
        out += '+';
        canonical( t.right(), binders, out );
        out += ')';
        return;
    case test_kind::mu:
        out += "m(";
        binders.push_back( t.name() );
        canonical( t.body(), binders, out );
        binders.pop_back();
        out += ')';
        return;
    }
}

void collect_steps( const Test& t, const Test& whole, std::vector< TestStep >& out )
{
    switch ( t.kind() )
    {
    case test_kind::nil:
        return;
    case test_kind::success:
        out.push_back( { Action::omega(), Test::nil() } );
        return;
    case test_kind::prefix:
        out.push_back( { t.action(), t.body() } );
        return;
    case test_kind::sum:
        collect_steps( t.left(), whole, out );
        collect_steps( t.right(), whole, out );
        return;
    case test_kind::mu:
        out.push_back( { Action::tau(), test_substitute( t.body(), t.name(), t ) } );
        return;
    case test_kind::var:
        throw domain_error( "free test variable " + t.name() + " in " + canonical_key( whole ) );
    }
}

} // namespace

Test test_substitute( const Test& t, const std::string& var, const Test& u )
{
    TestSubstitution s( var, u );
    return s.apply( t );
}

std::string canonical_key( const Test& t )
{
    std::vector< std::string > binders;
    std::string out;
    canonical( t, binders, out );
    return out;
}

bool alpha_equivalent( const Test& a, const Test& b )
{
    return a.node() == b.node() || canonical_key( a ) == canonical_key( b );
}

Test sum_all( const std::vector< Test >& parts )
{
    if ( parts.empty() )
        return Test::nil();
    Test result = parts.front();
    for ( std::size_t i = 1; i < parts.size(); ++i )
        result = Test::sum( result, parts[ i ] );
    return result;
}

std::vector< TestStep > test_step( const Test& t )
{
    if ( !t.is_closed() )
        throw domain_error( "cannot step an open test; " + t.free_vars().front() + " is free" );
    std::vector< TestStep > raw;
    collect_steps( t, t, raw );
    std::vector< TestStep > steps;
    for ( auto& step : raw )
    {
        bool seen = std::any_of( steps.begin(), steps.end(), [ & ]( const TestStep& s ) {
            return s.action == step.action && s.target == step.target;
        } );
        if ( !seen )
            steps.push_back( std::move( step ) );
    }
    return steps;
}

} // namespace hml
