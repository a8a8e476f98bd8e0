#include "hml/formula.hpp"

#include "hml/error.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <map>
#include <unordered_map>

namespace hml
{

namespace
{

std::size_t mix( std::size_t h, std::size_t v )
{
    return h ^ ( v + 0x9e3779b97f4a7c15ULL + ( h << 6 ) + ( h >> 2 ) );
}

std::vector< std::string > merge_sorted( const std::vector< std::string >& a, const std::vector< std::string >& b )
{
    std::vector< std::string > out;
    std::set_union( a.begin(), a.end(), b.begin(), b.end(), std::back_inserter( out ) );
    return out;
}

void check_modal_action( const Action& alpha )
{
    if ( alpha.is_omega() )
        throw domain_error( "modalities range over visible actions and tau, not omega" );
}

void check_variable( const std::string& name )
{
    if ( !is_variable_name( name ) || name == "Acc" )
        throw domain_error( "invalid formula variable name '" + name + "'" );
}

} // namespace

Formula Formula::make( FormulaNode node )
{
    std::size_t h = std::hash< int >{}( static_cast< int >( node.kind ) );
    h = mix( h, std::hash< std::string >{}( node.name ) );
    for ( const auto& a : node.actions )
        h = mix( h, std::hash< std::string >{}( a ) );
    if ( node.kind == formula_kind::diamond || node.kind == formula_kind::box )
        h = mix( h, std::hash< std::string >{}( node.action.to_string() ) );
    for ( const auto& c : node.children )
    {
        h = mix( h, c.hash() );
        node.depth = std::max( node.depth, c.depth() + 1 );
    }
    node.hash = h;
    return Formula( std::make_shared< const FormulaNode >( std::move( node ) ) );
}

Formula Formula::tt()
{
    static const Formula instance = make( FormulaNode{ .kind = formula_kind::tt } );
    return instance;
}

Formula Formula::ff()
{
    static const Formula instance = make( FormulaNode{ .kind = formula_kind::ff } );
    return instance;
}

Formula Formula::var( std::string name )
{
    check_variable( name );
    FormulaNode node{ .kind = formula_kind::var, .name = name };
    node.free = { std::move( name ) };
    return make( std::move( node ) );
}

Formula Formula::acc( std::vector< std::string > actions )
{
    for ( const auto& a : actions )
        if ( !is_visible_action_name( a ) )
            throw domain_error( "Acc sets contain visible actions only, got '" + a + "'" );
    std::sort( actions.begin(), actions.end() );
    actions.erase( std::unique( actions.begin(), actions.end() ), actions.end() );
    return make( FormulaNode{ .kind = formula_kind::acc, .actions = std::move( actions ) } );
}

Formula Formula::disj( Formula left, Formula right )
{
    FormulaNode node{ .kind = formula_kind::disj };
    node.free = merge_sorted( left.free_vars(), right.free_vars() );
    node.children = { std::move( left ), std::move( right ) };
    return make( std::move( node ) );
}

Formula Formula::conj( Formula left, Formula right )
{
    FormulaNode node{ .kind = formula_kind::conj };
    node.free = merge_sorted( left.free_vars(), right.free_vars() );
    node.children = { std::move( left ), std::move( right ) };
    return make( std::move( node ) );
}

Formula Formula::diamond( Action alpha, Formula body )
{
    check_modal_action( alpha );
    FormulaNode node{ .kind = formula_kind::diamond, .action = std::move( alpha ) };
    node.free = body.free_vars();
    node.children = { std::move( body ) };
    return make( std::move( node ) );
}

Formula Formula::box( Action alpha, Formula body )
{
    check_modal_action( alpha );
    FormulaNode node{ .kind = formula_kind::box, .action = std::move( alpha ) };
    node.free = body.free_vars();
    node.children = { std::move( body ) };
    return make( std::move( node ) );
}

Formula Formula::min( std::string var, Formula body )
{
    check_variable( var );
    FormulaNode node{ .kind = formula_kind::min, .name = var };
    node.free = body.free_vars();
    std::erase( node.free, var );
    node.children = { std::move( body ) };
    return make( std::move( node ) );
}

Formula Formula::max( std::string var, Formula body )
{
    check_variable( var );
    FormulaNode node{ .kind = formula_kind::max, .name = var };
    node.free = body.free_vars();
    std::erase( node.free, var );
    node.children = { std::move( body ) };
    return make( std::move( node ) );
}

formula_kind Formula::kind() const { return _node->kind; }
const std::string& Formula::name() const { return _node->name; }
const std::vector< std::string >& Formula::actions() const { return _node->actions; }
const Action& Formula::action() const { return _node->action; }
const Formula& Formula::left() const { return _node->children.at( 0 ); }
const Formula& Formula::right() const { return _node->children.at( 1 ); }
const Formula& Formula::body() const { return _node->children.at( 0 ); }
const std::vector< std::string >& Formula::free_vars() const { return _node->free; }
std::size_t Formula::depth() const { return _node->depth; }
std::size_t Formula::hash() const { return _node->hash; }

bool Formula::has_free( std::string_view var ) const
{
    return std::binary_search( _node->free.begin(), _node->free.end(), var );
}

bool operator==( const Formula& a, const Formula& b )
{
    if ( a._node == b._node )
        return true;
    const auto& x = *a._node;
    const auto& y = *b._node;
    if ( x.hash != y.hash || x.kind != y.kind || x.name != y.name || x.actions != y.actions || x.action != y.action )
        return false;
    return x.children == y.children;
}

namespace
{

class Substitution
{
public:
    Substitution( const std::string& var, const Formula& psi ) : _var{ var }, _psi{ psi } {}

    Formula apply( const Formula& phi )
    {
        if ( !phi.has_free( _var ) )
            return phi;
        if ( auto it = _memo.find( phi.node() ); it != _memo.end() )
            return it->second.second;
        Formula result = rebuild( phi );
        _memo.emplace( phi.node(), std::make_pair( phi, result ) );
        return result;
    }

private:
    Formula rebuild( const Formula& phi )
    {
        switch ( phi.kind() )
        {
        case formula_kind::var:
            return _psi;
        case formula_kind::disj:
            return Formula::disj( apply( phi.left() ), apply( phi.right() ) );
        case formula_kind::conj:
            return Formula::conj( apply( phi.left() ), apply( phi.right() ) );
        case formula_kind::diamond:
            return Formula::diamond( phi.action(), apply( phi.body() ) );
        case formula_kind::box:
            return Formula::box( phi.action(), apply( phi.body() ) );
        case formula_kind::min:
        case formula_kind::max:
        {
            std::string bound = phi.name();
            Formula body = phi.body();
            if ( _psi.has_free( bound ) )
            {
                std::set< std::string > avoid( _psi.free_vars().begin(), _psi.free_vars().end() );
                avoid.insert( body.free_vars().begin(), body.free_vars().end() );
                avoid.insert( _var );
                auto renamed = fresh_variable( bound, avoid );
                body = substitute( body, bound, Formula::var( renamed ) );
                bound = std::move( renamed );
            }
            body = apply( body );
            return phi.kind() == formula_kind::min ? Formula::min( bound, body ) : Formula::max( bound, body );
        }
        default:
            return phi;
        }
    }

    const std::string& _var;
    const Formula& _psi;
    // The key formula is stored with the result so that its address stays
    // owned; renamed bodies are temporaries.
    std::unordered_map< const FormulaNode*, std::pair< Formula, Formula > > _memo;
};

bool alpha_equal( const Formula& a, const Formula& b, std::map< std::string, int >& left_binders,
                  std::map< std::string, int >& right_binders, int level )
{
    if ( a.kind() != b.kind() )
        return false;
    switch ( a.kind() )
    {
    case formula_kind::tt:
    case formula_kind::ff:
        return true;
    case formula_kind::acc:
        return a.actions() == b.actions();
    case formula_kind::var:
    {
        auto l = left_binders.find( a.name() );
        auto r = right_binders.find( b.name() );
        if ( l == left_binders.end() || r == right_binders.end() )
            return l == left_binders.end() && r == right_binders.end() && a.name() == b.name();
        return l->second == r->second;
    }
    case formula_kind::disj:
    case formula_kind::conj:
        return alpha_equal( a.left(), b.left(), left_binders, right_binders, level )
               && alpha_equal( a.right(), b.right(), left_binders, right_binders, level );
    case formula_kind::diamond:
    case formula_kind::box:
        return a.action() == b.action() && alpha_equal( a.body(), b.body(), left_binders, right_binders, level );
    case formula_kind::min:
    case formula_kind::max:
    {
        auto saved_left = left_binders;
        auto saved_right = right_binders;
        left_binders[ a.name() ] = level;
        right_binders[ b.name() ] = level;
        bool equal = alpha_equal( a.body(), b.body(), left_binders, right_binders, level + 1 );
        left_binders = std::move( saved_left );
        right_binders = std::move( saved_right );
        return equal;
    }
    }
    return false;
}

} // namespace

Formula substitute( const Formula& phi, const std::string& var, const Formula& psi )
{
    Substitution s( var, psi );
    return s.apply( phi );
}

bool alpha_equivalent( const Formula& a, const Formula& b )
{
    if ( a.node() == b.node() )
        return true;
    std::map< std::string, int > left, right;
    return alpha_equal( a, b, left, right, 0 );
}

Formula conj_all( const std::vector< Formula >& parts )
{
    if ( parts.empty() )
        return Formula::tt();
    Formula result = parts.front();
    for ( std::size_t i = 1; i < parts.size(); ++i )
        result = Formula::conj( result, parts[ i ] );
    return result;
}

Formula disj_all( const std::vector< Formula >& parts )
{
    if ( parts.empty() )
        return Formula::ff();
    Formula result = parts.front();
    for ( std::size_t i = 1; i < parts.size(); ++i )
        result = Formula::disj( result, parts[ i ] );
    return result;
}

std::string fresh_variable( const std::string& base, const std::set< std::string >& avoid )
{
    if ( !avoid.contains( base ) && base != "Acc" )
        return base;
    for ( std::size_t i = 1;; ++i )
    {
        auto candidate = base + std::to_string( i );
        if ( !avoid.contains( candidate ) )
            return candidate;
    }
}

} // namespace hml
