#include "hml/lts.hpp"

#include "hml/error.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

#include <algorithm>
#include <mutex>

namespace hml
{

struct Lts::WeakCache
{
    std::mutex mutex;
    // [action index][state]
    std::vector< std::vector< std::optional< StateSet > > > table;
};

const std::string& Lts::state_name( StateId s ) const
{
    check_state( s );
    return _state_names[ s ];
}

std::optional< StateId > Lts::find_state( std::string_view name ) const
{
    auto it = _state_ids.find( std::string( name ) );
    if ( it == _state_ids.end() )
        return std::nullopt;
    return it->second;
}

StateId Lts::state( std::string_view name ) const
{
    if ( auto s = find_state( name ) )
        return *s;
    throw domain_error( "unknown state '" + std::string( name ) + "' in LTS '" + _name + "'" );
}

bool Lts::has_visible( std::string_view a ) const
{
    return std::binary_search( _alphabet.begin(), _alphabet.end(), a );
}

std::span< const Transition > Lts::outgoing( StateId s ) const
{
    check_state( s );
    return std::span< const Transition >( _transitions ).subspan( _out_offsets[ s ],
                                                                  _out_offsets[ s + 1 ] - _out_offsets[ s ] );
}

void Lts::check_state( StateId s ) const
{
    if ( s >= num_states() )
        throw domain_error( "state id " + std::to_string( s ) + " out of range for LTS '" + _name + "'" );
}

std::optional< std::size_t > Lts::action_index( const Action& alpha ) const
{
    switch ( alpha.kind() )
    {
    case action_kind::tau:
        return 0;
    case action_kind::omega:
        return 1;
    case action_kind::visible:
    {
        auto it = std::lower_bound( _alphabet.begin(), _alphabet.end(), alpha.name() );
        if ( it == _alphabet.end() || *it != alpha.name() )
            return std::nullopt;
        return 2 + static_cast< std::size_t >( it - _alphabet.begin() );
    }
    }
    return std::nullopt;
}

StateSet Lts::strong_successors( StateId s, const Action& alpha ) const
{
    StateSet result = empty_set();
    for ( const auto& t : outgoing( s ) )
        if ( t.action == alpha )
            result.insert( t.target );
    return result;
}

const StateSet& Lts::weak_tau_closure( StateId s ) const
{
    check_state( s );
    return _tau_closure[ s ];
}

const StateSet& Lts::weak_derivatives( StateId s, const Action& alpha ) const
{
    check_state( s );
    if ( alpha.is_tau() )
        return _tau_closure[ s ];
    if ( alpha.is_omega() )
        throw domain_error( "weak derivatives are not defined for omega" );
    auto index = action_index( alpha );
    if ( !index )
        throw domain_error( "action '" + alpha.name() + "' is not in the alphabet of LTS '" + _name + "'" );

    std::lock_guard lock( _weak_cache->mutex );
    auto& slot = _weak_cache->table[ *index ][ s ];
    if ( !slot )
    {
        StateSet result = empty_set();
        _tau_closure[ s ].for_each( [ & ]( StateId mid ) {
            for ( const auto& t : outgoing( mid ) )
                if ( t.action == alpha )
                    result |= _tau_closure[ t.target ];
        } );
        slot = std::move( result );
    }
    return *slot;
}

bool Lts::converges( StateId s ) const
{
    check_state( s );
    return _convergent.contains( s );
}

StateSet Lts::tau_predecessor_closure( const StateSet& target ) const
{
    StateSet result = empty_set();
    for ( StateId u = 0; u < num_states(); ++u )
        if ( _tau_closure[ u ].intersects( target ) )
            result.insert( u );
    return result;
}

StateSet Lts::weak_predecessors( const StateSet& target, const Action& alpha ) const
{
    if ( alpha.is_omega() )
        throw domain_error( "weak predecessors are not defined for omega" );
    StateSet after = tau_predecessor_closure( target );
    if ( alpha.is_tau() )
        return after;
    auto index = action_index( alpha );
    if ( !index )
        return empty_set();
    StateSet before = empty_set();
    for ( auto [ src, dst ] : _by_action[ *index ] )
        if ( after.contains( dst ) )
            before.insert( src );
    return tau_predecessor_closure( before );
}

void Lts::finalize()
{
    const auto n = num_states();
    std::sort( _transitions.begin(), _transitions.end() );
    _transitions.erase( std::unique( _transitions.begin(), _transitions.end() ), _transitions.end() );

    _out_offsets.assign( n + 1, 0 );
    for ( const auto& t : _transitions )
        ++_out_offsets[ t.source + 1 ];
    for ( std::size_t i = 0; i < n; ++i )
        _out_offsets[ i + 1 ] += _out_offsets[ i ];

    for ( const auto& t : _transitions )
    {
        if ( t.action.is_visible() )
            _alphabet.push_back( t.action.name() );
        _has_omega = _has_omega || t.action.is_omega();
    }
    std::sort( _alphabet.begin(), _alphabet.end() );
    _alphabet.erase( std::unique( _alphabet.begin(), _alphabet.end() ), _alphabet.end() );

    _by_action.assign( 2 + _alphabet.size(), {} );
    for ( const auto& t : _transitions )
        _by_action[ *action_index( t.action ) ].emplace_back( t.source, t.target );

    // τ-closure: condense the τ-subgraph into SCCs, then propagate closures
    // in reverse topological order (boost numbers components so that every
    // edge goes from a higher to a lower or equal component number).
    using Graph = boost::adjacency_list< boost::vecS, boost::vecS, boost::directedS >;
    Graph tau_graph( n );
    for ( auto [ src, dst ] : _by_action[ 0 ] )
        boost::add_edge( src, dst, tau_graph );
    std::vector< std::size_t > component( n );
    const auto num_components = n == 0 ? 0 : boost::strong_components( tau_graph, component.data() );

    std::vector< std::vector< StateId > > members( num_components );
    for ( StateId s = 0; s < n; ++s )
        members[ component[ s ] ].push_back( s );

    std::vector< StateSet > component_closure( num_components, empty_set() );
    for ( std::size_t c = 0; c < num_components; ++c )
    {
        auto& closure = component_closure[ c ];
        for ( auto s : members[ c ] )
            closure.insert( s );
        for ( auto s : members[ c ] )
            for ( const auto& t : outgoing( s ) )
                if ( t.action.is_tau() && component[ t.target ] != c )
                    closure |= component_closure[ component[ t.target ] ];
    }

    _tau_closure.clear();
    _tau_closure.reserve( n );
    for ( StateId s = 0; s < n; ++s )
        _tau_closure.push_back( component_closure[ component[ s ] ] );

    _tau_cyclic = empty_set();
    for ( auto [ src, dst ] : _by_action[ 0 ] )
        if ( src == dst || members[ component[ src ] ].size() > 1 )
            _tau_cyclic.insert( src );

    _convergent = empty_set();
    for ( StateId s = 0; s < n; ++s )
        if ( !_tau_closure[ s ].intersects( _tau_cyclic ) )
            _convergent.insert( s );

    _weak_cache = std::make_shared< WeakCache >();
    _weak_cache->table.assign( 2 + _alphabet.size(), std::vector< std::optional< StateSet > >( n ) );
}

StateId LtsBuilder::add_state( std::string_view name )
{
    std::string key( name );
    if ( key.empty() )
        throw domain_error( "state names must be nonempty" );
    auto [ it, inserted ] = _ids.try_emplace( key, static_cast< StateId >( _names.size() ) );
    if ( inserted )
        _names.push_back( std::move( key ) );
    return it->second;
}

void LtsBuilder::add_transition( StateId source, const Action& action, StateId target )
{
    if ( source >= _names.size() || target >= _names.size() )
        throw domain_error( "transition refers to an undeclared state id" );
    _transitions.push_back( { source, action, target } );
}

void LtsBuilder::add_transition( std::string_view source, const Action& action, std::string_view target )
{
    auto src = add_state( source );
    auto dst = add_state( target );
    add_transition( src, action, dst );
}

void LtsBuilder::set_initial( StateId s )
{
    if ( s >= _names.size() )
        throw domain_error( "initial state id out of range" );
    _initial = s;
}

Lts LtsBuilder::build() const
{
    if ( _names.empty() )
        throw domain_error( "an LTS needs at least one state" );
    Lts lts;
    lts._name = _name;
    lts._state_names = _names;
    lts._state_ids = _ids;
    lts._transitions = _transitions;
    lts._initial = _initial.value_or( 0 );
    lts.finalize();
    return lts;
}

} // namespace hml
