#include "hml/state_set.hpp"

#include <iterator>

namespace hml
{

StateSet::StateSet( std::size_t universe, std::initializer_list< StateId > members ) : _bits( universe )
{
    for ( auto s : members )
        _bits.set( s );
}

StateSet StateSet::full( std::size_t universe )
{
    StateSet result( universe );
    result._bits.set();
    return result;
}

StateSet& StateSet::operator|=( const StateSet& other )
{
    _bits |= other._bits;
    return *this;
}

StateSet& StateSet::operator&=( const StateSet& other )
{
    _bits &= other._bits;
    return *this;
}

StateSet& StateSet::operator-=( const StateSet& other )
{
    _bits -= other._bits;
    return *this;
}

StateSet StateSet::complement() const
{
    StateSet result = *this;
    result._bits.flip();
    return result;
}

std::vector< StateId > StateSet::members() const
{
    std::vector< StateId > out;
    out.reserve( count() );
    for_each( [ & ]( StateId s ) { out.push_back( s ); } );
    return out;
}

void StateSet::append_words( std::vector< std::uint64_t >& out ) const
{
    boost::to_block_range( _bits, std::back_inserter( out ) );
}

std::size_t StateSet::hash() const
{
    std::size_t h = _bits.size() * 0x9e3779b97f4a7c15ULL;
    std::vector< std::uint64_t > words;
    append_words( words );
    for ( auto w : words )
        h ^= w + 0x9e3779b97f4a7c15ULL + ( h << 6 ) + ( h >> 2 );
    return h;
}

} // namespace hml
