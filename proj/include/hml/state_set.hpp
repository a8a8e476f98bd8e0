#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace hml
{

using StateId = std::uint32_t;

// A subset of the states of one LTS, stored as a bitset over the interned
// state order. Binary operations require both operands to have the same
// universe size.
class StateSet
{
public:
    StateSet() = default;
    explicit StateSet( std::size_t universe ) : _bits( universe ) {}
    StateSet( std::size_t universe, std::initializer_list< StateId > members );

    static StateSet empty( std::size_t universe ) { return StateSet( universe ); }
    static StateSet full( std::size_t universe );

    std::size_t universe() const { return _bits.size(); }
    std::size_t count() const { return _bits.count(); }
    bool none() const { return _bits.none(); }
    bool is_full() const { return _bits.all(); }

    bool contains( StateId s ) const { return s < _bits.size() && _bits.test( s ); }
    void insert( StateId s ) { _bits.set( s ); }
    void erase( StateId s ) { _bits.reset( s ); }

    bool is_subset_of( const StateSet& other ) const { return _bits.is_subset_of( other._bits ); }
    bool intersects( const StateSet& other ) const { return _bits.intersects( other._bits ); }

    StateSet& operator|=( const StateSet& other );
    StateSet& operator&=( const StateSet& other );
    StateSet& operator-=( const StateSet& other );
    StateSet complement() const;

    friend StateSet operator|( StateSet a, const StateSet& b ) { return a |= b; }
    friend StateSet operator&( StateSet a, const StateSet& b ) { return a &= b; }
    friend StateSet operator-( StateSet a, const StateSet& b ) { return a -= b; }
    friend bool operator==( const StateSet& a, const StateSet& b ) { return a._bits == b._bits; }

    template < typename F >
    void for_each( F&& f ) const
    {
        for ( auto i = _bits.find_first(); i != boost::dynamic_bitset< std::uint64_t >::npos; i = _bits.find_next( i ) )
            f( static_cast< StateId >( i ) );
    }

    std::vector< StateId > members() const;

    // Appends the raw words to `out`; used for memo keys.
    void append_words( std::vector< std::uint64_t >& out ) const;
    std::size_t hash() const;

private:
    boost::dynamic_bitset< std::uint64_t > _bits;
};

} // namespace hml
