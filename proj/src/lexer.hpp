#pragma once

#include "hml/error.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace hml::detail
{

// Shared scanner for the formula and test grammars: skips whitespace and
// `#` comments, tracks line and column.
class Scanner
{
public:
    explicit Scanner( std::string_view text ) : _text{ text } {}

    void skip_space()
    {
        while ( _pos < _text.size() )
        {
            char c = _text[ _pos ];
            if ( c == '#' )
            {
                while ( _pos < _text.size() && _text[ _pos ] != '\n' )
                    advance();
            }
            else if ( std::isspace( static_cast< unsigned char >( c ) ) )
                advance();
            else
                break;
        }
    }

    bool at_end()
    {
        skip_space();
        return _pos >= _text.size();
    }

    char peek()
    {
        skip_space();
        return _pos < _text.size() ? _text[ _pos ] : '\0';
    }

    bool accept( std::string_view token )
    {
        skip_space();
        if ( _text.substr( _pos, token.size() ) != token )
            return false;
        for ( std::size_t i = 0; i < token.size(); ++i )
            advance();
        return true;
    }

    void expect( std::string_view token )
    {
        if ( !accept( token ) )
            fail( "expected '" + std::string( token ) + "'" );
    }

    // Identifier `[A-Za-z][A-Za-z0-9_]*`, or empty if none starts here.
    std::string_view peek_identifier()
    {
        skip_space();
        std::size_t end = _pos;
        if ( end < _text.size() && std::isalpha( static_cast< unsigned char >( _text[ end ] ) ) )
        {
            ++end;
            while ( end < _text.size()
                    && ( std::isalnum( static_cast< unsigned char >( _text[ end ] ) ) || _text[ end ] == '_' ) )
                ++end;
        }
        return _text.substr( _pos, end - _pos );
    }

    std::string identifier()
    {
        auto id = peek_identifier();
        if ( id.empty() )
            fail( "expected an identifier" );
        for ( std::size_t i = 0; i < id.size(); ++i )
            advance();
        return std::string( id );
    }

    bool accept_keyword( std::string_view word )
    {
        if ( peek_identifier() != word )
            return false;
        for ( std::size_t i = 0; i < word.size(); ++i )
            advance();
        return true;
    }

    [[noreturn]] void fail( const std::string& what )
    {
        skip_space();
        std::string near = _pos < _text.size() ? " near '" + std::string( _text.substr( _pos, 12 ) ) + "'" : " at end of input";
        throw parse_error( what + near, _line, _column );
    }

private:
    void advance()
    {
        if ( _text[ _pos ] == '\n' )
        {
            ++_line;
            _column = 1;
        }
        else
            ++_column;
        ++_pos;
    }

    std::string_view _text;
    std::size_t _pos = 0;
    std::size_t _line = 1;
    std::size_t _column = 1;
};

} // namespace hml::detail
