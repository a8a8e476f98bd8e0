#include "hml/lts_io.hpp"

#include "hml/error.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace hml
{

namespace
{

struct Token
{
    std::string text;
    std::size_t column;
};

std::vector< Token > split_line( std::string_view line )
{
    std::vector< Token > tokens;
    std::size_t i = 0;
    while ( i < line.size() )
    {
        if ( line[ i ] == '#' )
            break;
        if ( line[ i ] == ' ' || line[ i ] == '\t' || line[ i ] == '\r' )
        {
            ++i;
            continue;
        }
        std::size_t start = i;
        while ( i < line.size() && line[ i ] != ' ' && line[ i ] != '\t' && line[ i ] != '\r' && line[ i ] != '#' )
            ++i;
        tokens.push_back( { std::string( line.substr( start, i - start ) ), start + 1 } );
    }
    return tokens;
}

Action parse_label( const Token& token, std::size_t line )
{
    if ( token.text == "tau" )
        return Action::tau();
    if ( token.text == "omega" )
        return Action::omega();
    if ( !is_visible_action_name( token.text ) )
        throw parse_error( "invalid action label '" + token.text + "'", line, token.column );
    return Action::visible( token.text );
}

} // namespace

Lts parse_lts( std::string_view text )
{
    std::optional< LtsBuilder > builder;
    std::optional< std::string > init;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while ( pos <= text.size() )
    {
        auto end = text.find( '\n', pos );
        if ( end == std::string_view::npos )
            end = text.size();
        auto line = text.substr( pos, end - pos );
        pos = end + 1;
        ++line_no;

        auto tokens = split_line( line );
        if ( tokens.empty() )
            continue;

        if ( !builder )
        {
            if ( tokens[ 0 ].text != "lts" || tokens.size() != 2 )
                throw parse_error( "expected 'lts <name>'", line_no, tokens[ 0 ].column );
            builder.emplace( tokens[ 1 ].text );
            continue;
        }
        if ( !init )
        {
            if ( tokens[ 0 ].text != "init" || tokens.size() != 2 )
                throw parse_error( "expected 'init <state>'", line_no, tokens[ 0 ].column );
            // Resolved at the end so that `state` lines fix the interned order.
            init = tokens[ 1 ].text;
            continue;
        }
        if ( tokens[ 0 ].text == "state" && tokens.size() == 2 )
        {
            builder->add_state( tokens[ 1 ].text );
            continue;
        }
        if ( tokens.size() != 3 )
            throw parse_error( "expected '<src> <label> <dst>'", line_no, tokens[ 0 ].column );
        builder->add_transition( tokens[ 0 ].text, parse_label( tokens[ 1 ], line_no ), tokens[ 2 ].text );
    }
    if ( !builder )
        throw parse_error( "missing 'lts <name>' header", line_no, 1 );
    if ( !init )
        throw parse_error( "missing 'init <state>' line", line_no, 1 );
    builder->set_initial( *init );
    return builder->build();
}

Lts load_lts( const std::filesystem::path& path )
{
    std::ifstream in( path );
    if ( !in )
        throw domain_error( "cannot open '" + path.string() + "'" );
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_lts( buffer.str() );
}

std::string to_text( const Lts& lts )
{
    std::ostringstream out;
    out << "lts " << lts.name() << '\n';
    out << "init " << lts.state_name( lts.initial() ) << '\n';
    for ( StateId s = 0; s < lts.num_states(); ++s )
        out << "state " << lts.state_name( s ) << '\n';
    for ( const auto& t : lts.transitions() )
        out << lts.state_name( t.source ) << ' ' << t.action.to_string() << ' ' << lts.state_name( t.target ) << '\n';
    return out.str();
}

} // namespace hml
