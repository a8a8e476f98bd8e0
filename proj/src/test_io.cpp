#include "hml/test_io.hpp"

#include "lexer.hpp"

namespace hml
{

namespace
{

enum level
{
    binder_level = 0,
    sum_level = 1,
    prefix_level = 2,
};

class TestParser
{
public:
    explicit TestParser( std::string_view text ) : _scan{ text } {}

    Test parse()
    {
        Test t = sum();
        if ( !_scan.at_end() )
            _scan.fail( "unexpected input after test" );
        return t;
    }

private:
    Test sum()
    {
        Test t = term();
        while ( _scan.accept( "+" ) )
            t = Test::sum( t, term() );
        return t;
    }

    Test term()
    {
        if ( _scan.accept( "(" ) )
        {
            Test t = sum();
            _scan.expect( ")" );
            return t;
        }
        if ( _scan.accept( "0" ) )
            return Test::nil();

        auto id = _scan.peek_identifier();
        if ( id.empty() )
            _scan.fail( "expected a test" );
        std::string name = _scan.identifier();

        if ( name == "mu" && _scan.peek() != '.' )
        {
            auto var = _scan.identifier();
            if ( !is_variable_name( var ) )
                _scan.fail( "expected a variable after 'mu'" );
            _scan.expect( "." );
            return Test::mu( var, sum() );
        }
        if ( is_variable_name( name ) )
            return Test::var( name );

        _scan.expect( "." );
        if ( name == "w" )
        {
            if ( !_scan.accept( "0" ) )
                _scan.fail( "success must be written w.0" );
            return Test::success();
        }
        if ( name == "omega" )
            _scan.fail( "omega is written w.0 in tests" );
        if ( name == "tau" )
            return Test::prefix( Action::tau(), term() );
        if ( !is_visible_action_name( name ) )
            _scan.fail( "invalid action name '" + name + "'" );
        return Test::prefix( Action::visible( name ), term() );
    }

    detail::Scanner _scan;
};

void print( const Test& t, int context, std::string& out )
{
    switch ( t.kind() )
    {
    case test_kind::nil:
        out += '0';
        return;
    case test_kind::success:
        out += "w.0";
        return;
    case test_kind::var:
        out += t.name();
        return;
    case test_kind::prefix:
        out += t.action().to_string();
        out += '.';
        print( t.body(), prefix_level, out );
        return;
    case test_kind::sum:
    {
        bool parens = context > sum_level;
        if ( parens )
            out += '(';
        print( t.left(), sum_level, out );
        out += " + ";
        print( t.right(), prefix_level, out );
        if ( parens )
            out += ')';
        return;
    }
    case test_kind::mu:
    {
        bool parens = context > binder_level;
        if ( parens )
            out += '(';
        out += "mu " + t.name() + ". ";
        print( t.body(), binder_level, out );
        if ( parens )
            out += ')';
        return;
    }
    }
}

} // namespace

Test parse_test( std::string_view text )
{
    TestParser parser( text );
    return parser.parse();
}

std::string to_string( const Test& t )
{
    std::string out;
    print( t, binder_level, out );
    return out;
}

} // namespace hml
