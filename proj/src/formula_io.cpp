#include "hml/formula_io.hpp"

#include "lexer.hpp"

#include <sstream>

namespace hml
{

namespace
{

enum class level
{
    binder = 0,
    disj = 1,
    conj = 2,
    prefix = 3,
};

void print( std::ostream& out, const Formula& phi, level context )
{
    auto wrap = [ & ]( level own, auto&& body ) {
        bool parens = own < context;
        if ( parens )
            out << '(';
        body();
        if ( parens )
            out << ')';
    };

    switch ( phi.kind() )
    {
    case formula_kind::tt:
        out << "tt";
        return;
    case formula_kind::ff:
        out << "ff";
        return;
    case formula_kind::var:
        out << phi.name();
        return;
    case formula_kind::acc:
    {
        out << "Acc{";
        for ( std::size_t i = 0; i < phi.actions().size(); ++i )
            out << ( i ? "," : "" ) << phi.actions()[ i ];
        out << '}';
        return;
    }
    case formula_kind::disj:
        wrap( level::disj, [ & ] {
            print( out, phi.left(), level::disj );
            out << " \\/ ";
            print( out, phi.right(), level::conj );
        } );
        return;
    case formula_kind::conj:
        wrap( level::conj, [ & ] {
            print( out, phi.left(), level::conj );
            out << " /\\ ";
            print( out, phi.right(), level::prefix );
        } );
        return;
    case formula_kind::diamond:
        out << '<' << phi.action().to_string() << '>';
        print( out, phi.body(), level::prefix );
        return;
    case formula_kind::box:
        out << '[' << phi.action().to_string() << ']';
        print( out, phi.body(), level::prefix );
        return;
    case formula_kind::min:
    case formula_kind::max:
        wrap( level::binder, [ & ] {
            out << ( phi.kind() == formula_kind::min ? "min " : "max " ) << phi.name() << ". ";
            print( out, phi.body(), level::binder );
        } );
        return;
    }
}

class FormulaParser
{
public:
    explicit FormulaParser( std::string_view text ) : _in{ text } {}

    Formula parse()
    {
        Formula result = formula();
        if ( !_in.at_end() )
            _in.fail( "unexpected trailing input" );
        return result;
    }

private:
    Formula formula()
    {
        Formula result = conjunction();
        while ( _in.accept( "\\/" ) )
            result = Formula::disj( result, conjunction() );
        return result;
    }

    Formula conjunction()
    {
        Formula result = unary();
        while ( _in.accept( "/\\" ) )
            result = Formula::conj( result, unary() );
        return result;
    }

    Action modal_action()
    {
        auto name = _in.identifier();
        if ( name == "tau" )
            return Action::tau();
        if ( !is_visible_action_name( name ) )
            _in.fail( "invalid action '" + name + "' in modality" );
        return Action::visible( name );
    }

    Formula unary()
    {
        if ( _in.accept( "<" ) )
        {
            auto alpha = modal_action();
            _in.expect( ">" );
            return Formula::diamond( alpha, unary() );
        }
        if ( _in.accept( "[" ) )
        {
            auto alpha = modal_action();
            _in.expect( "]" );
            return Formula::box( alpha, unary() );
        }
        for ( auto kind : { formula_kind::min, formula_kind::max } )
        {
            if ( _in.accept_keyword( kind == formula_kind::min ? "min" : "max" ) )
            {
                auto var = variable();
                _in.expect( "." );
                Formula body = formula();
                return kind == formula_kind::min ? Formula::min( var, body ) : Formula::max( var, body );
            }
        }
        return atom();
    }

    std::string variable()
    {
        auto name = _in.identifier();
        if ( !is_variable_name( name ) || name == "Acc" )
            _in.fail( "invalid variable name '" + name + "'" );
        return name;
    }

    Formula atom()
    {
        if ( _in.accept( "(" ) )
        {
            Formula inner = formula();
            _in.expect( ")" );
            return inner;
        }
        if ( _in.accept_keyword( "tt" ) )
            return Formula::tt();
        if ( _in.accept_keyword( "ff" ) )
            return Formula::ff();
        if ( _in.accept_keyword( "Acc" ) )
        {
            _in.expect( "{" );
            std::vector< std::string > actions;
            if ( !_in.accept( "}" ) )
            {
                do
                {
                    auto a = _in.identifier();
                    if ( !is_visible_action_name( a ) )
                        _in.fail( "Acc sets contain visible actions only, got '" + a + "'" );
                    actions.push_back( a );
                } while ( _in.accept( "," ) );
                _in.expect( "}" );
            }
            return Formula::acc( std::move( actions ) );
        }
        if ( is_variable_name( _in.peek_identifier() ) )
            return Formula::var( variable() );
        _in.fail( "expected a formula" );
    }

    detail::Scanner _in;
};

} // namespace

Formula parse_formula( std::string_view text )
{
    return FormulaParser( text ).parse();
}

std::string to_string( const Formula& phi )
{
    std::ostringstream out;
    print( out, phi, level::binder );
    return out.str();
}

} // namespace hml
