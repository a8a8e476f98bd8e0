#include "hml/action.hpp"

#include "hml/error.hpp"

#include <cctype>

namespace hml
{

namespace
{

bool is_ident_tail( std::string_view rest )
{
    for ( char c : rest )
        if ( !std::isalnum( static_cast< unsigned char >( c ) ) && c != '_' )
            return false;
    return true;
}

} // namespace

Action Action::visible( std::string name )
{
    if ( !is_visible_action_name( name ) )
        throw domain_error( "invalid visible action name '" + name + "'" );
    return Action{ action_kind::visible, std::move( name ) };
}

std::string Action::to_string() const
{
    switch ( _kind )
    {
    case action_kind::tau:
        return "tau";
    case action_kind::omega:
        return "omega";
    case action_kind::visible:
        return _name;
    }
    return {};
}

bool is_visible_action_name( std::string_view name )
{
    if ( name.empty() || !std::islower( static_cast< unsigned char >( name.front() ) ) )
        return false;
    if ( name == "tau" || name == "omega" )
        return false;
    return is_ident_tail( name.substr( 1 ) );
}

bool is_variable_name( std::string_view name )
{
    if ( name.empty() || !std::isupper( static_cast< unsigned char >( name.front() ) ) )
        return false;
    return is_ident_tail( name.substr( 1 ) );
}

} // namespace hml
