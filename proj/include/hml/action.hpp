#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace hml
{

enum class action_kind
{
    tau,
    omega,
    visible,
};

// An element of Act ∪ {τ, ω}. Visible actions carry a nonempty name; τ and ω
// are distinct from every visible action.
class Action
{
public:
    static Action tau() { return Action{ action_kind::tau, {} }; }
    static Action omega() { return Action{ action_kind::omega, {} }; }
    static Action visible( std::string name );

    action_kind kind() const { return _kind; }
    bool is_tau() const { return _kind == action_kind::tau; }
    bool is_omega() const { return _kind == action_kind::omega; }
    bool is_visible() const { return _kind == action_kind::visible; }

    // Empty unless visible.
    const std::string& name() const { return _name; }

    // `tau`, `omega`, or the visible name.
    std::string to_string() const;

    auto operator<=>( const Action& ) const = default;

private:
    Action( action_kind kind, std::string name ) : _kind{ kind }, _name{ std::move( name ) } {}

    action_kind _kind;
    std::string _name;
};

// `[a-z][a-zA-Z0-9_]*`, excluding the reserved words `tau` and `omega`.
bool is_visible_action_name( std::string_view name );

// Uppercase-initial identifier `[A-Z][a-zA-Z0-9_]*`.
bool is_variable_name( std::string_view name );

} // namespace hml
