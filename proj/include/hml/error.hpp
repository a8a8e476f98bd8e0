#pragma once

#include <stdexcept>
#include <string>

namespace hml
{

// Precondition violated by the caller: unknown state, unbound variable,
// formula outside the required fragment, and so on.
class domain_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed text input. Carries the 1-based line and column of the
// offending token.
class parse_error : public std::runtime_error
{
public:
    parse_error( const std::string& what, std::size_t line, std::size_t column )
            : std::runtime_error( "line " + std::to_string( line ) + ", column " + std::to_string( column ) + ": "
                                  + what ),
              _line{ line }, _column{ column }
    {}

    std::size_t line() const { return _line; }
    std::size_t column() const { return _column; }

private:
    std::size_t _line;
    std::size_t _column;
};

// An internal guarantee did not hold (e.g. the exploration cap was hit).
class invariant_error : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

} // namespace hml
