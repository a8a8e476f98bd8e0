#pragma once

#include "hml/lts.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace hml
{

// Text format, one LTS per file, `#` starts a line comment:
//
//     lts <name>
//     init <state>
//     state <name>              (optional, declares a state)
//     <src> <label> <dst>       (label: tau, omega or [a-z][a-zA-Z0-9_]*)
//
// States are interned in order of first mention; the `init` line does not
// count as a mention, so the `state` lines of to_text() fix the order.
Lts parse_lts( std::string_view text );
Lts load_lts( const std::filesystem::path& path );

// Emits every state with a `state` line so that parsing the output
// reproduces the same interned order.
std::string to_text( const Lts& lts );

} // namespace hml
