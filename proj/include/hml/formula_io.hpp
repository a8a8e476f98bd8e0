#pragma once

#include "hml/formula.hpp"

#include <string>
#include <string_view>

namespace hml
{

// Formula text grammar:
//
//     tt  ff  X  Acc{a,b}  <a>phi  <tau>phi  [a]phi  [tau]phi
//     phi \/ phi   phi /\ phi   min X. phi   max X. phi   ( phi )
//
// `\/` binds looser than `/\`, both associate to the left, modalities bind
// tightest and a binder body extends as far to the right as possible.
Formula parse_formula( std::string_view text );

// Inverse of parse_formula(): parse_formula(to_string(f)) == f.
std::string to_string( const Formula& phi );

} // namespace hml
