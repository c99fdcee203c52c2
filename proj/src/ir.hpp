#pragma once

#include <string>

#include "types.hpp"

namespace tyro {

// Three sections separated by `---` lines:
//
//   0 1;0-1;23
//   ---
//   0 x('x) {
//     1 'x = string
//   }
//   ---
//   0 x('x0)
//   2 'l2 = bool -> bool
//
// Locations may carry a trailing weight. Whitespace is insignificant on
// input; print_ir produces the canonical layout above.
std::string print_ir(const IrDoc &doc);
IrDoc parse_ir(const std::string &text);

// Monotype concrete syntax, shared with the prelude file format.
TypeRef parse_type_text(const std::string &text);

} // namespace tyro
