#pragma once

#include <string_view>

#include "ast.hpp"

namespace tyro {

// Parses the ML fragment. Concrete syntax:
//   item  ::= "let" ident "=" expr ";;" | expr ";;"?
//   expr  ::= "fun" ident "->" expr
//           | "if" expr "then" expr "else" expr
//           | "let" ident "=" expr "in" expr
//           | app
//   app   ::= atom+                       (left-associative)
//   atom  ::= int | float | string | "true" | "false" | ident | "(" expr ")"
//
// Throws Error{TYRO_ERR_SYNTAX} with the position of the offending token.
Program parse(std::string_view source);

} // namespace tyro
