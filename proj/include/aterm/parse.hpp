#pragma once

#include "aterm/term.hpp"

#include <string>
#include <string_view>

namespace aterm {

/// Grammar, loosest to tightest:
///   expr   := mul (('+' | '-') mul)*
///   mul    := power (('*' | '/' | '%') power)*
///   power  := atom ('^' power)?           right-associative
///   atom   := digits | identifier | '(' expr ')'
/// `/` is floored division. There is no unary minus; write `0-x`.
/// Throws ParseError with the byte offset of the offending input.
Term parse(std::string_view text);

/// Minimal-parenthesis rendering; parse(render(t)) == t.
std::string render(const Term& t);

bool is_identifier(std::string_view s);

}  // namespace aterm
