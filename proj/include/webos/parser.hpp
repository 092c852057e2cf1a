// Recursive-descent parser for the concrete network/term syntax.
#pragma once

#include <stdexcept>
#include <string>

#include "webos/ast.hpp"

namespace webos {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int line_, int col_, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + msg),
        line(line_), col(col_) {}
};

// Parses a full network (and normalizes the restriction tree into the flat
// form, keeping user binder names).
Network parse_network(const std::string& text);

TermPtr parse_term(const std::string& text);
Url parse_url(const std::string& text);
Ref parse_ref(const std::string& text);
ValuePtr parse_value(const std::string& text);
Pattern parse_pattern(const std::string& text);
Location parse_location(const std::string& text);

}  // namespace webos
