#pragma once

#include <string>

#include "fotpi/formula.hpp"

namespace fotpi {

class MacroRegistry;

struct ParseError : error {
    int line, col;
    ParseError(const std::string& msg, int line_, int col_)
        : error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) +
                ": " + msg),
          line(line_),
          col(col_) {}
};

/// Parses the formula DSL. When a registry is given, macro names, arities and
/// argument kinds are checked at parse time.
FormulaPtr parse_formula(const std::string& text, const MacroRegistry* registry = nullptr);

/// parse(print(f)) is the identity on canonical ASTs.
std::string print_formula(const FormulaPtr& f);

Term parse_term(const std::string& text);

}  // namespace fotpi
