#pragma once

#include <string>

#include "confl/trs.hpp"

namespace confl {

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line, std::size_t col)
        : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(col)),
          line(line),
          col(col) {}
    std::size_t line;
    std::size_t col;
};

/// Parses the COPS TRS format: (VAR x y ...), (RULES l -> r ...), optional
/// (COMMENT ...). Rule ids are assigned r1, r2, ... in file order.
/// Unsupported blocks (THEORY, SIG, ...) raise a ParseError naming the block.
Trs parse_cops(const std::string& text);

/// Parses a term in canonical syntax. Identifiers listed in vars (or absent
/// from the signature with no argument list) are variables; applications are
/// checked against the signature's arities.
Term parse_term(const std::string& text, const std::map<std::string, std::size_t>& signature,
                const std::set<std::string>& vars);

}  // namespace confl
