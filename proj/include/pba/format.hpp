#pragma once

#include "pba/automaton.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace pba {

/// Syntax error in an automaton file. what() reads "line L, column C: ...".
class ParseError : public std::runtime_error
{
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column)
  { }

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses the line-oriented automaton format:
///
///   type: pba|fpm|hpba|nba|dra|pra
///   name: id                        (optional)
///   alphabet: s1 s2 ...
///   states: q1 q2 ...
///   init: q
///   final: q1 q2 ...                (Büchi roles; may be empty)
///   reject: q                       (fpm only, required)
///   pair: {b1 b2 ...} {g1 g2 ...}   (dra, pra; one line per pair)
///   ranks: q1=0 q2=1 ...            (hpba, optional)
///   q -sym-> q' : p/q               (probabilistic roles)
///   q -sym-> q'                     (nondeterministic roles)
///
/// A '#' at the start of a line or after whitespace, and followed by
/// whitespace or the end of the line, starts a comment. Only structure is
/// checked here; validate() handles the semantic invariants.
Automaton parse_automaton(std::string_view text);

/// Deterministic text form: declaration order, canonical fractions.
std::string serialize_automaton(const Automaton& aut);

/// "STEM;CYCLE". Symbols are comma-separated, or concatenated when every
/// symbol of the alphabet is a single character. Throws InputError.
LassoWord parse_lasso(const Automaton& aut, std::string_view text);
std::string format_lasso(const Automaton& aut, const LassoWord& w);

/// Same conventions for a single finite word.
Word parse_word(const Automaton& aut, std::string_view text);
std::string format_word(const Automaton& aut, const Word& w);

} // namespace pba
