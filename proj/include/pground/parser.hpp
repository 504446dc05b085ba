#pragma once

#include <span>
#include <string>
#include <string_view>

#include "pground/model.hpp"

namespace pground {

// Grammar (one statement per rule, each terminated by '.'):
//   statement := head [":-" body] "." | ":-" body "."
//   head      := atom { ("|" | "v") atom }
//   body      := literal { "," literal }
//   literal   := ["not"] atom
//   atom      := ident [ "(" term { "," term } ")" ]
//   term      := Variable | ident | unsigned-integer
// '%' starts a line comment. Variables start with an uppercase letter.
//
// Throws SyntaxError, ArityMismatch or SafetyError. The result has its
// predicates classified (EDB facts moved to Program::edb).
Program parse_program(std::string_view text);

// Parses exactly one statement without the safety check or classification.
Rule parse_rule(std::string_view text, Vocabulary& vocabulary);

// Parses variable-free text into ground rules, interning names into vocabulary.
// Every statement, facts included, becomes one member of the result.
GroundProgram parse_ground_program(std::string_view text, Vocabulary& vocabulary);

std::string render_atom(PredicateId predicate, std::span<const Symbol> args, const Vocabulary& vocabulary);
std::string render_atom(const GroundAtom& atom, const Vocabulary& vocabulary);
std::string render_rule(const GroundRule& rule, const Vocabulary& vocabulary);
std::string render_rule(const Rule& rule, const Vocabulary& vocabulary);

// One rule per line, lines sorted lexicographically. EDB facts are included
// only when facts is non-empty.
std::string render_ground_program(const GroundProgram& program, const Vocabulary& vocabulary,
                                  std::span<const GroundAtom> facts = {});

// Non-ground rendering of a whole program (EDB facts first, then rules in id order).
std::string render_program(const Program& program);

}  // namespace pground
