#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "pground/model.hpp"

namespace pground {

using Interpretation = std::set<GroundAtom>;

// Herbrand universe and base of a program.
struct HerbrandContext {
  std::vector<Symbol> universe;  // sorted by id
  std::vector<PredicateId> predicates;
  std::size_t base_size = 0;  // Σ |universe|^arity, saturated
};

// Collects the constants of the program's rules and EDB. When there are none,
// interns the constant "psi" into the program's vocabulary and uses it alone.
HerbrandContext herbrand_context(Program& program);

// Every instance of every rule under every substitution by universe constants,
// plus the EDB facts as fact rules. Throws OracleCapExceeded when more than cap
// instances would be enumerated.
GroundProgram naive_ground(const Program& program, const HerbrandContext& context,
                           std::size_t cap = 1'000'000);

// Rules of program whose body is true w.r.t. interpretation.
GroundProgram flp_reduct(const GroundProgram& program, const Interpretation& interpretation);

bool is_model(const GroundProgram& program, const Interpretation& interpretation);

// Answer sets of a ground program, sorted. Atoms that head no rule are false in
// every minimal model, so only head atoms are enumerated; facts are fixed true.
// Throws OracleCapExceeded when more than atom_cap atoms remain to enumerate.
std::vector<Interpretation> answer_sets(const GroundProgram& program, std::size_t atom_cap = 20);

// Answer sets of the naive grounding of program (the program is copied, so a
// fresh constant never leaks into the caller's vocabulary).
std::vector<Interpretation> answer_sets(const Program& program, std::size_t atom_cap = 20,
                                        std::size_t instance_cap = 1'000'000);

// ANS(program) == ANS(ground ∪ EDB(program)).
bool check_ans_equivalence(const Program& program, const GroundProgram& ground, std::size_t atom_cap = 20,
                           std::size_t instance_cap = 1'000'000);

// Rewrites every constraint ":- B." as "false :- B." and adds
// "bad :- false, not bad." over fresh predicate names.
Program encode_constraints(const Program& program);

}  // namespace pground
