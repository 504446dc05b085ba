#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "pground/error.hpp"
#include "pground/symbols.hpp"

namespace pground {

using VarId = std::uint32_t;
using RuleId = std::size_t;

enum class TermKind : std::uint8_t { variable, constant };

// A variable (value is a rule-local VarId) or a constant (value is a Symbol).
struct Term {
  TermKind kind = TermKind::constant;
  std::uint32_t value = 0;

  static Term variable(VarId id) { return {TermKind::variable, id}; }
  static Term constant(Symbol symbol) { return {TermKind::constant, symbol}; }
  bool is_variable() const { return kind == TermKind::variable; }

  friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
  PredicateId predicate = 0;
  std::vector<Term> terms;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Literal {
  bool negative = false;
  Atom atom;

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Rule {
  RuleId id = 0;
  std::vector<Atom> head;
  std::vector<Literal> body;
  // Indexed by VarId, in order of first textual occurrence.
  std::vector<std::string> variables;
  SourceSpan span;

  bool is_constraint() const { return head.empty(); }
  bool is_fact() const { return body.empty() && head.size() == 1; }
  std::size_t positive_count() const;

  // Structural equality ignores id and span.
  friend bool operator==(const Rule& a, const Rule& b) {
    return a.head == b.head && a.body == b.body && a.variables == b.variables;
  }
};

struct GroundAtom {
  PredicateId predicate = 0;
  Tuple args;

  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
  friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

struct GroundLiteral {
  bool negative = false;
  GroundAtom atom;

  friend bool operator==(const GroundLiteral&, const GroundLiteral&) = default;
};

// Variable-free rule stored in one flat buffer:
//   [head count, body count, then per atom: (predicate << 1 | negative), arity, args...]
// Equality and hashing work on the buffer, so rules are cheap set members.
class GroundRule {
 public:
  GroundRule() = default;
  GroundRule(std::span<const GroundAtom> head, std::span<const GroundLiteral> body);

  std::size_t head_size() const { return code_.empty() ? 0 : code_[0]; }
  std::size_t body_size() const { return code_.empty() ? 0 : code_[1]; }
  bool is_constraint() const { return head_size() == 0; }

  std::vector<GroundAtom> head() const;
  std::vector<GroundLiteral> body() const;

  // Visits head atoms then body literals without allocating.
  template <typename HeadFn, typename BodyFn>
  void visit(HeadFn&& on_head, BodyFn&& on_body) const {
    if (code_.empty()) return;
    std::size_t pos = 2;
    const std::size_t heads = code_[0];
    const std::size_t total = heads + code_[1];
    for (std::size_t i = 0; i < total; ++i) {
      const auto tag = code_[pos];
      const auto arity = code_[pos + 1];
      std::span<const Symbol> args(code_.data() + pos + 2, arity);
      if (i < heads) {
        on_head(static_cast<PredicateId>(tag >> 1), args);
      } else {
        on_body((tag & 1u) != 0, static_cast<PredicateId>(tag >> 1), args);
      }
      pos += 2 + arity;
    }
  }

  const std::vector<std::uint32_t>& code() const { return code_; }

  friend bool operator==(const GroundRule&, const GroundRule&) = default;

 private:
  friend class GroundRuleBuilder;
  std::vector<std::uint32_t> code_;
};

// Incremental construction used by the instantiator's hot path.
class GroundRuleBuilder {
 public:
  void reset(std::size_t head_count, std::size_t body_count, std::size_t reserve = 0);
  void add_atom(PredicateId predicate, bool negative, std::span<const Symbol> args);
  void add_atom_begin(PredicateId predicate, bool negative, std::size_t arity);
  void add_arg(Symbol value) { code_.push_back(value); }
  GroundRule build();

 private:
  std::vector<std::uint32_t> code_;
};

struct GroundRuleHash {
  std::size_t operator()(const GroundRule& rule) const noexcept {
    return TupleHash{}(std::span<const std::uint32_t>(rule.code()));
  }
};

using GroundProgram = std::unordered_set<GroundRule, GroundRuleHash>;

struct Program {
  Vocabulary vocabulary;
  std::vector<Rule> rules;
  std::vector<GroundAtom> edb;
  std::set<PredicateId> edb_predicates;
  std::set<PredicateId> idb_predicates;
};

struct PredicateClasses {
  std::set<PredicateId> edb;
  std::set<PredicateId> idb;
};

// First variable (in order of first textual occurrence) that does not occur in a
// positive body literal, or nullopt when the rule is safe.
std::optional<VarId> check_safety(const Rule& rule);

// Splits predicates into EDB/IDB, moves facts over EDB predicates into
// program.edb (deduplicated, input order) and renumbers the remaining rules.
PredicateClasses classify_predicates(Program& program);

// Replaces every variable by values[var]. Throws UnboundVariable when a
// variable maps to kUnbound or lies outside values.
GroundRule substitute(const Rule& rule, std::span<const Symbol> values);

// The ground atom obtained from atom under values (no bound checks).
GroundAtom ground_atom(const Atom& atom, std::span<const Symbol> values);

// Converts a rule without variables; throws UnboundVariable otherwise.
GroundRule to_ground_rule(const Rule& rule);

GroundRule fact_rule(const GroundAtom& atom);

}  // namespace pground
