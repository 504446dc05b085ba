#include "pground/model.hpp"

#include <algorithm>
#include <map>

namespace pground {

std::size_t Rule::positive_count() const {
  return static_cast<std::size_t>(
      std::count_if(body.begin(), body.end(), [](const Literal& l) { return !l.negative; }));
}

GroundRule::GroundRule(std::span<const GroundAtom> head, std::span<const GroundLiteral> body) {
  GroundRuleBuilder builder;
  builder.reset(head.size(), body.size());
  for (const auto& atom : head) builder.add_atom(atom.predicate, false, atom.args);
  for (const auto& lit : body) builder.add_atom(lit.atom.predicate, lit.negative, lit.atom.args);
  *this = builder.build();
}

std::vector<GroundAtom> GroundRule::head() const {
  std::vector<GroundAtom> out;
  visit([&](PredicateId p, std::span<const Symbol> args) { out.push_back({p, {args.begin(), args.end()}}); },
        [](bool, PredicateId, std::span<const Symbol>) {});
  return out;
}

std::vector<GroundLiteral> GroundRule::body() const {
  std::vector<GroundLiteral> out;
  visit([](PredicateId, std::span<const Symbol>) {},
        [&](bool negative, PredicateId p, std::span<const Symbol> args) {
          out.push_back({negative, {p, {args.begin(), args.end()}}});
        });
  return out;
}

void GroundRuleBuilder::reset(std::size_t head_count, std::size_t body_count, std::size_t reserve) {
  code_.clear();
  code_.reserve(2 + reserve);
  code_.push_back(static_cast<std::uint32_t>(head_count));
  code_.push_back(static_cast<std::uint32_t>(body_count));
}

void GroundRuleBuilder::add_atom(PredicateId predicate, bool negative, std::span<const Symbol> args) {
  add_atom_begin(predicate, negative, args.size());
  code_.insert(code_.end(), args.begin(), args.end());
}

void GroundRuleBuilder::add_atom_begin(PredicateId predicate, bool negative, std::size_t arity) {
  code_.push_back((predicate << 1) | (negative ? 1u : 0u));
  code_.push_back(static_cast<std::uint32_t>(arity));
}

GroundRule GroundRuleBuilder::build() {
  GroundRule rule;
  rule.code_ = std::move(code_);
  code_.clear();
  return rule;
}

std::optional<VarId> check_safety(const Rule& rule) {
  std::vector<bool> bound(rule.variables.size(), false);
  for (const auto& lit : rule.body) {
    if (lit.negative) continue;
    for (const auto& t : lit.atom.terms)
      if (t.is_variable()) bound[t.value] = true;
  }
  // VarIds follow first textual occurrence, so the smallest unbound id is the
  // first offending variable in text order.
  for (VarId v = 0; v < bound.size(); ++v)
    if (!bound[v]) return v;
  return std::nullopt;
}

PredicateClasses classify_predicates(Program& program) {
  PredicateClasses classes;
  std::set<PredicateId> defined_by_rule;
  std::set<PredicateId> mentioned;
  for (const auto& rule : program.rules) {
    for (const auto& a : rule.head) {
      mentioned.insert(a.predicate);
      if (!rule.is_fact()) defined_by_rule.insert(a.predicate);
    }
    for (const auto& l : rule.body) mentioned.insert(l.atom.predicate);
  }
  for (const auto& a : program.edb) mentioned.insert(a.predicate);

  for (PredicateId p : mentioned) {
    if (defined_by_rule.count(p)) {
      classes.idb.insert(p);
    } else {
      classes.edb.insert(p);
    }
  }

  // First occurrence of each fact wins, in input order.
  std::set<GroundAtom> seen;
  std::vector<GroundAtom> edb;
  for (const auto& a : program.edb)
    if (seen.insert(a).second) edb.push_back(a);

  std::vector<Rule> remaining;
  for (auto& rule : program.rules) {
    if (rule.is_fact() && classes.edb.count(rule.head[0].predicate)) {
      GroundAtom atom{rule.head[0].predicate, {}};
      for (const auto& t : rule.head[0].terms) atom.args.push_back(t.value);
      if (seen.insert(atom).second) edb.push_back(std::move(atom));
      continue;
    }
    remaining.push_back(std::move(rule));
  }
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i].id = i;

  program.rules = std::move(remaining);
  program.edb = std::move(edb);
  program.edb_predicates = classes.edb;
  program.idb_predicates = classes.idb;
  return classes;
}

GroundAtom ground_atom(const Atom& atom, std::span<const Symbol> values) {
  GroundAtom out{atom.predicate, {}};
  out.args.reserve(atom.terms.size());
  for (const auto& t : atom.terms) out.args.push_back(t.is_variable() ? values[t.value] : t.value);
  return out;
}

GroundRule substitute(const Rule& rule, std::span<const Symbol> values) {
  std::size_t width = 0;
  for (const auto& a : rule.head) width += 2 + a.terms.size();
  for (const auto& l : rule.body) width += 2 + l.atom.terms.size();
  GroundRuleBuilder builder;
  builder.reset(rule.head.size(), rule.body.size(), width);
  auto emit = [&](const Atom& atom, bool negative) {
    builder.add_atom_begin(atom.predicate, negative, atom.terms.size());
    for (const auto& t : atom.terms) {
      if (!t.is_variable()) {
        builder.add_arg(t.value);
        continue;
      }
      if (t.value >= values.size() || values[t.value] == kUnbound) {
        throw UnboundVariable(t.value < rule.variables.size() ? rule.variables[t.value]
                                                              : std::to_string(t.value));
      }
      builder.add_arg(values[t.value]);
    }
  };
  for (const auto& a : rule.head) emit(a, false);
  for (const auto& l : rule.body) emit(l.atom, l.negative);
  return builder.build();
}

GroundRule to_ground_rule(const Rule& rule) { return substitute(rule, {}); }

GroundRule fact_rule(const GroundAtom& atom) {
  return GroundRule(std::span<const GroundAtom>(&atom, 1), {});
}

}  // namespace pground
