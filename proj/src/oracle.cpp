#include "pground/oracle.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "pground/costmodel.hpp"
#include "pground/error.hpp"

namespace pground {

namespace {

void collect_constants(const Program& program, std::set<Symbol>& out) {
  for (const auto& rule : program.rules) {
    for (const auto& a : rule.head)
      for (const auto& t : a.terms)
        if (!t.is_variable()) out.insert(t.value);
    for (const auto& l : rule.body)
      for (const auto& t : l.atom.terms)
        if (!t.is_variable()) out.insert(t.value);
  }
  for (const auto& a : program.edb) out.insert(a.args.begin(), a.args.end());
}

// Ground rule in bitmask form over the enumerated atoms.
struct MaskRule {
  std::uint64_t head = 0;
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
};

bool body_true(const MaskRule& r, std::uint64_t i) {
  return (r.positive & ~i) == 0 && (r.negative & i) == 0;
}

bool satisfied(const MaskRule& r, std::uint64_t i) { return !body_true(r, i) || (r.head & i) != 0; }

}  // namespace

HerbrandContext herbrand_context(Program& program) {
  std::set<Symbol> constants;
  collect_constants(program, constants);
  if (constants.empty()) constants.insert(program.vocabulary.symbols.intern("psi"));

  std::set<PredicateId> predicates;
  for (const auto& rule : program.rules) {
    for (const auto& a : rule.head) predicates.insert(a.predicate);
    for (const auto& l : rule.body) predicates.insert(l.atom.predicate);
  }
  for (const auto& a : program.edb) predicates.insert(a.predicate);

  HerbrandContext context;
  context.universe.assign(constants.begin(), constants.end());
  context.predicates.assign(predicates.begin(), predicates.end());
  for (PredicateId p : context.predicates) {
    Count n = 1;
    for (std::uint32_t k = 0; k < program.vocabulary.predicates.info(p).arity; ++k)
      n = saturating_mul(n, context.universe.size());
    context.base_size = saturating_add(context.base_size, n);
  }
  return context;
}

GroundProgram naive_ground(const Program& program, const HerbrandContext& context, std::size_t cap) {
  const Count u = context.universe.size();
  Count total = program.edb.size();
  for (const auto& rule : program.rules) {
    Count n = 1;
    for (std::size_t k = 0; k < rule.variables.size(); ++k) n = saturating_mul(n, u);
    total = saturating_add(total, n);
  }
  if (total > cap)
    throw OracleCapExceeded("naive grounding needs " + std::to_string(total) + " instances, cap is " +
                            std::to_string(cap));

  GroundProgram out;
  for (const auto& atom : program.edb) out.insert(fact_rule(atom));
  for (const auto& rule : program.rules) {
    const std::size_t vars = rule.variables.size();
    std::vector<std::size_t> digits(vars, 0);
    std::vector<Symbol> values(vars);
    while (true) {
      for (std::size_t k = 0; k < vars; ++k) values[k] = context.universe[digits[k]];
      out.insert(substitute(rule, values));
      std::size_t k = 0;
      while (k < vars && ++digits[k] == u) digits[k++] = 0;
      if (k == vars) break;
    }
  }
  return out;
}

GroundProgram flp_reduct(const GroundProgram& program, const Interpretation& interpretation) {
  GroundProgram out;
  for (const auto& rule : program) {
    bool keep = true;
    for (const auto& lit : rule.body())
      if (interpretation.count(lit.atom) == static_cast<std::size_t>(lit.negative)) keep = false;
    if (keep) out.insert(rule);
  }
  return out;
}

bool is_model(const GroundProgram& program, const Interpretation& interpretation) {
  for (const auto& rule : program) {
    bool body = true;
    for (const auto& lit : rule.body())
      if (interpretation.count(lit.atom) == static_cast<std::size_t>(lit.negative)) body = false;
    if (!body) continue;
    bool head = false;
    for (const auto& atom : rule.head()) head = head || interpretation.count(atom) > 0;
    if (!head) return false;
  }
  return true;
}

std::vector<Interpretation> answer_sets(const GroundProgram& program, std::size_t atom_cap) {
  if (atom_cap > 40) throw InvalidParams("oracle atom cap must not exceed 40");

  Interpretation facts;
  for (const auto& rule : program)
    if (rule.head_size() == 1 && rule.body_size() == 0) facts.insert(rule.head()[0]);

  std::map<GroundAtom, std::size_t> index;
  std::vector<GroundAtom> atoms;
  for (const auto& rule : program)
    for (const auto& atom : rule.head())
      if (!facts.count(atom) && index.emplace(atom, 0).second) atoms.push_back(atom);
  std::sort(atoms.begin(), atoms.end());
  for (std::size_t i = 0; i < atoms.size(); ++i) index[atoms[i]] = i;
  if (atoms.size() > atom_cap)
    throw OracleCapExceeded("answer-set enumeration over " + std::to_string(atoms.size()) +
                            " atoms exceeds cap " + std::to_string(atom_cap));

  // Facts are constant true and non-head atoms constant false; rules are
  // simplified accordingly.
  std::vector<MaskRule> rules;
  for (const auto& rule : program) {
    MaskRule m;
    bool body_false = false;
    bool head_true = false;
    for (const auto& lit : rule.body()) {
      const bool fact = facts.count(lit.atom) > 0;
      auto it = index.find(lit.atom);
      if (lit.negative) {
        if (fact) body_false = true;
        if (it != index.end()) m.negative |= std::uint64_t{1} << it->second;
      } else if (!fact) {
        if (it == index.end()) body_false = true;
        else m.positive |= std::uint64_t{1} << it->second;
      }
    }
    for (const auto& atom : rule.head()) {
      if (facts.count(atom)) head_true = true;
      auto it = index.find(atom);
      if (it != index.end()) m.head |= std::uint64_t{1} << it->second;
    }
    if (body_false || head_true) continue;
    rules.push_back(m);
  }

  std::vector<Interpretation> out;
  const std::uint64_t limit = std::uint64_t{1} << atoms.size();
  std::vector<const MaskRule*> reduct;
  for (std::uint64_t i = 0; i < limit; ++i) {
    bool model = true;
    for (const auto& r : rules) {
      if (!satisfied(r, i)) {
        model = false;
        break;
      }
    }
    if (!model) continue;
    reduct.clear();
    for (const auto& r : rules)
      if (body_true(r, i)) reduct.push_back(&r);
    bool minimal = true;
    for (std::uint64_t j = (i - 1) & i; minimal && j != i; j = (j - 1) & i) {
      bool sub_model = true;
      for (const MaskRule* r : reduct) {
        if (!satisfied(*r, j)) {
          sub_model = false;
          break;
        }
      }
      if (sub_model) minimal = false;
      if (j == 0) break;
    }
    if (!minimal) continue;
    Interpretation set = facts;
    for (std::size_t k = 0; k < atoms.size(); ++k)
      if (i >> k & 1) set.insert(atoms[k]);
    out.push_back(std::move(set));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Interpretation> answer_sets(const Program& program, std::size_t atom_cap, std::size_t instance_cap) {
  Program copy = program;
  auto context = herbrand_context(copy);
  return answer_sets(naive_ground(copy, context, instance_cap), atom_cap);
}

bool check_ans_equivalence(const Program& program, const GroundProgram& ground, std::size_t atom_cap,
                           std::size_t instance_cap) {
  GroundProgram with_edb = ground;
  for (const auto& atom : program.edb) with_edb.insert(fact_rule(atom));
  return answer_sets(program, atom_cap, instance_cap) == answer_sets(with_edb, atom_cap);
}

Program encode_constraints(const Program& program) {
  Program out = program;
  auto fresh = [&](std::string name) {
    while (out.vocabulary.predicates.find(name)) name += '_';
    return out.vocabulary.predicates.intern(name, 0);
  };
  const PredicateId falsum = fresh("false");
  const PredicateId bad = fresh("bad");
  for (auto& rule : out.rules)
    if (rule.is_constraint()) rule.head.push_back(Atom{falsum, {}});
  Rule guard;
  guard.id = out.rules.size();
  guard.head.push_back(Atom{bad, {}});
  guard.body.push_back(Literal{false, Atom{falsum, {}}});
  guard.body.push_back(Literal{true, Atom{bad, {}}});
  out.rules.push_back(std::move(guard));
  out.idb_predicates.insert(falsum);
  out.idb_predicates.insert(bad);
  return out;
}

}  // namespace pground
