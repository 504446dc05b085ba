#include "pground/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <unordered_map>

namespace pground {
namespace {

enum class Tok { ident, variable, integer, lparen, rparen, comma, dot, if_, bar, not_, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  SourceSpan span;
  bool space_before = false;
  bool space_after = false;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      bool spaced = skip_blank();
      if (!out.empty()) out.back().space_after = spaced;
      Token t = next();
      t.space_before = spaced;
      bool done = t.kind == Tok::end;
      out.push_back(std::move(t));
      if (done) break;
    }
    return out;
  }

 private:
  bool skip_blank() {
    bool skipped = false;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        skipped = true;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        skipped = true;
      } else {
        break;
      }
    }
    return skipped || pos_ == 0;
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  Token next() {
    Token t;
    t.span = {line_, column_};
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    auto single = [&](Tok kind) {
      t.kind = kind;
      t.text = std::string(1, c);
      advance();
      return t;
    };
    switch (c) {
      case '(': return single(Tok::lparen);
      case ')': return single(Tok::rparen);
      case ',': return single(Tok::comma);
      case '.': return single(Tok::dot);
      case '|': return single(Tok::bar);
      case ':':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
          advance();
          advance();
          t.kind = Tok::if_;
          t.text = ":-";
          return t;
        }
        throw SyntaxError(t.span, "unexpected ':' (did you mean ':-'?)");
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits.push_back(text_[pos_]);
        advance();
      }
      auto nz = digits.find_first_not_of('0');
      t.kind = Tok::integer;
      t.text = nz == std::string::npos ? "0" : digits.substr(nz);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        t.text.push_back(text_[pos_]);
        advance();
      }
      if (t.text == "not") {
        t.kind = Tok::not_;
      } else if (std::isupper(static_cast<unsigned char>(t.text[0]))) {
        t.kind = Tok::variable;
      } else {
        t.kind = Tok::ident;
      }
      return t;
    }
    throw SyntaxError(t.span, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, Vocabulary& vocabulary)
      : tokens_(Lexer(text).run()), vocabulary_(vocabulary) {}

  bool at_end() const { return peek().kind == Tok::end; }

  Rule statement() {
    Rule rule;
    rule.span = peek().span;
    variable_ids_.clear();
    current_ = &rule;
    if (peek().kind != Tok::if_) {
      rule.head.push_back(atom());
      while (is_disjunction()) {
        ++index_;
        rule.head.push_back(atom());
      }
    }
    if (peek().kind == Tok::if_) {
      ++index_;
      rule.body.push_back(literal());
      while (peek().kind == Tok::comma) {
        ++index_;
        rule.body.push_back(literal());
      }
    }
    expect(Tok::dot, "'.' at end of statement");
    current_ = nullptr;
    return rule;
  }

 private:
  const Token& peek() const { return tokens_[index_]; }

  bool is_disjunction() const {
    const Token& t = peek();
    if (t.kind == Tok::bar) return true;
    // 'v' between head atoms, separated by whitespace on both sides.
    return t.kind == Tok::ident && t.text == "v" && t.space_before && t.space_after &&
           tokens_[index_ + 1].kind != Tok::lparen;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.span, "expected " + expected + ", found " + found);
  }

  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(what);
    return tokens_[index_++];
  }

  Literal literal() {
    Literal lit;
    if (peek().kind == Tok::not_) {
      ++index_;
      lit.negative = true;
    }
    lit.atom = atom();
    return lit;
  }

  Atom atom() {
    const Token& name = peek();
    if (name.kind != Tok::ident) fail("predicate name");
    ++index_;
    std::vector<Term> terms;
    if (peek().kind == Tok::lparen) {
      ++index_;
      terms.push_back(term());
      while (peek().kind != Tok::rparen) {
        if (peek().kind != Tok::comma) fail("',' or ')'");
        ++index_;
        terms.push_back(term());
      }
      ++index_;
    }
    Atom out;
    out.predicate = vocabulary_.predicates.intern(name.text, terms.size());
    out.terms = std::move(terms);
    return out;
  }

  Term term() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::variable: {
        ++index_;
        auto [it, inserted] = variable_ids_.try_emplace(t.text, static_cast<VarId>(current_->variables.size()));
        if (inserted) current_->variables.push_back(t.text);
        return Term::variable(it->second);
      }
      case Tok::ident:
      case Tok::integer:
        ++index_;
        return Term::constant(vocabulary_.symbols.intern(t.text));
      default:
        fail("term");
    }
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  Vocabulary& vocabulary_;
  Rule* current_ = nullptr;
  std::unordered_map<std::string, VarId> variable_ids_;
};

void append_atom(std::string& out, PredicateId predicate, std::span<const Symbol> args,
                 const Vocabulary& vocabulary) {
  out += vocabulary.predicates.info(predicate).name;
  if (args.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += vocabulary.symbols.name(args[i]);
  }
  out += ')';
}

void append_atom(std::string& out, const Atom& atom, const Rule& rule, const Vocabulary& vocabulary) {
  out += vocabulary.predicates.info(atom.predicate).name;
  if (atom.terms.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < atom.terms.size(); ++i) {
    if (i) out += ',';
    const Term& t = atom.terms[i];
    out += t.is_variable() ? rule.variables[t.value] : vocabulary.symbols.name(t.value);
  }
  out += ')';
}

}  // namespace

Program parse_program(std::string_view text) {
  Program program;
  Parser parser(text, program.vocabulary);
  while (!parser.at_end()) {
    Rule rule = parser.statement();
    rule.id = program.rules.size();
    if (auto bad = check_safety(rule)) throw SafetyError(rule.id, rule.variables[*bad], rule.span);
    program.rules.push_back(std::move(rule));
  }
  classify_predicates(program);
  return program;
}

Rule parse_rule(std::string_view text, Vocabulary& vocabulary) {
  Parser parser(text, vocabulary);
  Rule rule = parser.statement();
  if (!parser.at_end()) {
    Rule extra = parser.statement();
    throw SyntaxError(extra.span, "expected a single statement");
  }
  return rule;
}

GroundProgram parse_ground_program(std::string_view text, Vocabulary& vocabulary) {
  GroundProgram out;
  Parser parser(text, vocabulary);
  while (!parser.at_end()) {
    Rule rule = parser.statement();
    if (!rule.variables.empty()) throw UnboundVariable(rule.variables.front());
    out.insert(to_ground_rule(rule));
  }
  return out;
}

std::string render_atom(PredicateId predicate, std::span<const Symbol> args, const Vocabulary& vocabulary) {
  std::string out;
  append_atom(out, predicate, args, vocabulary);
  return out;
}

std::string render_atom(const GroundAtom& atom, const Vocabulary& vocabulary) {
  return render_atom(atom.predicate, atom.args, vocabulary);
}

std::string render_rule(const GroundRule& rule, const Vocabulary& vocabulary) {
  std::string out;
  std::size_t heads = 0;
  std::size_t body = 0;
  rule.visit(
      [&](PredicateId p, std::span<const Symbol> args) {
        if (heads++) out += " | ";
        append_atom(out, p, args, vocabulary);
      },
      [&](bool negative, PredicateId p, std::span<const Symbol> args) {
        out += body++ ? ", " : (heads ? " :- " : ":- ");
        if (negative) out += "not ";
        append_atom(out, p, args, vocabulary);
      });
  out += '.';
  return out;
}

std::string render_rule(const Rule& rule, const Vocabulary& vocabulary) {
  std::string out;
  for (std::size_t i = 0; i < rule.head.size(); ++i) {
    if (i) out += " | ";
    append_atom(out, rule.head[i], rule, vocabulary);
  }
  for (std::size_t i = 0; i < rule.body.size(); ++i) {
    out += i ? ", " : (rule.head.empty() ? ":- " : " :- ");
    if (rule.body[i].negative) out += "not ";
    append_atom(out, rule.body[i].atom, rule, vocabulary);
  }
  out += '.';
  return out;
}

std::string render_ground_program(const GroundProgram& program, const Vocabulary& vocabulary,
                                  std::span<const GroundAtom> facts) {
  std::vector<std::string> lines;
  lines.reserve(program.size() + facts.size());
  for (const auto& rule : program) lines.push_back(render_rule(rule, vocabulary));
  for (const auto& fact : facts) lines.push_back(render_atom(fact, vocabulary) + ".");
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::size_t total = 0;
  for (const auto& l : lines) total += l.size() + 1;
  std::string out;
  out.reserve(total);
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

std::string render_program(const Program& program) {
  std::string out;
  for (const auto& fact : program.edb) out += render_atom(fact, program.vocabulary) + ".\n";
  for (const auto& rule : program.rules) out += render_rule(rule, program.vocabulary) + "\n";
  return out;
}

}  // namespace pground
