#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pground {

// 1-based position inside a source text.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(SourceSpan span, const std::string& message)
      : Error(message), span_(span) {}
  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

class SafetyError : public Error {
 public:
  SafetyError(std::size_t rule_id, std::string variable, SourceSpan span)
      : Error("safety: variable " + variable + " of rule " + std::to_string(rule_id) +
              " does not occur in a positive body literal"),
        rule_id_(rule_id),
        variable_(std::move(variable)),
        span_(span) {}
  std::size_t rule_id() const { return rule_id_; }
  const std::string& variable() const { return variable_; }
  SourceSpan span() const { return span_; }

 private:
  std::size_t rule_id_;
  std::string variable_;
  SourceSpan span_;
};

class ArityMismatch : public Error {
 public:
  ArityMismatch(std::string predicate, std::size_t expected, std::size_t found)
      : Error("arity mismatch: predicate " + predicate + " used with arity " +
              std::to_string(found) + " but previously with arity " + std::to_string(expected)),
        predicate_(std::move(predicate)) {}
  const std::string& predicate() const { return predicate_; }

 private:
  std::string predicate_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& variable)
      : Error("unbound variable " + variable) {}
};

class MultiHeadSpan : public Error {
 public:
  using Error::Error;
};

class NoPositiveLiteral : public Error {
 public:
  using Error::Error;
};

class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

class OracleCapExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

}  // namespace pground
