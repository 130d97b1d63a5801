#pragma once

// Arithmetic expression language for Hamiltonians, symmetry generators and
// symplectic components.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          (right-associative)
//   primary := number | identifier | identifier '(' expr ')' | '(' expr ')'
//
// Functions: sin cos exp ln sqrt. Identifiers resolve to coordinates first,
// then to named constants (user-defined, then pi and e).

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nonnoether/errors.hpp"

namespace nonnoether::expr {

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::string name, std::size_t offset);
  const std::string& name() const { return name_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

/// Evaluation left the domain of a function (ln of a non-positive value,
/// division by zero, ...). `offset` locates the failing subexpression.
class DomainError : public NumericalDomainError {
 public:
  DomainError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct Symbols {
  std::vector<std::string> variables;
  std::map<std::string, double> constants;
};

enum class Func { sin, cos, exp, ln, sqrt };

class Expression {
 public:
  struct Node;

  static Expression parse(std::string_view source, const Symbols& symbols);
  static Expression constant(double value);

  double evaluate(std::span<const double> variables) const;
  /// Minimal-parenthesis rendering that reparses to the same tree.
  std::string to_string() const;
  bool structurally_equal(const Expression& other) const;
  /// False when the value is the same at every point.
  bool uses_variables() const;
  const std::vector<std::string>& variables() const { return variables_; }

 private:
  Expression(std::shared_ptr<const Node> root, std::vector<std::string> variables);

  std::shared_ptr<const Node> root_;
  std::vector<std::string> variables_;
};

inline Expression parse_expression(std::string_view source, const Symbols& symbols) {
  return Expression::parse(source, symbols);
}

}  // namespace nonnoether::expr
