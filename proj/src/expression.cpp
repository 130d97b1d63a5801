#include "nonnoether/expression.hpp"

#include <algorithm>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>

namespace nonnoether::expr {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : Error("syntax error at offset " + std::to_string(offset) + ": expected one of {" + join(expected) +
            "}, found " + found),
      offset_(offset),
      expected_(std::move(expected)) {}

UnknownIdentifier::UnknownIdentifier(std::string name, std::size_t offset)
    : Error("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
      name_(std::move(name)),
      offset_(offset) {}

DomainError::DomainError(const std::string& what, std::size_t offset)
    : NumericalDomainError(what + " (subexpression at offset " + std::to_string(offset) + ")"), offset_(offset) {}

struct Expression::Node {
  enum class Kind { number, variable, constant, negate, add, sub, mul, div, pow, call };

  Kind kind = Kind::number;
  double value = 0.0;
  int index = -1;
  std::string name;
  Func func = Func::sin;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  std::size_t offset = 0;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;
using Kind = Node::Kind;

struct FunctionName {
  std::string_view name;
  Func func;
};

constexpr FunctionName kFunctions[] = {
    {"sin", Func::sin}, {"cos", Func::cos}, {"exp", Func::exp}, {"ln", Func::ln}, {"sqrt", Func::sqrt},
};

std::string_view function_name(Func f) {
  for (const auto& entry : kFunctions) {
    if (entry.func == f) return entry.name;
  }
  return "?";
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

const std::vector<std::string> kOperandStart = {"number", "identifier", "'('", "'-'"};

class Parser {
 public:
  Parser(std::string_view src, const Symbols& symbols) : src_(src), symbols_(symbols) {}

  NodePtr parse() {
    NodePtr root = expression();
    skip_space();
    if (pos_ != src_.size()) {
      throw SyntaxError(pos_, {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"}, found());
    }
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  std::string found() const {
    if (pos_ >= src_.size()) return "end of input";
    return std::string("'") + src_[pos_] + "'";
  }

  static NodePtr make_binary(Kind kind, NodePtr a, NodePtr b, std::size_t offset) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    n->offset = offset;
    return n;
  }

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      const std::size_t at = pos_++;
      lhs = make_binary(c == '+' ? Kind::add : Kind::sub, lhs, term(), at);
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      const std::size_t at = pos_++;
      lhs = make_binary(c == '*' ? Kind::mul : Kind::div, lhs, unary(), at);
    }
  }

  NodePtr unary() {
    if (peek() == '-') {
      auto n = std::make_shared<Node>();
      n->kind = Kind::negate;
      n->offset = pos_++;
      n->a = unary();
      return n;
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (peek() == '^') {
      const std::size_t at = pos_++;
      return make_binary(Kind::pow, base, unary(), at);
    }
    return base;
  }

  NodePtr primary() {
    const char c = peek();
    const std::size_t start = pos_;
    if (c == '(') {
      ++pos_;
      NodePtr inner = expression();
      if (peek() != ')') throw SyntaxError(pos_, {"')'"}, found());
      ++pos_;
      return inner;
    }
    if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) return number();
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      std::string name(src_.substr(start, pos_ - start));
      for (const auto& f : kFunctions) {
        if (f.name == name && peek() == '(') {
          ++pos_;
          auto n = std::make_shared<Node>();
          n->kind = Kind::call;
          n->func = f.func;
          n->offset = start;
          n->a = expression();
          if (peek() != ')') throw SyntaxError(pos_, {"')'"}, found());
          ++pos_;
          return n;
        }
      }
      const bool bound = std::find(symbols_.variables.begin(), symbols_.variables.end(), name) !=
                             symbols_.variables.end() ||
                         symbols_.constants.count(name) > 0;
      if (!bound) {
        for (const auto& f : kFunctions) {
          if (f.name == name) throw SyntaxError(pos_, {"'('"}, found());
        }
      }
      return identifier(std::move(name), start);
    }
    throw SyntaxError(pos_, kOperandStart, found());
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (is_digit(src_[pos_]) || src_[pos_] == '.')) ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
      if (q < src_.size() && is_digit(src_[q])) {
        pos_ = q;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw SyntaxError(start, {"number"}, "malformed number");
    auto n = std::make_shared<Node>();
    n->kind = Kind::number;
    n->value = value;
    n->offset = start;
    return n;
  }

  NodePtr identifier(std::string name, std::size_t offset) {
    auto n = std::make_shared<Node>();
    n->offset = offset;
    for (std::size_t i = 0; i < symbols_.variables.size(); ++i) {
      if (symbols_.variables[i] == name) {
        n->kind = Kind::variable;
        n->index = static_cast<int>(i);
        n->name = std::move(name);
        return n;
      }
    }
    double value = 0.0;
    if (auto it = symbols_.constants.find(name); it != symbols_.constants.end()) {
      value = it->second;
    } else if (name == "pi") {
      value = std::numbers::pi;
    } else if (name == "e") {
      value = std::numbers::e;
    } else {
      throw UnknownIdentifier(std::move(name), offset);
    }
    n->kind = Kind::constant;
    n->value = value;
    n->name = std::move(name);
    return n;
  }

  std::string_view src_;
  const Symbols& symbols_;
  std::size_t pos_ = 0;
};

double checked(double v, const Node& node, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " produced a non-finite value", node.offset);
  return v;
}

double eval(const Node& node, std::span<const double> vars) {
  switch (node.kind) {
    case Kind::number:
    case Kind::constant:
      return node.value;
    case Kind::variable:
      if (node.index >= static_cast<int>(vars.size())) {
        throw DomainError("variable '" + node.name + "' is not bound", node.offset);
      }
      return vars[node.index];
    case Kind::negate:
      return -eval(*node.a, vars);
    case Kind::add:
      return checked(eval(*node.a, vars) + eval(*node.b, vars), node, "addition");
    case Kind::sub:
      return checked(eval(*node.a, vars) - eval(*node.b, vars), node, "subtraction");
    case Kind::mul:
      return checked(eval(*node.a, vars) * eval(*node.b, vars), node, "multiplication");
    case Kind::div: {
      const double num = eval(*node.a, vars);
      const double den = eval(*node.b, vars);
      if (den == 0.0) throw DomainError("division by zero", node.offset);
      return checked(num / den, node, "division");
    }
    case Kind::pow: {
      const double base = eval(*node.a, vars);
      const double ex = eval(*node.b, vars);
      return checked(std::pow(base, ex), node, "power");
    }
    case Kind::call: {
      const double arg = eval(*node.a, vars);
      switch (node.func) {
        case Func::sin:
          return checked(std::sin(arg), node, "sin");
        case Func::cos:
          return checked(std::cos(arg), node, "cos");
        case Func::exp:
          return checked(std::exp(arg), node, "exp");
        case Func::ln:
          if (!(arg > 0.0)) throw DomainError("ln of non-positive value", node.offset);
          return std::log(arg);
        case Func::sqrt:
          if (arg < 0.0) throw DomainError("sqrt of negative value", node.offset);
          return std::sqrt(arg);
      }
    }
  }
  return 0.0;
}

int precedence(const Node& n) {
  switch (n.kind) {
    case Kind::add:
    case Kind::sub:
      return 1;
    case Kind::mul:
    case Kind::div:
      return 2;
    case Kind::negate:
      return 3;
    case Kind::pow:
      return 4;
    default:
      return 5;
  }
}

std::string format_number(double v) {
  char buf[40];
  for (int digits = 1; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    double back = 0.0;
    std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
    if (back == v) break;
  }
  return buf;
}

std::string render(const Node& n);

std::string wrap(const Node& child, bool parens) { return parens ? "(" + render(child) + ")" : render(child); }

std::string render(const Node& n) {
  switch (n.kind) {
    case Kind::number:
      return format_number(n.value);
    case Kind::variable:
    case Kind::constant:
      return n.name;
    case Kind::negate:
      return "-" + wrap(*n.a, precedence(*n.a) < 3);
    case Kind::pow:
      return wrap(*n.a, precedence(*n.a) < 5) + "^" + wrap(*n.b, precedence(*n.b) < 3);
    case Kind::call:
      return std::string(function_name(n.func)) + "(" + render(*n.a) + ")";
    default: {
      const int p = precedence(n);
      const char op = n.kind == Kind::add ? '+' : n.kind == Kind::sub ? '-' : n.kind == Kind::mul ? '*' : '/';
      return wrap(*n.a, precedence(*n.a) < p) + op + wrap(*n.b, precedence(*n.b) <= p);
    }
  }
}

bool same(const Node& x, const Node& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Kind::number:
      return x.value == y.value;
    case Kind::variable:
      return x.index == y.index && x.name == y.name;
    case Kind::constant:
      return x.name == y.name && x.value == y.value;
    case Kind::negate:
      return same(*x.a, *y.a);
    case Kind::call:
      return x.func == y.func && same(*x.a, *y.a);
    default:
      return same(*x.a, *y.a) && same(*x.b, *y.b);
  }
}

bool has_variable(const Node& n) {
  if (n.kind == Kind::variable) return true;
  if (n.a && has_variable(*n.a)) return true;
  return n.b && has_variable(*n.b);
}

}  // namespace

Expression::Expression(std::shared_ptr<const Node> root, std::vector<std::string> variables)
    : root_(std::move(root)), variables_(std::move(variables)) {}

Expression Expression::parse(std::string_view source, const Symbols& symbols) {
  Parser parser(source, symbols);
  return Expression(parser.parse(), symbols.variables);
}

Expression Expression::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::number;
  n->value = value;
  return Expression(std::move(n), {});
}

double Expression::evaluate(std::span<const double> variables) const { return eval(*root_, variables); }

std::string Expression::to_string() const { return render(*root_); }

bool Expression::uses_variables() const { return has_variable(*root_); }

bool Expression::structurally_equal(const Expression& other) const { return same(*root_, *other.root_); }

}  // namespace nonnoether::expr
