#pragma once

// A small expression language for problem definitions.
//
//   expr    := expr ('+'|'-') expr | expr ('*'|'/') expr | '-' expr
//            | expr '^' expr | primary
//   primary := number | variable | function '(' args ')' | '(' expr ')'
//
// Precedence, loosest first: + -, * /, unary -, ^ (right-associative).
// See docs/expression_grammar.md for the full grammar.

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fracvide::expr {

class LexError : public std::runtime_error {
 public:
  LexError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TokenKind : std::uint8_t {
  kNumber,
  kIdent,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kCaret,
  kLParen,
  kRParen,
  kComma,
  kEnd,
};

struct Token {
  TokenKind kind;
  std::string_view text;  // view into the tokenised source
  double number = 0.0;
  std::size_t offset = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Whitespace is skipped; the result always ends with a kEnd token.
std::vector<Token> tokenize(std::string_view source);

enum class Var : std::uint8_t { t, s, tau, eps, mu, gamma, T, pi, e };
inline constexpr std::size_t kVarCount = 9;

enum class Func : std::uint8_t { exp, ln, sin, cos, sqrt, abs, pow, beta };

std::string_view var_name(Var v);
std::string_view func_name(Func f);
std::optional<Var> lookup_var(std::string_view name);

/// Variable values; pi and e are pre-bound.
class Bindings {
 public:
  Bindings();
  Bindings& set(Var v, double value);
  Bindings& set(std::string_view name, double value);
  std::optional<double> get(Var v) const { return values_[static_cast<std::size_t>(v)]; }

 private:
  std::array<std::optional<double>, kVarCount> values_{};
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind : std::uint8_t { kNumber, kVar, kNeg, kBinary, kCall };
  Kind kind;
  double number = 0.0;
  Var var = Var::t;
  Func func = Func::exp;
  char op = 0;  // one of + - * / ^ for kBinary
  std::vector<NodePtr> args;
};

/// Immutable expression tree.
class Expr {
 public:
  Expr() = default;
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  const Node* root() const { return root_.get(); }
  const NodePtr& node() const { return root_; }
  bool empty() const { return root_ == nullptr; }

  double eval(const Bindings& bindings) const;

  /// Fully parenthesised text; parse(print()) rebuilds the same tree.
  std::string print() const;

  /// Structural equality (numbers compared bitwise).
  friend bool operator==(const Expr& a, const Expr& b);

  /// True if the expression mentions v.
  bool uses(Var v) const;

 private:
  NodePtr root_;
};

inline constexpr int kMaxParseDepth = 64;

Expr parse(std::span<const Token> tokens);
Expr parse(std::string_view source);

double eval(const Expr& e, const Bindings& bindings);
std::string print(const Expr& e);

// Builders, used by tests and generators.
Expr number(double v);
Expr variable(Var v);
Expr negate(Expr a);
Expr binary(char op, Expr a, Expr b);
Expr call(Func f, std::vector<Expr> args);

}  // namespace fracvide::expr
