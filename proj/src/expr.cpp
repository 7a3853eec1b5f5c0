#include "fracvide/expr.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>

#include "fracvide/specfun.hpp"

namespace fracvide::expr {

namespace {

struct FuncInfo {
  std::string_view name;
  Func func;
  int arity;
};

constexpr std::array<FuncInfo, 8> kFuncs{{
    {"exp", Func::exp, 1},
    {"ln", Func::ln, 1},
    {"sin", Func::sin, 1},
    {"cos", Func::cos, 1},
    {"sqrt", Func::sqrt, 1},
    {"abs", Func::abs, 1},
    {"pow", Func::pow, 2},
    {"beta", Func::beta, 2},
}};

constexpr std::array<std::string_view, kVarCount> kVarNames{"t",     "s", "tau", "eps", "mu",
                                                             "gamma", "T", "pi",  "e"};

const FuncInfo* lookup_func(std::string_view name) {
  for (const auto& f : kFuncs) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::string_view var_name(Var v) { return kVarNames[static_cast<std::size_t>(v)]; }

std::string_view func_name(Func f) {
  for (const auto& info : kFuncs) {
    if (info.func == f) return info.name;
  }
  return "?";
}

std::optional<Var> lookup_var(std::string_view name) {
  for (std::size_t i = 0; i < kVarNames.size(); ++i) {
    if (kVarNames[i] == name) return static_cast<Var>(i);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- lexer

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c) || (c == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
      while (i < src.size() && is_digit(src[i])) ++i;
      if (i < src.size() && src[i] == '.') {
        ++i;
        while (i < src.size() && is_digit(src[i])) ++i;
      }
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < src.size() && is_digit(src[j])) {
          i = j;
          while (i < src.size() && is_digit(src[i])) ++i;
        }
      }
      Token tok{TokenKind::kNumber, src.substr(start, i - start), 0.0, start};
      const auto [ptr, ec] = std::from_chars(src.data() + start, src.data() + i, tok.number);
      if (ec != std::errc() || ptr != src.data() + i) {
        throw LexError("malformed number '" + std::string(tok.text) + "' at offset " +
                           std::to_string(start),
                       start);
      }
      out.push_back(tok);
      continue;
    }
    if (is_ident_start(c)) {
      while (i < src.size() && (is_ident_start(src[i]) || is_digit(src[i]))) ++i;
      out.push_back({TokenKind::kIdent, src.substr(start, i - start), 0.0, start});
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '+': kind = TokenKind::kPlus; break;
      case '-': kind = TokenKind::kMinus; break;
      case '*': kind = TokenKind::kStar; break;
      case '/': kind = TokenKind::kSlash; break;
      case '^': kind = TokenKind::kCaret; break;
      case '(': kind = TokenKind::kLParen; break;
      case ')': kind = TokenKind::kRParen; break;
      case ',': kind = TokenKind::kComma; break;
      default:
        throw LexError("illegal character '" + std::string(1, c) + "' at offset " +
                           std::to_string(start),
                       start);
    }
    out.push_back({kind, src.substr(start, 1), 0.0, start});
    ++i;
  }
  out.push_back({TokenKind::kEnd, {}, 0.0, src.size()});
  return out;
}

// ---------------------------------------------------------------- builders

Expr number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kNumber;
  n->number = v;
  return Expr(std::move(n));
}

Expr variable(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kVar;
  n->var = v;
  return Expr(std::move(n));
}

Expr negate(Expr a) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kNeg;
  n->args.push_back(a.node());
  return Expr(std::move(n));
}

Expr binary(char op, Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kBinary;
  n->op = op;
  n->args.push_back(a.node());
  n->args.push_back(b.node());
  return Expr(std::move(n));
}

Expr call(Func f, std::vector<Expr> args) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kCall;
  n->func = f;
  for (const auto& a : args) n->args.push_back(a.node());
  return Expr(std::move(n));
}

// ---------------------------------------------------------------- parser

namespace {

constexpr int kBpAdd = 10;
constexpr int kBpMul = 20;
constexpr int kBpUnary = 30;
constexpr int kBpPow = 40;

std::string describe(const Token& tok) {
  if (tok.kind == TokenKind::kEnd) return "end of input";
  return "'" + std::string(tok.text) + "'";
}

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : tokens_(tokens) {
    if (tokens_.empty() || tokens_.back().kind != TokenKind::kEnd) {
      throw ParseError("token sequence must end with an end token", 0);
    }
  }

  Expr parse_all() {
    if (peek().kind == TokenKind::kEnd) throw ParseError("empty expression", peek().offset);
    Expr e = parse_expr(0, 0);
    if (peek().kind != TokenKind::kEnd) {
      throw ParseError("unexpected " + describe(peek()) + " at offset " +
                           std::to_string(peek().offset),
                       peek().offset);
    }
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != TokenKind::kEnd) ++pos_;
    return t;
  }

  void expect(TokenKind kind, std::string_view what) {
    if (peek().kind != kind) {
      throw ParseError("expected " + std::string(what) + " but found " + describe(peek()) +
                           " at offset " + std::to_string(peek().offset),
                       peek().offset);
    }
    next();
  }

  static int infix_bp(TokenKind k) {
    switch (k) {
      case TokenKind::kPlus:
      case TokenKind::kMinus: return kBpAdd;
      case TokenKind::kStar:
      case TokenKind::kSlash: return kBpMul;
      case TokenKind::kCaret: return kBpPow;
      default: return -1;
    }
  }

  Expr parse_expr(int min_bp, int depth) {
    if (depth > kMaxParseDepth) {
      throw ParseError("expression nested deeper than " + std::to_string(kMaxParseDepth) +
                           " levels at offset " + std::to_string(peek().offset),
                       peek().offset);
    }
    Expr lhs = parse_prefix(depth);
    for (;;) {
      const Token& op = peek();
      const int bp = infix_bp(op.kind);
      if (bp < 0 || bp < min_bp) break;
      next();
      // ^ is right-associative: its right operand may contain another ^.
      const int rbp = op.kind == TokenKind::kCaret ? bp - 1 : bp + 1;
      Expr rhs = parse_expr(rbp, depth + 1);
      lhs = binary(op.text[0], std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr parse_prefix(int depth) {
    const Token& tok = next();
    switch (tok.kind) {
      case TokenKind::kNumber: return number(tok.number);
      case TokenKind::kMinus: return negate(parse_expr(kBpUnary, depth + 1));
      case TokenKind::kLParen: {
        Expr inner = parse_expr(0, depth + 1);
        expect(TokenKind::kRParen, "')'");
        return inner;
      }
      case TokenKind::kIdent: return parse_ident(tok, depth);
      default:
        throw ParseError("unexpected " + describe(tok) + " at offset " +
                             std::to_string(tok.offset),
                         tok.offset);
    }
  }

  Expr parse_ident(const Token& tok, int depth) {
    if (const FuncInfo* f = lookup_func(tok.text)) {
      expect(TokenKind::kLParen, "'(' after function " + std::string(tok.text));
      std::vector<Expr> args;
      if (peek().kind != TokenKind::kRParen) {
        args.push_back(parse_expr(0, depth + 1));
        while (peek().kind == TokenKind::kComma) {
          next();
          args.push_back(parse_expr(0, depth + 1));
        }
      }
      expect(TokenKind::kRParen, "')'");
      if (static_cast<int>(args.size()) != f->arity) {
        throw ParseError(std::string(tok.text) + " expects " + std::to_string(f->arity) +
                             " argument(s), got " + std::to_string(args.size()) +
                             " at offset " + std::to_string(tok.offset),
                         tok.offset);
      }
      return call(f->func, std::move(args));
    }
    if (auto v = lookup_var(tok.text)) {
      if (peek().kind == TokenKind::kLParen) {
        throw ParseError("'" + std::string(tok.text) + "' is not a function at offset " +
                             std::to_string(tok.offset),
                         tok.offset);
      }
      return variable(*v);
    }
    throw ParseError("unknown identifier '" + std::string(tok.text) + "' at offset " +
                         std::to_string(tok.offset),
                     tok.offset);
  }

  std::span<const Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::span<const Token> tokens) { return Parser(tokens).parse_all(); }

Expr parse(std::string_view source) {
  const std::vector<Token> tokens = tokenize(source);
  return parse(tokens);
}

// ---------------------------------------------------------------- bindings

Bindings::Bindings() {
  set(Var::pi, std::numbers::pi);
  set(Var::e, std::numbers::e);
}

Bindings& Bindings::set(Var v, double value) {
  values_[static_cast<std::size_t>(v)] = value;
  return *this;
}

Bindings& Bindings::set(std::string_view name, double value) {
  auto v = lookup_var(name);
  if (!v) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
  return set(*v, value);
}

// ---------------------------------------------------------------- evaluation

namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvalError(std::string("non-finite result in ") + what);
  return v;
}

double power(double base, double exponent) {
  if (base == 0.0 && exponent < 0.0) throw EvalError("division by zero: 0 raised to a negative power");
  const double r = std::pow(base, exponent);
  if (std::isnan(r)) {
    throw EvalError("domain error: negative base raised to a non-integer power");
  }
  return checked(r, "power");
}

double eval_node(const Node& n, const Bindings& b) {
  switch (n.kind) {
    case Node::Kind::kNumber: return n.number;
    case Node::Kind::kVar: {
      auto v = b.get(n.var);
      if (!v) throw EvalError("unbound variable '" + std::string(var_name(n.var)) + "'");
      return *v;
    }
    case Node::Kind::kNeg: return -eval_node(*n.args[0], b);
    case Node::Kind::kBinary: {
      const double l = eval_node(*n.args[0], b);
      const double r = eval_node(*n.args[1], b);
      switch (n.op) {
        case '+': return checked(l + r, "addition");
        case '-': return checked(l - r, "subtraction");
        case '*': return checked(l * r, "multiplication");
        case '/':
          if (r == 0.0) throw EvalError("division by zero");
          return checked(l / r, "division");
        case '^': return power(l, r);
      }
      throw EvalError("corrupt expression tree");
    }
    case Node::Kind::kCall: {
      const double x = eval_node(*n.args[0], b);
      switch (n.func) {
        case Func::exp: return checked(std::exp(x), "exp");
        case Func::ln:
          if (!(x > 0.0)) throw EvalError("domain error: ln of non-positive argument");
          return std::log(x);
        case Func::sin: return checked(std::sin(x), "sin");
        case Func::cos: return checked(std::cos(x), "cos");
        case Func::sqrt:
          if (x < 0.0) throw EvalError("domain error: sqrt of negative argument");
          return std::sqrt(x);
        case Func::abs: return std::abs(x);
        case Func::pow: return power(x, eval_node(*n.args[1], b));
        case Func::beta: {
          const double y = eval_node(*n.args[1], b);
          try {
            return checked(fracvide::beta(x, y), "beta");
          } catch (const DomainError& err) {
            throw EvalError(std::string("domain error: ") + err.what());
          }
        }
      }
      throw EvalError("corrupt expression tree");
    }
  }
  throw EvalError("corrupt expression tree");
}

void print_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case Node::Kind::kNumber: {
      char buf[64];
      const auto res = std::to_chars(buf, buf + sizeof buf, n.number);
      if (n.number < 0.0 || std::signbit(n.number)) {
        // The parser never produces negative literals; print one as a
        // subtraction so the text stays parseable.
        out += "(0";
        out.append(buf, res.ptr);
        out += ")";
      } else {
        out.append(buf, res.ptr);
      }
      return;
    }
    case Node::Kind::kVar: out += var_name(n.var); return;
    case Node::Kind::kNeg:
      out += "(-";
      print_node(*n.args[0], out);
      out += ")";
      return;
    case Node::Kind::kBinary:
      out += "(";
      print_node(*n.args[0], out);
      out += ' ';
      out += n.op;
      out += ' ';
      print_node(*n.args[1], out);
      out += ")";
      return;
    case Node::Kind::kCall:
      out += func_name(n.func);
      out += "(";
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        print_node(*n.args[i], out);
      }
      out += ")";
      return;
  }
}

bool equal_nodes(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Node::Kind::kNumber:
      return std::bit_cast<std::uint64_t>(a.number) == std::bit_cast<std::uint64_t>(b.number);
    case Node::Kind::kVar: return a.var == b.var;
    case Node::Kind::kNeg: break;
    case Node::Kind::kBinary:
      if (a.op != b.op) return false;
      break;
    case Node::Kind::kCall:
      if (a.func != b.func) return false;
      break;
  }
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!equal_nodes(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

bool uses_node(const Node& n, Var v) {
  if (n.kind == Node::Kind::kVar) return n.var == v;
  for (const auto& a : n.args) {
    if (uses_node(*a, v)) return true;
  }
  return false;
}

}  // namespace

double Expr::eval(const Bindings& bindings) const {
  if (!root_) throw EvalError("empty expression");
  return eval_node(*root_, bindings);
}

std::string Expr::print() const {
  std::string out;
  if (root_) print_node(*root_, out);
  return out;
}

bool operator==(const Expr& a, const Expr& b) {
  if (!a.root_ || !b.root_) return a.root_ == b.root_;
  return equal_nodes(*a.root_, *b.root_);
}

bool Expr::uses(Var v) const { return root_ && uses_node(*root_, v); }

double eval(const Expr& e, const Bindings& bindings) { return e.eval(bindings); }
std::string print(const Expr& e) { return e.print(); }

}  // namespace fracvide::expr
