#include "isogeo/expr.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace isogeo {

Expr Expr::constant(double value) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{ConstantNode{value}}));
}
Expr Expr::variable(Variable which) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{VariableNode{which}}));
}
Expr Expr::unary(UnaryFn fn, Expr arg) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{UnaryNode{fn, std::move(arg)}}));
}
Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{BinaryNode{op, std::move(lhs), std::move(rhs)}}));
}

namespace {

struct FunctionName {
  std::string_view name;
  UnaryFn fn;
};

constexpr std::array<FunctionName, 10> kFunctions{{
    {"sin", UnaryFn::Sin},
    {"cos", UnaryFn::Cos},
    {"tan", UnaryFn::Tan},
    {"sinh", UnaryFn::Sinh},
    {"cosh", UnaryFn::Cosh},
    {"tanh", UnaryFn::Tanh},
    {"exp", UnaryFn::Exp},
    {"log", UnaryFn::Log},
    {"sqrt", UnaryFn::Sqrt},
    {"abs", UnaryFn::Abs},
}};

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
  double number = 0.0;
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
            src_[pos_] == '\r')) {
      ++pos_;
    }
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::End, start, {}};
    const char c = src_[pos_];
    if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
      return number(start);
    }
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      return {Tok::Ident, start, src_.substr(start, pos_ - start)};
    }
    ++pos_;
    switch (c) {
      case '+': return {Tok::Plus, start, src_.substr(start, 1)};
      case '-': return {Tok::Minus, start, src_.substr(start, 1)};
      case '*': return {Tok::Star, start, src_.substr(start, 1)};
      case '/': return {Tok::Slash, start, src_.substr(start, 1)};
      case '^': return {Tok::Caret, start, src_.substr(start, 1)};
      case '(': return {Tok::LParen, start, src_.substr(start, 1)};
      case ')': return {Tok::RParen, start, src_.substr(start, 1)};
      default:
        throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
  }

 private:
  Token number(std::size_t start) {
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    }
    // An exponent only counts when digits follow, so "2e" stays 2 then e.
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && is_digit(src_[look])) {
        pos_ = look;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      }
    }
    const std::string_view text = src_.substr(start, pos_ - start);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc::result_out_of_range || !std::isfinite(value)) {
      throw ParseError(start, "numeric literal out of range");
    }
    if (ec != std::errc() || end != text.data() + text.size()) {
      throw ParseError(start, "malformed number");
    }
    return {Tok::Number, start, text, value};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  Expr parse_all() {
    if (cur_.kind == Tok::End) throw ParseError(cur_.offset, "empty expression");
    Expr e = sum();
    if (cur_.kind == Tok::RParen) {
      throw ParseError(cur_.offset, "unbalanced parenthesis");
    }
    if (cur_.kind != Tok::End) unexpected();
    return e;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  [[noreturn]] void unexpected() const {
    if (cur_.kind == Tok::End) {
      throw ParseError(cur_.offset, "unexpected end of input");
    }
    throw ParseError(cur_.offset,
                     "unexpected token '" + std::string(cur_.text) + "'");
  }

  Expr sum() {
    Expr lhs = product();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const BinaryOp op = cur_.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      advance();
      lhs = Expr::binary(op, lhs, product());
    }
    return lhs;
  }

  Expr product() {
    Expr lhs = unary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const BinaryOp op = cur_.kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
      advance();
      lhs = Expr::binary(op, lhs, unary());
    }
    return lhs;
  }

  Expr unary() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return Expr::unary(UnaryFn::Negate, unary());
    }
    if (cur_.kind == Tok::Plus) {
      advance();
      return unary();
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (cur_.kind == Tok::Caret) {
      advance();
      return Expr::binary(BinaryOp::Pow, base, exponent());
    }
    return base;
  }

  Expr exponent() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return Expr::unary(UnaryFn::Negate, exponent());
    }
    if (cur_.kind == Tok::Plus) {
      advance();
      return exponent();
    }
    return power();
  }

  Expr primary() {
    switch (cur_.kind) {
      case Tok::Number: {
        const double value = cur_.number;
        advance();
        return Expr::constant(value);
      }
      case Tok::LParen: {
        const std::size_t open = cur_.offset;
        advance();
        Expr inner = sum();
        if (cur_.kind != Tok::RParen) {
          if (cur_.kind == Tok::End) throw ParseError(open, "unbalanced parenthesis");
          unexpected();
        }
        advance();
        return inner;
      }
      case Tok::Ident: return identifier();
      case Tok::RParen: throw ParseError(cur_.offset, "unbalanced parenthesis");
      default: unexpected();
    }
  }

  Expr identifier() {
    const Token id = cur_;
    advance();
    if (id.text == "u") return Expr::variable(Variable::U);
    if (id.text == "v") return Expr::variable(Variable::V);
    if (id.text == "pi") return Expr::constant(std::numbers::pi);
    if (id.text == "e") return Expr::constant(std::numbers::e);
    for (const auto& f : kFunctions) {
      if (f.name != id.text) continue;
      if (cur_.kind != Tok::LParen) {
        throw ParseError(cur_.offset, "expected '(' after " + std::string(id.text));
      }
      const std::size_t open = cur_.offset;
      advance();
      Expr arg = sum();
      if (cur_.kind != Tok::RParen) {
        if (cur_.kind == Tok::End) throw ParseError(open, "unbalanced parenthesis");
        unexpected();
      }
      advance();
      return Expr::unary(f.fn, arg);
    }
    throw ParseError(id.offset, "unknown identifier '" + std::string(id.text) + "'");
  }

  Lexer lexer_;
  Token cur_{Tok::End, 0, {}};
};

std::string_view name_of(UnaryFn fn) {
  for (const auto& f : kFunctions) {
    if (f.fn == fn) return f.name;
  }
  return "-";
}

char symbol_of(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
  }
  return '?';
}

void print(const Expr& e, std::string& out) {
  std::visit(
      [&out](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ConstantNode>) {
          std::array<char, 32> buf{};
          auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), n.value);
          (void)ec;
          const bool negative = n.value < 0 || std::signbit(n.value);
          if (negative) out += '(';
          out.append(buf.data(), end);
          if (negative) out += ')';
        } else if constexpr (std::is_same_v<N, VariableNode>) {
          out += n.which == Variable::U ? 'u' : 'v';
        } else if constexpr (std::is_same_v<N, UnaryNode>) {
          if (n.fn == UnaryFn::Negate) {
            out += "(-";
            print(n.arg, out);
            out += ')';
          } else {
            out += name_of(n.fn);
            out += '(';
            print(n.arg, out);
            out += ')';
          }
        } else {
          out += '(';
          print(n.lhs, out);
          out += ' ';
          out += symbol_of(n.op);
          out += ' ';
          print(n.rhs, out);
          out += ')';
        }
      },
      e.node().data);
}

double value_of(double x) { return x; }
double value_of(const Jet2d& x) { return x.val; }
bool is_constant(double) { return true; }
bool is_constant(const Jet2d& x) { return x.has_zero_derivatives(); }

template <typename T>
T integer_power(const T& base, std::int64_t n) {
  T result = T(1.0);
  T factor = base;
  std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  while (k > 0) {
    if (k & 1u) result = result * factor;
    k >>= 1u;
    if (k > 0) factor = factor * factor;
  }
  if (n < 0) {
    if (value_of(result) == 0.0) {
      throw GeometryError(ErrorKind::DomainError, "division by zero");
    }
    return T(1.0) / result;
  }
  return result;
}

template <typename T>
T apply(UnaryFn fn, const T& a) {
  using std::abs, std::cos, std::cosh, std::exp, std::log, std::sin, std::sinh,
      std::sqrt, std::tan, std::tanh;
  const double x = value_of(a);
  switch (fn) {
    case UnaryFn::Negate: return -a;
    case UnaryFn::Sin: return sin(a);
    case UnaryFn::Cos: return cos(a);
    case UnaryFn::Tan:
      if (std::abs(std::cos(x)) < 1e-300) {
        throw GeometryError(ErrorKind::DomainError, "tan at a pole");
      }
      return tan(a);
    case UnaryFn::Sinh: return sinh(a);
    case UnaryFn::Cosh: return cosh(a);
    case UnaryFn::Tanh: return tanh(a);
    case UnaryFn::Exp: return exp(a);
    case UnaryFn::Log:
      if (!(x > 0)) throw GeometryError(ErrorKind::DomainError, "log of non-positive argument");
      return log(a);
    case UnaryFn::Sqrt:
      if (x < 0) throw GeometryError(ErrorKind::DomainError, "sqrt of negative argument");
      return sqrt(a);
    case UnaryFn::Abs: return abs(a);
  }
  return a;
}

template <typename T>
T apply(BinaryOp op, const T& a, const T& b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div:
      if (value_of(b) == 0.0) throw GeometryError(ErrorKind::DomainError, "division by zero");
      return a / b;
    case BinaryOp::Pow: {
      const double n = value_of(b);
      if (is_constant(b) && std::nearbyint(n) == n && std::abs(n) <= 1e6) {
        return integer_power(a, static_cast<std::int64_t>(n));
      }
      if (!(value_of(a) > 0)) {
        throw GeometryError(ErrorKind::DomainError,
                            "non-integer power of a non-positive base");
      }
      using std::exp, std::log;
      return exp(b * log(a));
    }
  }
  return a;
}

}  // namespace

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  const auto& na = a.node().data;
  const auto& nb = b.node().data;
  if (na.index() != nb.index()) return false;
  if (const auto* c = std::get_if<ConstantNode>(&na)) {
    return std::bit_cast<std::uint64_t>(c->value) ==
           std::bit_cast<std::uint64_t>(std::get<ConstantNode>(nb).value);
  }
  if (const auto* x = std::get_if<VariableNode>(&na)) {
    return x->which == std::get<VariableNode>(nb).which;
  }
  if (const auto* un = std::get_if<UnaryNode>(&na)) {
    const auto& other = std::get<UnaryNode>(nb);
    return un->fn == other.fn && structurally_equal(un->arg, other.arg);
  }
  const auto& ba = std::get<BinaryNode>(na);
  const auto& bb = std::get<BinaryNode>(nb);
  return ba.op == bb.op && structurally_equal(ba.lhs, bb.lhs) &&
         structurally_equal(ba.rhs, bb.rhs);
}

bool depends_on(const Expr& e, Variable which) {
  return std::visit(
      [which](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ConstantNode>) {
          return false;
        } else if constexpr (std::is_same_v<N, VariableNode>) {
          return n.which == which;
        } else if constexpr (std::is_same_v<N, UnaryNode>) {
          return depends_on(n.arg, which);
        } else {
          return depends_on(n.lhs, which) || depends_on(n.rhs, which);
        }
      },
      e.node().data);
}

template <typename T>
T evaluate(const Expr& e, const T& u, const T& v) {
  return std::visit(
      [&](const auto& n) -> T {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ConstantNode>) {
          return T(n.value);
        } else if constexpr (std::is_same_v<N, VariableNode>) {
          return n.which == Variable::U ? u : v;
        } else if constexpr (std::is_same_v<N, UnaryNode>) {
          return apply(n.fn, evaluate(n.arg, u, v));
        } else {
          return apply(n.op, evaluate(n.lhs, u, v), evaluate(n.rhs, u, v));
        }
      },
      e.node().data);
}

template double evaluate<double>(const Expr&, const double&, const double&);
template Jet2d evaluate<Jet2d>(const Expr&, const Jet2d&, const Jet2d&);

Jet2d eval_jet2(const Expr& e, double u, double v) {
  return evaluate(e, Jet2d::seed_u(u), Jet2d::seed_v(v));
}

}  // namespace isogeo
