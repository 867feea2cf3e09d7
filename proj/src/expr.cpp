#include "sdgeom/expr.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace sdgeom {

struct Expr::Node {
  Kind kind = Kind::Number;
  double number = 0.0;
  Symbol sym = Symbol::X1;
  std::vector<Expr> args;
};

namespace {

constexpr std::array<std::string_view, kSymbolCount> kSymbolNames = {"x1", "x2", "x3", "x4", "t",
                                                                     "rho", "y1", "y2", "y3"};

bool lookup_symbol(std::string_view name, Symbol& out) {
  for (int i = 0; i < kSymbolCount; ++i) {
    if (kSymbolNames[static_cast<std::size_t>(i)] == name) {
      out = static_cast<Symbol>(i);
      return true;
    }
  }
  return false;
}

struct FunctionInfo {
  std::string_view name;
  Expr::Kind kind;
  std::size_t arity;
};

constexpr std::array<FunctionInfo, 6> kFunctions = {{{"sin", Expr::Kind::Sin, 1},
                                                     {"cos", Expr::Kind::Cos, 1},
                                                     {"exp", Expr::Kind::Exp, 1},
                                                     {"log", Expr::Kind::Log, 1},
                                                     {"sqrt", Expr::Kind::Sqrt, 1},
                                                     {"atan2", Expr::Kind::Atan2, 2}}};

const FunctionInfo* lookup_function(std::string_view name) {
  for (const auto& f : kFunctions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

std::string_view function_name(Expr::Kind k) {
  for (const auto& f : kFunctions) {
    if (f.kind == k) return f.name;
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Lexer / recursive-descent parser

struct Token {
  enum Type { Number, Ident, Op, End } type = End;
  std::string_view text;
  double number = 0.0;
  std::size_t offset = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) { advance(); }

  Expr parse() {
    Expr e = expression();
    if (tok_.type != Token::End) fail("unexpected '" + std::string(tok_.text) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_.offset); }

  bool is_op(char c) const { return tok_.type == Token::Op && tok_.text[0] == c; }

  void advance() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r')) {
      ++pos_;
    }
    tok_ = Token{};
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.type = Token::End;
      tok_.text = "end of input";
      return;
    }
    const char c = src_[pos_];
    if ((c >= '0' && c <= '9') || c == '.') {
      std::size_t end = pos_;
      while (end < src_.size() && ((src_[end] >= '0' && src_[end] <= '9') || src_[end] == '.')) ++end;
      if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
        std::size_t e = end + 1;
        if (e < src_.size() && (src_[e] == '+' || src_[e] == '-')) ++e;
        if (e < src_.size() && src_[e] >= '0' && src_[e] <= '9') {
          while (e < src_.size() && src_[e] >= '0' && src_[e] <= '9') ++e;
          end = e;
        }
      }
      double v = 0.0;
      const auto res = std::from_chars(src_.data() + pos_, src_.data() + end, v);
      if (res.ec != std::errc() || res.ptr != src_.data() + end) {
        throw ParseError("malformed number", pos_);
      }
      tok_.type = Token::Number;
      tok_.number = v;
      tok_.text = src_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() && ((src_[end] >= 'a' && src_[end] <= 'z') || (src_[end] >= 'A' && src_[end] <= 'Z') ||
                                   (src_[end] >= '0' && src_[end] <= '9') || src_[end] == '_')) {
        ++end;
      }
      tok_.type = Token::Ident;
      tok_.text = src_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    static constexpr std::string_view kOps = "+-*/^(),";
    if (kOps.find(c) != std::string_view::npos) {
      tok_.type = Token::Op;
      tok_.text = src_.substr(pos_, 1);
      ++pos_;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Expr expression() {
    Expr lhs = term();
    while (is_op('+') || is_op('-')) {
      const Expr::Kind k = is_op('+') ? Expr::Kind::Add : Expr::Kind::Sub;
      advance();
      lhs = Expr::binary(k, lhs, term());
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (is_op('*') || is_op('/')) {
      const Expr::Kind k = is_op('*') ? Expr::Kind::Mul : Expr::Kind::Div;
      advance();
      lhs = Expr::binary(k, lhs, unary());
    }
    return lhs;
  }

  Expr unary() {
    if (is_op('-')) {
      advance();
      return Expr::unary(Expr::Kind::Neg, unary());
    }
    return power();
  }

  Expr power() {
    Expr lhs = primary();
    while (is_op('^')) {
      advance();
      const std::size_t at = tok_.offset;
      Expr rhs = exponent();
      if (!rhs.is_constant()) throw ParseError("exponent must be constant", at);
      lhs = Expr::binary(Expr::Kind::Pow, lhs, rhs);
    }
    return lhs;
  }

  // Allows x^-1 as a shorthand for x^(-1).
  Expr exponent() {
    if (is_op('-')) {
      advance();
      return Expr::unary(Expr::Kind::Neg, exponent());
    }
    return primary();
  }

  Expr primary() {
    if (tok_.type == Token::Number) {
      const double v = tok_.number;
      advance();
      return Expr::number(v);
    }
    if (is_op('(')) {
      advance();
      Expr e = expression();
      if (!is_op(')')) fail("expected ')'");
      advance();
      return e;
    }
    if (tok_.type == Token::Ident) {
      const std::string name(tok_.text);
      const std::size_t at = tok_.offset;
      advance();
      if (const FunctionInfo* f = lookup_function(name)) {
        if (!is_op('(')) fail("expected '(' after " + name);
        advance();
        std::vector<Expr> args{expression()};
        while (is_op(',')) {
          advance();
          args.push_back(expression());
        }
        if (!is_op(')')) fail("expected ')'");
        if (args.size() != f->arity) {
          throw ParseError(name + " takes " + std::to_string(f->arity) + " argument(s)", at);
        }
        advance();
        return f->arity == 1 ? Expr::unary(f->kind, args[0]) : Expr::binary(f->kind, args[0], args[1]);
      }
      Symbol s{};
      if (lookup_symbol(name, s)) return Expr::symbol(s);
      throw UnknownIdentifier(name, at);
    }
    fail("unexpected " + (tok_.type == Token::End ? std::string("end of input") : "'" + std::string(tok_.text) + "'"));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_;
};

// ---------------------------------------------------------------------------
// Printer

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& e, int min_prec, std::string& out) {
  const bool negative_literal = e.kind() == Expr::Kind::Number && std::signbit(e.value());
  if (precedence(e.kind()) < min_prec || negative_literal) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Expr::Kind::Number:
      out += format_number(e.value());
      return;
    case Expr::Kind::Symbol:
      out += symbol_name(e.symbol());
      return;
    case Expr::Kind::Neg:
      out += '-';
      print_child(e.arg(0), 3, out);
      return;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
    case Expr::Kind::Pow: {
      static constexpr std::string_view kSym[] = {"", "", " + ", " - ", "*", "/", "^"};
      const int p = precedence(e.kind());
      print_child(e.arg(0), p, out);
      out += kSym[static_cast<int>(e.kind())];
      print_child(e.arg(1), p + 1, out);
      return;
    }
    case Expr::Kind::Atan2:
      out += "atan2(";
      print(e.arg(0), out);
      out += ", ";
      print(e.arg(1), out);
      out += ')';
      return;
    default:
      out += function_name(e.kind());
      out += '(';
      print(e.arg(0), out);
      out += ')';
      return;
  }
}

// ---------------------------------------------------------------------------
// Evaluation

double constant_value(const Expr& e) {
  ValueBindings none;
  return eval_value(e, none);
}

bool as_int_exponent(double p, int& n) {
  if (std::abs(p) < 1e9 && std::floor(p) == p) {
    n = static_cast<int>(p);
    return true;
  }
  return false;
}

template <typename T>
const T& lookup(const Bindings<T>& b, Symbol s) {
  const auto i = static_cast<std::size_t>(s);
  if (!b.bound[i]) throw std::invalid_argument("symbol '" + std::string(symbol_name(s)) + "' is not bound");
  return b.values[i];
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view symbol_name(Symbol s) { return kSymbolNames[static_cast<std::size_t>(s)]; }

Expr::Expr() : Expr(number(0.0)) {}

Expr Expr::number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->number = v;
  return Expr(std::move(n));
}

Expr Expr::symbol(Symbol s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Symbol;
  n->sym = s;
  return Expr(std::move(n));
}

Expr Expr::unary(Kind k, Expr a) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->args = {std::move(a)};
  return Expr(std::move(n));
}

Expr Expr::binary(Kind k, Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->args = {std::move(a), std::move(b)};
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->number; }
Symbol Expr::symbol() const { return node_->sym; }
std::size_t Expr::arity() const { return node_->args.size(); }
const Expr& Expr::arg(std::size_t i) const { return node_->args.at(i); }

bool Expr::is_constant() const {
  if (kind() == Kind::Symbol) return false;
  for (const Expr& a : node_->args) {
    if (!a.is_constant()) return false;
  }
  return true;
}

bool Expr::uses(Symbol s) const {
  if (kind() == Kind::Symbol) return symbol() == s;
  for (const Expr& a : node_->args) {
    if (a.uses(s)) return true;
  }
  return false;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.arity() != b.arity()) return false;
  if (a.kind() == Expr::Kind::Number) {
    return a.value() == b.value() && std::signbit(a.value()) == std::signbit(b.value());
  }
  if (a.kind() == Expr::Kind::Symbol) return a.symbol() == b.symbol();
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.arg(i) == b.arg(i))) return false;
  }
  return true;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(Expr::Kind::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(Expr::Kind::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(Expr::Kind::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(Expr::Kind::Div, a, b); }

Expr parse_expr(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) throw ParseError("empty expression", 0);
  return Parser(text).parse();
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

int symbol_slot(Chart c, Symbol s) {
  switch (c) {
    case Chart::R4_CARTESIAN:
    case Chart::S3_AMBIENT:
      switch (s) {
        case Symbol::X1: return 0;
        case Symbol::X2: return 1;
        case Symbol::X3: return 2;
        case Symbol::X4: return 3;
        default: return -1;
      }
    case Chart::R1xR3:
      switch (s) {
        case Symbol::T:
        case Symbol::RHO: return 0;
        case Symbol::X1: return 1;
        case Symbol::X2: return 2;
        case Symbol::X3: return 3;
        default: return -1;
      }
    case Chart::PRODUCT_RHO_STEREO:
      switch (s) {
        case Symbol::T:
        case Symbol::RHO: return 0;
        case Symbol::Y1: return 1;
        case Symbol::Y2: return 2;
        case Symbol::Y3: return 3;
        default: return -1;
      }
    case Chart::R3_CARTESIAN:
      switch (s) {
        case Symbol::X1: return 0;
        case Symbol::X2: return 1;
        case Symbol::X3: return 2;
        default: return -1;
      }
    case Chart::S3_STEREO:
      switch (s) {
        case Symbol::Y1: return 0;
        case Symbol::Y2: return 1;
        case Symbol::Y3: return 2;
        default: return -1;
      }
    case Chart::S2_STEREO:
      switch (s) {
        case Symbol::Y1: return 0;
        case Symbol::Y2: return 1;
        default: return -1;
      }
  }
  return -1;
}

JetBindings bind_chart(Chart c, const CoordJets& coords) {
  JetBindings b;
  for (int i = 0; i < kSymbolCount; ++i) {
    const int slot = symbol_slot(c, static_cast<Symbol>(i));
    if (slot >= 0) b.set(static_cast<Symbol>(i), coords[static_cast<std::size_t>(slot)]);
  }
  return b;
}

ValueBindings bind_chart(Chart c, const std::array<double, kMaxDim>& coords) {
  ValueBindings b;
  for (int i = 0; i < kSymbolCount; ++i) {
    const int slot = symbol_slot(c, static_cast<Symbol>(i));
    if (slot >= 0) b.set(static_cast<Symbol>(i), coords[static_cast<std::size_t>(slot)]);
  }
  return b;
}

void require_chart_symbols(const Expr& e, Chart c) {
  for (int i = 0; i < kSymbolCount; ++i) {
    const auto s = static_cast<Symbol>(i);
    if (e.uses(s) && symbol_slot(c, s) < 0) {
      throw std::invalid_argument("symbol '" + std::string(symbol_name(s)) + "' is not a coordinate of chart " +
                                  std::string(chart_name(c)));
    }
  }
}

Jet2 eval_jet(const Expr& e, const JetBindings& b) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Number: return Jet2(e.value());
    case K::Symbol: return lookup(b, e.symbol());
    case K::Add: return eval_jet(e.arg(0), b) + eval_jet(e.arg(1), b);
    case K::Sub: return eval_jet(e.arg(0), b) - eval_jet(e.arg(1), b);
    case K::Mul: return eval_jet(e.arg(0), b) * eval_jet(e.arg(1), b);
    case K::Div: return eval_jet(e.arg(0), b) / eval_jet(e.arg(1), b);
    case K::Neg: return -eval_jet(e.arg(0), b);
    case K::Pow: {
      const double p = constant_value(e.arg(1));
      int n = 0;
      if (as_int_exponent(p, n)) return powi(eval_jet(e.arg(0), b), n);
      return powr(eval_jet(e.arg(0), b), p);
    }
    case K::Sin: return sin(eval_jet(e.arg(0), b));
    case K::Cos: return cos(eval_jet(e.arg(0), b));
    case K::Exp: return exp(eval_jet(e.arg(0), b));
    case K::Log: return log(eval_jet(e.arg(0), b));
    case K::Sqrt: return sqrt(eval_jet(e.arg(0), b));
    case K::Atan2: return atan2(eval_jet(e.arg(0), b), eval_jet(e.arg(1), b));
  }
  throw std::logic_error("unreachable");
}

double eval_value(const Expr& e, const ValueBindings& b) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Number: return e.value();
    case K::Symbol: return lookup(b, e.symbol());
    case K::Add: return eval_value(e.arg(0), b) + eval_value(e.arg(1), b);
    case K::Sub: return eval_value(e.arg(0), b) - eval_value(e.arg(1), b);
    case K::Mul: return eval_value(e.arg(0), b) * eval_value(e.arg(1), b);
    case K::Div: {
      const double d = eval_value(e.arg(1), b);
      if (d == 0.0) throw DomainError("division by zero");
      return eval_value(e.arg(0), b) / d;
    }
    case K::Neg: return -eval_value(e.arg(0), b);
    case K::Pow: {
      const double base = eval_value(e.arg(0), b);
      const double p = constant_value(e.arg(1));
      int n = 0;
      if (as_int_exponent(p, n)) {
        if (base == 0.0 && n < 0) throw DomainError("zero to a negative power");
        return n == 0 ? 1.0 : std::pow(base, n);
      }
      if (!(base > 0.0)) throw DomainError("real power of non-positive base");
      return std::pow(base, p);
    }
    case K::Sin: return std::sin(eval_value(e.arg(0), b));
    case K::Cos: return std::cos(eval_value(e.arg(0), b));
    case K::Exp: return std::exp(eval_value(e.arg(0), b));
    case K::Log: {
      const double x = eval_value(e.arg(0), b);
      if (!(x > 0.0)) throw DomainError("log of non-positive value");
      return std::log(x);
    }
    case K::Sqrt: {
      const double x = eval_value(e.arg(0), b);
      if (x < 0.0) throw DomainError("sqrt of negative value");
      return std::sqrt(x);
    }
    case K::Atan2: {
      const double y = eval_value(e.arg(0), b);
      const double x = eval_value(e.arg(1), b);
      if (x == 0.0 && y == 0.0) throw DomainError("atan2(0, 0)");
      return std::atan2(y, x);
    }
  }
  throw std::logic_error("unreachable");
}

Jet2 eval_jet2(const Expr& e, const ChartPoint& p) {
  require_chart_symbols(e, p.chart);
  return eval_jet(e, bind_chart(p.chart, seed_coordinates(p)));
}

Jet2 fd_oracle(const Expr& e, const ChartPoint& p, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  require_chart_symbols(e, p.chart);
  const int n = p.dim();
  auto f = [&](std::array<double, kMaxDim> x) { return eval_value(e, bind_chart(p.chart, x)); };
  auto shifted = [&](int i, double di, int j, double dj) {
    std::array<double, kMaxDim> x = p.coords;
    if (i >= 0) x[static_cast<std::size_t>(i)] += di;
    if (j >= 0) x[static_cast<std::size_t>(j)] += dj;
    return f(x);
  };

  Jet2 out(f(p.coords));
  for (int i = 0; i < n; ++i) {
    const double fp = shifted(i, h, -1, 0);
    const double fm = shifted(i, -h, -1, 0);
    out.grad[static_cast<std::size_t>(i)] = (fp - fm) / (2.0 * h);
    out.dd(i, i) = (fp - 2.0 * out.value + fm) / (h * h);
    for (int j = 0; j < i; ++j) {
      const double v = (shifted(i, h, j, h) - shifted(i, h, j, -h) - shifted(i, -h, j, h) + shifted(i, -h, j, -h)) /
                       (4.0 * h * h);
      out.dd(i, j) = v;
      out.dd(j, i) = v;
    }
  }
  return out;
}

}  // namespace sdgeom
