#pragma once

// Field expressions: a small arithmetic language over chart coordinates.
// The grammar is documented in docs/expression_grammar.md.

#include <array>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdgeom/chart.hpp"
#include "sdgeom/jet.hpp"

namespace sdgeom {

enum class Symbol { X1, X2, X3, X4, T, RHO, Y1, Y2, Y3 };
inline constexpr int kSymbolCount = 9;

std::string_view symbol_name(Symbol s);

/// Syntax error; offset is the byte position of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public ParseError {
 public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : ParseError("unknown identifier '" + name + "'", offset), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Immutable expression tree with shared nodes; cheap to copy.
class Expr {
 public:
  enum class Kind { Number, Symbol, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Log, Sqrt, Atan2 };

  Expr();  // the literal 0

  static Expr number(double v);
  static Expr symbol(Symbol s);
  static Expr unary(Kind k, Expr a);
  static Expr binary(Kind k, Expr a, Expr b);

  Kind kind() const;
  double value() const;    // Number only
  Symbol symbol() const;   // Symbol only
  std::size_t arity() const;
  const Expr& arg(std::size_t i) const;

  bool is_constant() const;
  bool uses(Symbol s) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);

Expr parse_expr(std::string_view text);

/// Canonical form: minimal parentheses, shortest round-trip literals.
/// parse_expr(to_string(e)) == e for every parsed e.
std::string to_string(const Expr& e);

/// Symbol values supplied to an evaluation; unbound symbols are an error.
template <typename T>
struct Bindings {
  std::array<T, kSymbolCount> values{};
  std::array<bool, kSymbolCount> bound{};

  void set(Symbol s, const T& v) {
    values[static_cast<std::size_t>(s)] = v;
    bound[static_cast<std::size_t>(s)] = true;
  }
};

using JetBindings = Bindings<Jet2>;
using ValueBindings = Bindings<double>;

/// Chart coordinate index carrying symbol s, or -1.
int symbol_slot(Chart c, Symbol s);

JetBindings bind_chart(Chart c, const CoordJets& coords);
ValueBindings bind_chart(Chart c, const std::array<double, kMaxDim>& coords);

Jet2 eval_jet(const Expr& e, const JetBindings& b);
double eval_value(const Expr& e, const ValueBindings& b);

/// Value, gradient and Hessian of e in the chart coordinates of p.
Jet2 eval_jet2(const Expr& e, const ChartPoint& p);

/// Central-difference estimate of the same jet from plain double evaluation
/// (gradient and Hessian are O(h^2) accurate).
Jet2 fd_oracle(const Expr& e, const ChartPoint& p, double h = 1e-4);

/// Checks that every symbol used by e is supplied by chart c; throws
/// std::invalid_argument naming the first missing symbol.
void require_chart_symbols(const Expr& e, Chart c);

}  // namespace sdgeom
