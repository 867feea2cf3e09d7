#include "sdgeom/corpus.hpp"

namespace sdgeom {

namespace {

double coeff(SplitMix64& rng) {
  // two decimals so the printed form stays short
  return std::round(rng.uniform(-1.0, 1.0) * 100.0) / 100.0;
}

Expr linear_form(SplitMix64& rng, const std::vector<Symbol>& symbols) {
  Expr e = Expr::number(coeff(rng));
  for (Symbol s : symbols) e = e + Expr::number(coeff(rng)) * Expr::symbol(s);
  return e;
}

}  // namespace

Expr random_polynomial(SplitMix64& rng, const std::vector<Symbol>& symbols, int degree, int terms) {
  Expr e = Expr::number(coeff(rng));
  for (int t = 0; t < terms; ++t) {
    Expr m = Expr::number(coeff(rng));
    const int deg = rng.integer(1, degree);
    for (int d = 0; d < deg; ++d) {
      m = m * Expr::symbol(symbols[static_cast<std::size_t>(rng.integer(0, static_cast<int>(symbols.size()) - 1))]);
    }
    e = e + m;
  }
  return e;
}

Expr random_poly_trig(SplitMix64& rng, const std::vector<Symbol>& symbols) {
  Expr e = random_polynomial(rng, symbols, 3, 4);
  e = e + Expr::unary(Expr::Kind::Sin, linear_form(rng, symbols)) * random_polynomial(rng, symbols, 1, 2);
  e = e + Expr::unary(Expr::Kind::Cos, linear_form(rng, symbols)) * Expr::unary(Expr::Kind::Sin, linear_form(rng, symbols));
  e = e + Expr::number(0.5) * Expr::unary(Expr::Kind::Exp, Expr::number(0.3) * linear_form(rng, symbols));
  return e;
}

std::vector<Expr> expression_corpus(std::uint64_t seed, int random_count) {
  std::vector<Expr> out = {
      parse_expr("x1*x2"),
      parse_expr("x1^2 + x2*x3"),
      parse_expr("sin(x1)*cos(x2) + x3^3*x4"),
      parse_expr("exp(0.3*x1 - 0.2*x4)*sin(x2 + x3)"),
      parse_expr("log(2 + x1^2 + x2^2)*sqrt(3 + x3^2)"),
      parse_expr("atan2(x2, 2 + x1^2)"),
      parse_expr("(1 + x1^2)^-1*x3"),
      parse_expr("x1/(2 + cos(x2*x3))"),
  };
  SplitMix64 rng(seed);
  const std::vector<Symbol> xs = {Symbol::X1, Symbol::X2, Symbol::X3, Symbol::X4};
  for (int i = 0; i < random_count; ++i) out.push_back(random_poly_trig(rng, xs));
  return out;
}

}  // namespace sdgeom
