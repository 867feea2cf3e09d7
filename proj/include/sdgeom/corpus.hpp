#pragma once

// Seeded random expressions for oracle suites.

#include <cstdint>
#include <vector>

#include "sdgeom/chart.hpp"
#include "sdgeom/expr.hpp"
#include "sdgeom/random.hpp"

namespace sdgeom {

/// Polynomial in the given symbols with at most `terms` monomials of total
/// degree <= degree and coefficients in [-1, 1].
Expr random_polynomial(SplitMix64& rng, const std::vector<Symbol>& symbols, int degree, int terms);

/// Polynomial-trig expression: a random polynomial plus products of sin, cos
/// and exp of random linear forms. Smooth everywhere.
Expr random_poly_trig(SplitMix64& rng, const std::vector<Symbol>& symbols);

/// Expression corpus shared by the AD-vs-FD checks: fixed hand-written
/// entries followed by `random_count` poly-trig expressions in x1..x4.
std::vector<Expr> expression_corpus(std::uint64_t seed, int random_count);

}  // namespace sdgeom
