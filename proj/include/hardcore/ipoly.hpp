#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hardcore/graph.hpp"

namespace hardcore {

/// Coefficients of the independence polynomial, constant term first:
/// p[k] = number of independent sets of size k. p.size() == alpha(G) + 1.
using IndependencePolynomial = std::vector<mpz_class>;

struct IpolyOptions {
  /// Memoize subgraphs by vertex mask. Defaults to on for components with
  /// more than 32 vertices; tiny instances are faster without it.
  std::optional<bool> use_cache{};
  /// Entry cap per component; the memo table stops growing once reached.
  std::size_t cache_max_entries = std::size_t{1} << 20;
};

/// Exact independence polynomial via the vertex recursion
/// Z_G = Z_{G-v} + lambda Z_{G-N[v]}, with component splitting. Components
/// are limited to 64 vertices.
IndependencePolynomial independence_polynomial(const Graph& g,
                                               const IpolyOptions& opts = {});

/// Independent oracle: subset dynamic programming over all 2^n vertex sets.
/// Limited to n <= 24.
IndependencePolynomial brute_force_polynomial(const Graph& g);

/// Total number of independent sets, i(G) = Z_G(1).
mpz_class independent_set_count(const IndependencePolynomial& p);

/// Independence number alpha(G) = deg p.
int independence_number(const IndependencePolynomial& p);

/// Z_G(lambda) as an exact rational, for rational lambda >= 0.
mpq_class evaluate_exact(const IndependencePolynomial& p, const mpq_class& lambda);

/// log Z_G(lambda), computed from the exact rational value with 256-bit
/// intermediates; the double result is correct to ~1 ulp.
double log_z(const IndependencePolynomial& p, const mpq_class& lambda);

/// Expected number of occupied vertices in the hard-core model,
/// lambda Z'(lambda) / Z(lambda); lies in [0, deg p]. Throws
/// std::domain_error for lambda <= 0.
mpq_class occupancy_fraction_exact(const IndependencePolynomial& p,
                                   const mpq_class& lambda);
double occupancy_fraction(const IndependencePolynomial& p, const mpq_class& lambda);

// ---------------------------------------------------------------------------
// Text formats.

/// Accepts integers ("3"), fractions ("1/2") and decimals ("0.25", "1e-3"),
/// with an optional sign. Throws std::invalid_argument on anything else.
mpq_class parse_rational(const std::string& s);

/// One line of space-separated coefficients, constant term first.
std::string format_polynomial(const IndependencePolynomial& p);
IndependencePolynomial parse_polynomial(const std::string& line);

}  // namespace hardcore
