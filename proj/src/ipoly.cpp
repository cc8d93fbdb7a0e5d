#include "hardcore/ipoly.hpp"

#include <mpfr.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace hardcore {

namespace {

using Poly = IndependencePolynomial;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// a + lambda * b, the recursion step Z_{G-v} + lambda Z_{G-N[v]}
Poly poly_add_shifted(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size() + 1));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i + 1] += b[i];
  return out;
}

// One <= 64-vertex connected component, compacted to bit rows.
struct ComponentCounter {
  std::vector<std::uint64_t> rows;
  bool use_cache = false;
  std::size_t cache_cap = 0;
  std::unordered_map<std::uint64_t, Poly> cache;

  Poly count(std::uint64_t mask) {
    int live = std::popcount(mask);
    if (live == 0) return {1};
    if (live == 1) return {1, 1};

    if (use_cache) {
      auto it = cache.find(mask);
      if (it != cache.end()) return it->second;
    }

    // split off the connected piece containing the lowest live vertex
    std::uint64_t comp = mask & (~mask + 1);
    for (;;) {
      std::uint64_t grown = comp;
      std::uint64_t scan = comp;
      while (scan) {
        int v = std::countr_zero(scan);
        scan &= scan - 1;
        grown |= rows[v] & mask;
      }
      if (grown == comp) break;
      comp = grown;
    }

    Poly result;
    if (comp != mask) {
      result = poly_mul(count(comp), count(mask & ~comp));
    } else if (live == 2) {
      result = {1, 2};  // connected pair: an edge
    } else {
      // pivot on a maximum-degree vertex, smallest index on ties
      int pivot = -1, best = -1;
      std::uint64_t scan = mask;
      while (scan) {
        int v = std::countr_zero(scan);
        scan &= scan - 1;
        int deg = std::popcount(rows[v] & mask);
        if (deg > best) {
          best = deg;
          pivot = v;
        }
      }
      std::uint64_t bit = std::uint64_t{1} << pivot;
      result = poly_add_shifted(count(mask & ~bit),
                                count(mask & ~(rows[pivot] | bit)));
    }

    if (use_cache && cache.size() < cache_cap) cache.emplace(mask, result);
    return result;
  }
};

}  // namespace

IndependencePolynomial independence_polynomial(const Graph& g,
                                               const IpolyOptions& opts) {
  if (g.n() > 64)
    throw std::invalid_argument("independence_polynomial supports n <= 64");
  Poly total{1};
  for (const Graph& comp : connected_components(g)) {
    ComponentCounter cc;
    cc.rows.assign(comp.n(), 0);
    for (int v = 0; v < comp.n(); ++v)
      for (int w : comp.neighbors(v)) cc.rows[v] |= std::uint64_t{1} << w;
    cc.use_cache = opts.use_cache.value_or(comp.n() > 32);
    cc.cache_cap = opts.cache_max_entries;
    std::uint64_t full = comp.n() == 64 ? ~std::uint64_t{0}
                                        : (std::uint64_t{1} << comp.n()) - 1;
    total = poly_mul(total, cc.count(full));
  }
  return total;
}

IndependencePolynomial brute_force_polynomial(const Graph& g) {
  int n = g.n();
  if (n > 24) throw std::invalid_argument("brute_force_polynomial supports n <= 24");
  std::vector<std::uint32_t> adj(n, 0);
  for (int v = 0; v < n; ++v)
    for (int w : g.neighbors(v)) adj[v] |= std::uint32_t{1} << w;
  std::uint32_t count = std::uint32_t{1} << n;
  std::vector<char> indep(count, 0);
  std::vector<std::uint64_t> tally(n + 1, 0);
  indep[0] = 1;
  tally[0] = 1;
  for (std::uint32_t s = 1; s < count; ++s) {
    int v = std::countr_zero(s);
    std::uint32_t rest = s & (s - 1);
    indep[s] = indep[rest] && (adj[v] & rest) == 0;
    if (indep[s]) ++tally[std::popcount(s)];
  }
  int alpha = n;
  while (alpha > 0 && tally[alpha] == 0) --alpha;
  Poly p(alpha + 1);
  for (int k = 0; k <= alpha; ++k) p[k] = static_cast<unsigned long>(tally[k]);
  return p;
}

mpz_class independent_set_count(const IndependencePolynomial& p) {
  mpz_class s = 0;
  for (const auto& c : p) s += c;
  return s;
}

int independence_number(const IndependencePolynomial& p) {
  if (p.empty()) throw std::invalid_argument("empty polynomial");
  return static_cast<int>(p.size()) - 1;
}

mpq_class evaluate_exact(const IndependencePolynomial& p, const mpq_class& lambda) {
  if (p.empty()) throw std::invalid_argument("empty polynomial");
  mpq_class z = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) z = z * lambda + mpq_class(*it);
  return z;
}

double log_z(const IndependencePolynomial& p, const mpq_class& lambda) {
  if (lambda < 0) throw std::domain_error("log_z requires lambda >= 0");
  mpq_class z = evaluate_exact(p, lambda);
  if (z <= 0) throw std::domain_error("partition function is not positive");
  mpfr_t t;
  mpfr_init2(t, 256);
  mpfr_set_q(t, z.get_mpq_t(), MPFR_RNDN);
  mpfr_log(t, t, MPFR_RNDN);
  double out = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return out;
}

mpq_class occupancy_fraction_exact(const IndependencePolynomial& p,
                                   const mpq_class& lambda) {
  if (lambda <= 0) throw std::domain_error("occupancy requires lambda > 0");
  if (p.empty()) throw std::invalid_argument("empty polynomial");
  // lambda p'(lambda) = sum_{k>=1} k c_k lambda^k, by Horner on k c_k
  mpq_class num = 0;
  for (std::size_t i = p.size(); i-- > 1;)
    num = num * lambda + mpq_class(static_cast<unsigned long>(i) * p[i]);
  num *= lambda;
  return num / evaluate_exact(p, lambda);
}

double occupancy_fraction(const IndependencePolynomial& p, const mpq_class& lambda) {
  return occupancy_fraction_exact(p, lambda).get_d();
}

mpq_class parse_rational(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  if (t[0] == '+') t.erase(0, 1);  // GMP's parser takes '-' but not '+'

  static const std::regex plain(R"(-?\d+(/\d+)?)");
  static const std::regex decimal(R"(([+-]?)(\d*)\.?(\d*)(?:[eE]([+-]?\d+))?)");
  std::smatch m;
  if (std::regex_match(t, m, plain)) {
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), t.c_str(), 10) != 0)
      throw std::invalid_argument("bad rational literal: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
  }
  if (std::regex_match(t, m, decimal) && (m[2].length() || m[3].length())) {
    std::string digits = m[2].str() + m[3].str();
    // base must be explicit: mpz_class's base-0 default reads "025" as octal
    mpz_class num(digits.empty() ? "0" : digits, 10);
    if (m[1].str() == "-") num = -num;
    long exp10 = m[4].length() ? std::stol(m[4].str()) : 0;
    exp10 -= static_cast<long>(m[3].length());
    mpq_class q(num);
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(exp10)));
    if (exp10 >= 0)
      q *= mpq_class(pow10);
    else
      q /= mpq_class(pow10);
    q.canonicalize();
    return q;
  }
  throw std::invalid_argument("bad rational literal: " + s);
}

std::string format_polynomial(const IndependencePolynomial& p) {
  std::ostringstream out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out << ' ';
    out << p[i].get_str();
  }
  return out.str();
}

IndependencePolynomial parse_polynomial(const std::string& line) {
  std::istringstream in(line);
  Poly p;
  std::string tok;
  while (in >> tok) {
    mpz_class c;
    if (mpz_set_str(c.get_mpz_t(), tok.c_str(), 10) != 0)
      throw std::invalid_argument("bad coefficient: " + tok);
    p.push_back(c);
  }
  if (p.empty()) throw std::invalid_argument("empty polynomial line");
  return p;
}

}  // namespace hardcore
