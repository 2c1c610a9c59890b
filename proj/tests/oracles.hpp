#pragma once

// Brute-force reference computations for the tests. Nothing here calls into the library's
// algorithms; only plain containers and the exact rational type are shared.

#include "coverkit/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using coverkit::Rational;
using Vec = std::vector<std::int64_t>;

/// Every invariant-factor chain d_1 | ... | d_s (d_1 >= 2) with product <= max_order, trivial group included.
inline std::vector<Vec> abelian_groups_up_to(std::int64_t max_order)
{
    std::vector<Vec> out{{}};
    auto grow = [&](auto&& self, Vec chain, std::int64_t product) -> void {
        const std::int64_t start = chain.empty() ? 2 : chain.back();
        for (std::int64_t d = start; product * d <= max_order; d += chain.empty() ? 1 : chain.back()) {
            if (!chain.empty() && d % chain.back() != 0) continue;
            auto next = chain;
            next.push_back(d);
            out.push_back(next);
            self(self, next, product * d);
        }
    };
    grow(grow, {}, 1);
    return out;
}

inline std::int64_t product(const Vec& v)
{
    return std::accumulate(v.begin(), v.end(), std::int64_t{1}, std::multiplies<>());
}

/// All coordinate vectors of Z_{d_1} x ... x Z_{d_s}, odometer order.
inline std::vector<Vec> all_tuples(const Vec& d)
{
    std::vector<Vec> out;
    Vec cur(d.size(), 0);
    while (true) {
        out.push_back(cur);
        std::size_t j = 0;
        while (j < d.size() && ++cur[j] == d[j]) cur[j++] = 0;
        if (j == d.size()) break;
    }
    return out;
}

inline Vec add(const Vec& d, const Vec& a, const Vec& b)
{
    Vec out(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) out[j] = (a[j] + b[j]) % d[j];
    return out;
}

inline bool is_zero(const Vec& v)
{
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

/// Order of g by repeated addition.
inline std::int64_t order_by_iteration(const Vec& d, const Vec& g)
{
    Vec cur = g;
    std::int64_t k = 1;
    while (!is_zero(cur)) {
        cur = add(d, cur, g);
        ++k;
    }
    return k;
}

/// The subgroup generated by gens, by closure.
inline std::set<Vec> closure(const Vec& d, const std::vector<Vec>& gens)
{
    std::set<Vec> seen{Vec(d.size(), 0)};
    std::vector<Vec> frontier{Vec(d.size(), 0)};
    while (!frontier.empty()) {
        auto x = frontier.back();
        frontier.pop_back();
        for (const auto& g : gens) {
            auto y = add(d, x, g);
            if (seen.insert(y).second) frontier.push_back(y);
        }
    }
    return seen;
}

inline std::int64_t closure_order(const Vec& d, const std::vector<Vec>& gens)
{
    return static_cast<std::int64_t>(closure(d, gens).size());
}

/// chi_a(g) as the fractional part of sum_j a_j g_j / d_j.
inline Rational character_value(const Vec& d, const Vec& a, const Vec& g)
{
    Rational total = 0;
    for (std::size_t j = 0; j < d.size(); ++j) total += Rational(a[j] * g[j]) / Rational(d[j]);
    return coverkit::frac(total);
}

/// r in [0, m) with chi(g) = r/m, found by search.
inline std::int64_t r_by_search(const Vec& d, const Vec& g, std::int64_t m, const Vec& a)
{
    const auto v = character_value(d, a, g);
    for (std::int64_t r = 0; r < m; ++r)
        if (Rational(r) / Rational(m) == v) return r;
    return -1;
}

/// Rank over Q by fraction-valued elimination.
inline std::size_t rank_over_q(const std::vector<Vec>& rows)
{
    std::vector<std::vector<Rational>> a;
    for (const auto& r : rows) {
        std::vector<Rational> row;
        for (auto x : r) row.emplace_back(x);
        a.push_back(row);
    }
    if (a.empty()) return 0;
    const std::size_t cols = a[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
        std::size_t p = rank;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == rank || a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// Elements on which every listed character is trivial.
inline std::vector<Vec> kernel(const Vec& d, const std::vector<Vec>& characters)
{
    std::vector<Vec> out;
    for (const auto& g : all_tuples(d)) {
        bool in = true;
        for (const auto& a : characters) in = in && character_value(d, a, g) == 0;
        if (in) out.push_back(g);
    }
    return out;
}

/// Histogram of element orders; it determines a finite abelian group up to isomorphism.
inline std::map<std::int64_t, std::int64_t> order_histogram(const Vec& d, const std::vector<Vec>& elements)
{
    std::map<std::int64_t, std::int64_t> h;
    for (const auto& g : elements) ++h[order_by_iteration(d, g)];
    return h;
}

inline std::map<std::int64_t, std::int64_t> order_histogram(const Vec& d) { return order_histogram(d, all_tuples(d)); }

/// Sum of the classes weighted by coefficients, coordinatewise.
inline Vec combine(const std::vector<std::int64_t>& coeffs, const std::vector<Vec>& classes, std::size_t width)
{
    Vec out(width, 0);
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t k = 0; k < width; ++k) out[k] += coeffs[i] * classes[i][k];
    return out;
}

/// h^0(O(a)) on P^2 by counting monomials of degree a in three variables.
inline std::int64_t monomials_P2(std::int64_t a)
{
    std::int64_t count = 0;
    for (std::int64_t i = 0; i <= a; ++i)
        for (std::int64_t j = 0; i + j <= a; ++j) ++count;
    return count;
}

/// h^0(O(a, b)) on P^1 x P^1 by counting bihomogeneous monomials.
inline std::int64_t monomials_P1xP1(std::int64_t a, std::int64_t b)
{
    if (a < 0 || b < 0) return 0;
    std::int64_t count = 0;
    for (std::int64_t i = 0; i <= a; ++i)
        for (std::int64_t j = 0; j <= b; ++j) ++count;
    return count;
}

/// Double cover of P^2 branched on a smooth curve of even degree 2k: classical invariants.
struct DoublePlane {
    std::int64_t K_squared;
    std::int64_t euler;
    std::int64_t chi;
};

inline DoublePlane double_plane(std::int64_t branch_degree)
{
    const std::int64_t k = branch_degree / 2;
    const std::int64_t genus = (branch_degree - 1) * (branch_degree - 2) / 2;
    DoublePlane out{};
    out.K_squared = 2 * (k - 3) * (k - 3);          // K_X = pullback of (k - 3) H
    out.euler = 2 * 3 - (2 - 2 * genus);            // e(X) = 2 e(P^2) - e(B)
    out.chi = 1 + ((1 - k) * (2 - k)) / 2;          // chi(O_P2) + chi(O_P2(-k))
    return out;
}

inline std::mt19937_64& rng()
{
    static std::mt19937_64 engine(20240611);
    return engine;
}

inline std::int64_t uniform(std::int64_t lo, std::int64_t hi)
{
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng());
}

}  // namespace oracle
