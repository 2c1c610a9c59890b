#pragma once

#include "coverkit/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coverkit::poly {

using Monomial = std::vector<int>;   // exponent vector, fixed length per ring

inline int total_degree(const Monomial& m)
{
    int d = 0;
    for (auto e : m) d += e;
    return d;
}

/// Graded reverse lexicographic comparison: true iff a > b.
inline bool grevlex_greater(const Monomial& a, const Monomial& b)
{
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (std::size_t k = a.size(); k-- > 0;)
        if (a[k] != b[k]) return a[k] < b[k];
    return false;
}

/// Graded lexicographic comparison: true iff a > b. Used for printing.
inline bool grlex_greater(const Monomial& a, const Monomial& b)
{
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
}

inline bool divides(const Monomial& a, const Monomial& b)
{
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k]) return false;
    return true;
}

inline Monomial lcm(const Monomial& a, const Monomial& b)
{
    Monomial out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = std::max(a[k], b[k]);
    return out;
}

inline Monomial quotient(const Monomial& a, const Monomial& b)
{
    Monomial out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
    return out;
}

inline Monomial product(const Monomial& a, const Monomial& b)
{
    Monomial out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
    return out;
}

/// Sparse polynomial over Q in a fixed number of variables.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rational& c)
    {
        Polynomial p(nvars);
        p.add_term(Monomial(nvars, 0), c);
        return p;
    }
    static Polynomial variable(std::size_t nvars, std::size_t index)
    {
        Polynomial p(nvars);
        Monomial m(nvars, 0);
        m.at(index) = 1;
        p.add_term(m, 1);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rational& c)
    {
        if (m.size() != nvars_) throw std::invalid_argument("monomial has the wrong number of variables");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o)
    {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        Polynomial out(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(product(ma, mb), ca * cb);
        return out;
    }
    Polynomial times_term(const Monomial& m, const Rational& c) const
    {
        Polynomial out(nvars_);
        if (c == 0) return out;
        for (const auto& [mm, cc] : terms_) out.terms_.emplace(product(mm, m), cc * c);
        return out;
    }
    Polynomial pow(int e) const
    {
        auto out = constant(nvars_, 1);
        for (int k = 0; k < e; ++k) out = out * *this;
        return out;
    }
    bool operator==(const Polynomial&) const = default;

    /// Leading monomial and coefficient in grevlex.
    std::pair<Monomial, Rational> leading() const
    {
        if (terms_.empty()) throw std::logic_error("leading term of the zero polynomial");
        auto best = terms_.begin();
        for (auto it = terms_.begin(); it != terms_.end(); ++it)
            if (grevlex_greater(it->first, best->first)) best = it;
        return *best;
    }

    /// Terms in descending grlex order (the printing order).
    std::vector<std::pair<Monomial, Rational>> sorted_terms() const
    {
        std::vector<std::pair<Monomial, Rational>> out(terms_.begin(), terms_.end());
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return grlex_greater(a.first, b.first); });
        return out;
    }

    /// Substitute rational values for a subset of the variables; the result keeps all variables.
    Polynomial evaluate(const std::map<std::size_t, Rational>& values) const
    {
        Polynomial out(nvars_);
        for (const auto& [m, c] : terms_) {
            Monomial rest = m;
            Rational coeff = c;
            for (const auto& [var, value] : values) {
                for (int e = 0; e < m[var]; ++e) coeff *= value;
                rest[var] = 0;
            }
            out.add_term(rest, coeff);
        }
        return out;
    }

private:
    std::size_t nvars_ = 0;
    std::map<Monomial, Rational> terms_;
};

inline std::string monomial_text(const Monomial& m, const std::vector<std::string>& names)
{
    std::string out;
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k] == 0) continue;
        if (!out.empty()) out += "*";
        out += names.at(k);
        if (m[k] > 1) out += "^" + std::to_string(m[k]);
    }
    return out;
}

/// Text with `*` and `^`, terms in descending grlex order.
inline std::string to_text(const Polynomial& p, const std::vector<std::string>& names)
{
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.sorted_terms()) {
        const bool negative = c < 0;
        const Rational magnitude = negative ? Rational(-c) : c;
        auto mono = monomial_text(m, names);
        std::string body;
        if (mono.empty()) body = to_string(magnitude);
        else if (magnitude == 1) body = mono;
        else body = to_string(magnitude) + "*" + mono;
        if (first) out += (negative ? "-" : "") + body;
        else out += (negative ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

/// Full reduction of p modulo the list (grevlex).
inline Polynomial normal_form(Polynomial p, const std::vector<Polynomial>& basis)
{
    Polynomial remainder(p.nvars());
    std::vector<std::pair<Monomial, Rational>> leads;
    for (const auto& g : basis) leads.push_back(g.leading());
    while (!p.is_zero()) {
        auto [m, c] = p.leading();
        bool reduced = false;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (!divides(leads[k].first, m)) continue;
            p -= basis[k].times_term(quotient(m, leads[k].first), c / leads[k].second);
            reduced = true;
            break;
        }
        if (!reduced) {
            remainder.add_term(m, c);
            Polynomial lead(p.nvars());
            lead.add_term(m, c);
            p -= lead;
        }
    }
    return remainder;
}

class SizeBoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reduced Groebner basis (grevlex) by Buchberger's algorithm with the coprime-leading-term criterion.
inline std::vector<Polynomial> groebner_basis(std::vector<Polynomial> input, std::size_t max_pairs = 200000)
{
    std::vector<Polynomial> basis;
    for (auto& p : input)
        if (!p.is_zero()) basis.push_back(std::move(p));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a + 1; b < basis.size(); ++b) pairs.emplace_back(a, b);

    std::size_t processed = 0;
    while (!pairs.empty()) {
        if (++processed > max_pairs) throw SizeBoundError("Groebner basis computation exceeded the pair budget");
        auto [a, b] = pairs.back();
        pairs.pop_back();
        auto [ma, ca] = basis[a].leading();
        auto [mb, cb] = basis[b].leading();
        auto l = lcm(ma, mb);
        if (l == product(ma, mb)) continue;
        auto s = basis[a].times_term(quotient(l, ma), 1 / ca) - basis[b].times_term(quotient(l, mb), 1 / cb);
        auto r = normal_form(s, basis);
        if (r.is_zero()) continue;
        basis.push_back(std::move(r));
        for (std::size_t k = 0; k + 1 < basis.size(); ++k) pairs.emplace_back(k, basis.size() - 1);
    }

    // Minimise, then inter-reduce and make monic.
    std::vector<Polynomial> minimal;
    for (std::size_t a = 0; a < basis.size(); ++a) {
        auto ma = basis[a].leading().first;
        bool redundant = false;
        for (std::size_t b = 0; b < basis.size() && !redundant; ++b) {
            if (a == b) continue;
            auto mb = basis[b].leading().first;
            if (divides(mb, ma) && (mb != ma || b < a)) redundant = true;
        }
        if (!redundant) minimal.push_back(basis[a]);
    }
    std::vector<Polynomial> reduced;
    for (std::size_t a = 0; a < minimal.size(); ++a) {
        std::vector<Polynomial> others;
        for (std::size_t b = 0; b < minimal.size(); ++b)
            if (b != a) others.push_back(minimal[b]);
        auto lead = minimal[a].leading();
        Polynomial tail = minimal[a];
        Polynomial lt(tail.nvars());
        lt.add_term(lead.first, lead.second);
        tail -= lt;
        auto r = lt + normal_form(tail, others);
        reduced.push_back(r.times_term(Monomial(r.nvars(), 0), 1 / lead.second));
    }
    std::sort(reduced.begin(), reduced.end(),
              [](const Polynomial& x, const Polynomial& y) { return grevlex_greater(y.leading().first, x.leading().first); });
    return reduced;
}

/// Monomials outside the leading-term ideal, or nullopt when there are infinitely many.
inline std::optional<std::vector<Monomial>> standard_monomials(const std::vector<Polynomial>& gb, std::size_t nvars)
{
    std::vector<Monomial> leads;
    for (const auto& g : gb) leads.push_back(g.leading().first);
    for (const auto& m : leads)
        if (total_degree(m) == 0) return std::vector<Monomial>{};   // unit ideal
    std::vector<int> bound(nvars, -1);
    for (const auto& m : leads) {
        int nonzero = 0;
        std::size_t var = 0;
        for (std::size_t k = 0; k < nvars; ++k)
            if (m[k] > 0) {
                ++nonzero;
                var = k;
            }
        if (nonzero == 1 && (bound[var] < 0 || m[var] < bound[var])) bound[var] = m[var];
    }
    for (auto b : bound)
        if (b < 0) return std::nullopt;

    std::vector<Monomial> out;
    Monomial m(nvars, 0);
    auto recurse = [&](auto&& self, std::size_t var) -> void {
        if (var == nvars) {
            for (const auto& l : leads)
                if (divides(l, m)) return;
            out.push_back(m);
            return;
        }
        for (int e = 0; e < bound[var]; ++e) {
            m[var] = e;
            self(self, var + 1);
        }
        m[var] = 0;
    };
    recurse(recurse, 0);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grevlex_greater(b, a); });
    return out;
}

/// Rank over Q by Gaussian elimination.
inline std::size_t rank(std::vector<std::vector<Rational>> a)
{
    std::size_t r = 0;
    const std::size_t cols = a.empty() ? 0 : a.front().size();
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < a.size() && a[pivot][c] == 0) ++pivot;
        if (pivot == a.size()) continue;
        std::swap(a[pivot], a[r]);
        for (std::size_t row = r + 1; row < a.size(); ++row) {
            if (a[row][c] == 0) continue;
            Rational f = a[row][c] / a[r][c];
            for (std::size_t cc = c; cc < cols; ++cc) a[row][cc] -= f * a[r][cc];
        }
        ++r;
    }
    return r;
}

struct ZeroDimensionalCount {
    bool zero_dimensional = false;
    std::size_t with_multiplicity = 0;   ///< dim_Q of the quotient ring
    std::size_t distinct = 0;            ///< rank of the trace form (distinct complex points)
    std::vector<Polynomial> groebner;
};

/// Solution counts of a polynomial system over C via the quotient algebra.
inline ZeroDimensionalCount count_solutions(const std::vector<Polynomial>& system, std::size_t nvars)
{
    ZeroDimensionalCount out;
    out.groebner = groebner_basis(system);
    auto standard = standard_monomials(out.groebner, nvars);
    if (!standard) return out;
    out.zero_dimensional = true;
    out.with_multiplicity = standard->size();
    if (standard->empty()) return out;

    std::map<Monomial, std::size_t> position;
    for (std::size_t k = 0; k < standard->size(); ++k) position[(*standard)[k]] = k;
    // trace(mult by m) = sum_l coefficient of b_l in NF(m * b_l)
    std::map<Monomial, Rational> trace_cache;
    auto trace = [&](const Monomial& m) {
        auto it = trace_cache.find(m);
        if (it != trace_cache.end()) return it->second;
        Rational total = 0;
        for (const auto& b : *standard) {
            Polynomial p(nvars);
            p.add_term(product(m, b), 1);
            auto nf = normal_form(p, out.groebner);
            auto found = nf.terms().find(b);
            if (found != nf.terms().end()) total += found->second;
        }
        trace_cache.emplace(m, total);
        return total;
    };
    std::vector<std::vector<Rational>> form(standard->size(), std::vector<Rational>(standard->size()));
    for (std::size_t a = 0; a < standard->size(); ++a)
        for (std::size_t b = a; b < standard->size(); ++b) form[a][b] = form[b][a] = trace(product((*standard)[a], (*standard)[b]));
    out.distinct = rank(form);
    return out;
}

}  // namespace coverkit::poly
