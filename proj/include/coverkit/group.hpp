#pragma once

#include "coverkit/integer_matrix.hpp"
#include "coverkit/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coverkit {

class GroupError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An element of Z_{d_1} x ... x Z_{d_s}, coordinates reduced mod d_j.
struct GroupElement {
    std::vector<std::int64_t> coords;

    bool is_zero() const
    {
        return std::all_of(coords.begin(), coords.end(), [](std::int64_t c) { return c == 0; });
    }
    auto operator<=>(const GroupElement&) const = default;
};

/// The character chi_1^{a_1} ... chi_s^{a_s} in the dual basis, exponents reduced mod d_j.
struct Character {
    std::vector<std::int64_t> exponents;

    bool is_trivial() const
    {
        return std::all_of(exponents.begin(), exponents.end(), [](std::int64_t a) { return a == 0; });
    }
    auto operator<=>(const Character&) const = default;
};

/// Finite abelian group in invariant-factor form d_1 | d_2 | ... | d_s, each d_j >= 2.
///
/// The canonical basis is e_1..e_s; chi_1..chi_s is the dual basis with
/// chi_j(e_i) = 1/d_i mod 1 when i == j and 0 otherwise. Element and character
/// enumeration is mixed-radix with the first coordinate varying fastest, so
/// index 0 is always the identity / trivial character.
class FinAbGroup {
public:
    FinAbGroup() = default;

    explicit FinAbGroup(std::vector<std::int64_t> invariant_factors) : factors_(std::move(invariant_factors))
    {
        for (std::size_t j = 0; j < factors_.size(); ++j) {
            if (factors_[j] < 2) throw GroupError("invariant factors must be >= 2");
            if (j + 1 < factors_.size() && factors_[j + 1] % factors_[j] != 0)
                throw GroupError("invariant factors must form a divisibility chain");
        }
        order_ = 1;
        for (auto d : factors_) {
            if (order_ > (std::int64_t{1} << 40) / d) throw GroupError("group order too large");
            order_ *= d;
        }
    }

    const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
    std::size_t rank() const { return factors_.size(); }
    std::int64_t order() const { return order_; }
    std::int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }

    bool operator==(const FinAbGroup&) const = default;

    GroupElement identity() const { return GroupElement{std::vector<std::int64_t>(rank(), 0)}; }

    GroupElement basis_element(std::size_t j) const
    {
        auto e = identity();
        e.coords.at(j) = 1;
        return e;
    }

    Character dual_basis_character(std::size_t j) const
    {
        Character c{std::vector<std::int64_t>(rank(), 0)};
        c.exponents.at(j) = 1;
        return c;
    }

    Character trivial_character() const { return Character{std::vector<std::int64_t>(rank(), 0)}; }

    GroupElement element(std::vector<std::int64_t> coords) const
    {
        if (coords.size() != rank()) throw GroupError("element has wrong number of coordinates");
        for (std::size_t j = 0; j < rank(); ++j) coords[j] = mod(coords[j], factors_[j]);
        return GroupElement{std::move(coords)};
    }

    Character character(std::vector<std::int64_t> exponents) const
    {
        if (exponents.size() != rank()) throw GroupError("character has wrong number of exponents");
        for (std::size_t j = 0; j < rank(); ++j) exponents[j] = mod(exponents[j], factors_[j]);
        return Character{std::move(exponents)};
    }

    GroupElement add(const GroupElement& a, const GroupElement& b) const
    {
        check(a);
        check(b);
        GroupElement out = a;
        for (std::size_t j = 0; j < rank(); ++j) out.coords[j] = (a.coords[j] + b.coords[j]) % factors_[j];
        return out;
    }

    GroupElement scale(const GroupElement& a, std::int64_t k) const
    {
        check(a);
        GroupElement out = a;
        for (std::size_t j = 0; j < rank(); ++j) out.coords[j] = mod(k % factors_[j] * a.coords[j], factors_[j]);
        return out;
    }

    GroupElement negate(const GroupElement& a) const { return scale(a, -1); }

    Character multiply(const Character& a, const Character& b) const
    {
        check(a);
        check(b);
        Character out = a;
        for (std::size_t j = 0; j < rank(); ++j) out.exponents[j] = (a.exponents[j] + b.exponents[j]) % factors_[j];
        return out;
    }

    Character inverse(const Character& a) const
    {
        check(a);
        Character out = a;
        for (std::size_t j = 0; j < rank(); ++j) out.exponents[j] = mod(-a.exponents[j], factors_[j]);
        return out;
    }

    std::int64_t element_order(const GroupElement& g) const
    {
        check(g);
        std::int64_t ord = 1;
        for (std::size_t j = 0; j < rank(); ++j) ord = std::lcm(ord, factors_[j] / std::gcd(g.coords[j], factors_[j]));
        return ord;
    }

    std::int64_t character_order(const Character& c) const
    {
        check(c);
        std::int64_t ord = 1;
        for (std::size_t j = 0; j < rank(); ++j) ord = std::lcm(ord, factors_[j] / std::gcd(c.exponents[j], factors_[j]));
        return ord;
    }

    /// chi(g) as an exact rational in [0,1): the root of unity exp(2 pi i * value).
    Rational pairing(const Character& chi, const GroupElement& g) const
    {
        check(chi);
        check(g);
        // Common denominator d_s: chi(g) = sum_j a_j g_j (d_s/d_j) / d_s.
        std::int64_t numerator = 0;
        const std::int64_t top = exponent();
        for (std::size_t j = 0; j < rank(); ++j)
            numerator = (numerator + chi.exponents[j] * g.coords[j] % factors_[j] * (top / factors_[j])) % top;
        return make_rational(numerator, top);
    }

    /// Index in the canonical enumeration (first coordinate fastest).
    std::size_t index_of(const std::vector<std::int64_t>& coords) const
    {
        std::size_t idx = 0;
        std::size_t stride = 1;
        for (std::size_t j = 0; j < rank(); ++j) {
            idx += static_cast<std::size_t>(coords[j]) * stride;
            stride *= static_cast<std::size_t>(factors_[j]);
        }
        return idx;
    }
    std::size_t index_of(const GroupElement& g) const { return index_of(g.coords); }
    std::size_t index_of(const Character& c) const { return index_of(c.exponents); }

    std::vector<std::int64_t> coords_at(std::size_t index) const
    {
        std::vector<std::int64_t> coords(rank());
        for (std::size_t j = 0; j < rank(); ++j) {
            coords[j] = static_cast<std::int64_t>(index % static_cast<std::size_t>(factors_[j]));
            index /= static_cast<std::size_t>(factors_[j]);
        }
        return coords;
    }

    std::vector<GroupElement> elements() const
    {
        std::vector<GroupElement> out;
        out.reserve(static_cast<std::size_t>(order_));
        for (std::size_t i = 0; i < static_cast<std::size_t>(order_); ++i) out.push_back(GroupElement{coords_at(i)});
        return out;
    }

    std::vector<Character> characters() const
    {
        std::vector<Character> out;
        out.reserve(static_cast<std::size_t>(order_));
        for (std::size_t i = 0; i < static_cast<std::size_t>(order_); ++i) out.push_back(Character{coords_at(i)});
        return out;
    }

    void check(const GroupElement& g) const
    {
        if (g.coords.size() != rank()) throw GroupError("element does not belong to this group");
        for (std::size_t j = 0; j < rank(); ++j)
            if (g.coords[j] < 0 || g.coords[j] >= factors_[j]) throw GroupError("element coordinate not reduced");
    }

    void check(const Character& c) const
    {
        if (c.exponents.size() != rank()) throw GroupError("character does not belong to this group");
        for (std::size_t j = 0; j < rank(); ++j)
            if (c.exponents[j] < 0 || c.exponents[j] >= factors_[j]) throw GroupError("character exponent not reduced");
    }

private:
    static std::int64_t mod(std::int64_t a, std::int64_t m)
    {
        auto r = a % m;
        return r < 0 ? r + m : r;
    }

    std::vector<std::int64_t> factors_;
    std::int64_t order_ = 1;
};

/// A pair (H, psi) of I_G, stored as the element g with <g> = H and psi(g) = zeta_{#H}.
struct InertiaDatum {
    GroupElement generator;
    std::int64_t order = 0;  ///< m = #H

    auto operator<=>(const InertiaDatum&) const = default;
};

inline InertiaDatum make_inertia(const FinAbGroup& group, GroupElement g)
{
    group.check(g);
    if (g.is_zero()) throw GroupError("inertia generator must be nonzero");
    auto m = group.element_order(g);
    return InertiaDatum{std::move(g), m};
}

/// I_G, one datum per nonzero element, in enumeration order.
inline std::vector<InertiaDatum> enumerate_IG(const FinAbGroup& group)
{
    std::vector<InertiaDatum> out;
    for (auto& g : group.elements())
        if (!g.is_zero()) out.push_back(make_inertia(group, g));
    return out;
}

/// r^i_chi: the unique 0 <= r < m_i with chi restricted to H_i equal to psi_i^r.
inline std::int64_t r_coeff(const FinAbGroup& group, const InertiaDatum& i, const Character& chi)
{
    return to_int64(group.pairing(chi, i.generator) * Rational(i.order));
}

/// eps^i_{chi,chi'} = floor((r^i_chi + r^i_chi') / m_i), always 0 or 1.
inline std::int64_t eps_coeff(const FinAbGroup& group, const InertiaDatum& i, const Character& a, const Character& b)
{
    return (r_coeff(group, i, a) + r_coeff(group, i, b)) / i.order;
}

/// q^i_chi = floor(sum_j a_j r^i_j / m_i); depends on the basis, not only on chi.
inline std::int64_t q_coeff(const FinAbGroup& group, const InertiaDatum& i, const Character& chi)
{
    group.check(chi);
    std::int64_t total = 0;
    for (std::size_t j = 0; j < group.rank(); ++j)
        total += chi.exponents[j] * r_coeff(group, i, group.dual_basis_character(j));
    return total / i.order;
}

/// n_j r^i_j / m_i, which is the j-th coordinate of the generator of H_i.
inline std::int64_t reduced_coeff(const FinAbGroup& group, const InertiaDatum& i, std::size_t j)
{
    auto n = group.invariant_factors().at(j);
    auto r = r_coeff(group, i, group.dual_basis_character(j));
    return n * r / i.order;
}

/// Order of the subgroup generated by `gens`, via Smith normal form of [diag(d) | gens].
inline std::int64_t subgroup_order(const FinAbGroup& group, const std::vector<GroupElement>& gens)
{
    const std::size_t s = group.rank();
    if (s == 0) return 1;
    IntMatrix rel(s, s + gens.size());
    for (std::size_t j = 0; j < s; ++j) rel(j, j) = group.invariant_factors()[j];
    for (std::size_t k = 0; k < gens.size(); ++k) {
        group.check(gens[k]);
        for (std::size_t j = 0; j < s; ++j) rel(j, s + k) = gens[k].coords[j];
    }
    std::int64_t quotient = 1;
    for (auto d : smith_diagonal(rel)) quotient *= d;
    return group.order() / quotient;
}

inline std::vector<GroupElement> generators_of(const std::vector<InertiaDatum>& data)
{
    std::vector<GroupElement> gens;
    gens.reserve(data.size());
    for (const auto& i : data) gens.push_back(i.generator);
    return gens;
}

/// Whether H_1 + ... + H_k -> G is surjective (the cover is totally ramified).
inline bool surjectivity_check(const FinAbGroup& group, const std::vector<InertiaDatum>& data)
{
    return subgroup_order(group, generators_of(data)) == group.order();
}

/// Whether H_1 + ... + H_k -> G is injective.
inline bool injectivity_check(const FinAbGroup& group, const std::vector<InertiaDatum>& data)
{
    std::int64_t product = 1;
    for (const auto& i : data) product *= i.order;
    return product == subgroup_order(group, generators_of(data));
}

/// The k x s matrix (r^i_j).
inline IntMatrix r_matrix(const FinAbGroup& group, const std::vector<InertiaDatum>& data)
{
    IntMatrix m(data.size(), group.rank());
    for (std::size_t i = 0; i < data.size(); ++i)
        for (std::size_t j = 0; j < group.rank(); ++j) m(i, j) = r_coeff(group, data[i], group.dual_basis_character(j));
    return m;
}

/// Whether (r^i_j) has rank s over Q.
inline bool rank_check(const FinAbGroup& group, const std::vector<InertiaDatum>& data)
{
    return rational_rank(r_matrix(group, data)) == group.rank();
}

/// Elements of the common kernel of `chars`, in enumeration order.
inline std::vector<GroupElement> common_kernel(const FinAbGroup& group, const std::vector<Character>& chars)
{
    std::vector<GroupElement> out;
    for (auto& g : group.elements()) {
        bool fixed = std::all_of(chars.begin(), chars.end(), [&](const Character& c) { return group.pairing(c, g) == 0; });
        if (fixed) out.push_back(g);
    }
    return out;
}

/// Invariant factors of a finite abelian group given by the full list of its elements.
///
/// Uses the p-primary counts #{x : p^e x = 0}, which determine the isomorphism type.
inline std::vector<std::int64_t> invariant_factors_of(const FinAbGroup& group, const std::vector<GroupElement>& subgroup)
{
    std::vector<std::int64_t> orders;
    orders.reserve(subgroup.size());
    for (const auto& g : subgroup) orders.push_back(group.element_order(g));
    std::int64_t n = static_cast<std::int64_t>(subgroup.size());

    // prime -> exponents of the cyclic p-factors, descending
    std::map<std::int64_t, std::vector<int>> parts;
    for (std::int64_t p = 2; n > 1; ++p) {
        if (n % p != 0) continue;
        int total = 0;
        while (n % p == 0) {
            n /= p;
            ++total;
        }
        // log_p #{x : p^e x = 0} = sum_i min(e, lambda_i)
        std::vector<int> log_counts{0};
        for (int e = 1;; ++e) {
            std::int64_t pe = 1;
            for (int k = 0; k < e; ++k) pe *= p;
            std::int64_t count = 0;
            for (auto o : orders)
                if (pe % o == 0) ++count;
            int lg = 0;
            while (count > 1) {
                count /= p;
                ++lg;
            }
            log_counts.push_back(lg);
            if (lg == total) break;
        }
        // number of parts with lambda >= e is log_counts[e] - log_counts[e-1]
        std::vector<int> at_least;
        for (std::size_t e = 1; e < log_counts.size(); ++e) at_least.push_back(log_counts[e] - log_counts[e - 1]);
        std::vector<int> lambdas;
        for (std::size_t e = 0; e < at_least.size(); ++e) {
            int exactly = at_least[e] - (e + 1 < at_least.size() ? at_least[e + 1] : 0);
            for (int k = 0; k < exactly; ++k) lambdas.push_back(static_cast<int>(e + 1));
        }
        std::sort(lambdas.rbegin(), lambdas.rend());
        parts[p] = lambdas;
    }

    std::size_t length = 0;
    for (auto& [p, lambdas] : parts) length = std::max(length, lambdas.size());
    std::vector<std::int64_t> factors(length, 1);
    for (auto& [p, lambdas] : parts)
        for (std::size_t k = 0; k < lambdas.size(); ++k)
            for (int e = 0; e < lambdas[k]; ++e) factors[length - 1 - k] *= p;
    return factors;
}

/// A group automorphism, stored as the images of the canonical basis.
struct GroupAutomorphism {
    std::vector<GroupElement> basis_images;

    auto operator<=>(const GroupAutomorphism&) const = default;
};

inline GroupElement apply(const FinAbGroup& group, const GroupAutomorphism& phi, const GroupElement& g)
{
    auto out = group.identity();
    for (std::size_t j = 0; j < group.rank(); ++j) out = group.add(out, group.scale(phi.basis_images[j], g.coords[j]));
    return out;
}

struct AutEnumerationLimits {
    std::int64_t max_group_order = 512;
    std::size_t max_automorphisms = 100000;
};

class EnumerationBoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Aut_I(G): all automorphisms mapping the set I onto itself.
///
/// Phi acts on I_G by (H, psi) -> (Phi(H), psi o Phi^{-1}), which on generators is g -> Phi(g).
inline std::vector<GroupAutomorphism> aut_I(const FinAbGroup& group, const std::vector<InertiaDatum>& data,
                                            AutEnumerationLimits limits = {})
{
    if (group.order() > limits.max_group_order)
        throw EnumerationBoundError("group of order " + std::to_string(group.order()) + " exceeds the enumeration bound " +
                                    std::to_string(limits.max_group_order));

    std::set<GroupElement> wanted;
    for (const auto& i : data) wanted.insert(i.generator);

    const auto elements = group.elements();
    std::vector<GroupAutomorphism> out;
    std::size_t visited = 0;
    GroupAutomorphism partial;

    // Backtracking over basis images; a prefix is kept only while it embeds <e_1..e_t>.
    std::int64_t prefix_order = 1;
    auto recurse = [&](auto&& self, std::size_t j) -> void {
        if (j == group.rank()) {
            if (++visited > limits.max_automorphisms)
                throw EnumerationBoundError("more than " + std::to_string(limits.max_automorphisms) + " automorphisms");
            std::set<GroupElement> image;
            for (const auto& g : wanted) image.insert(apply(group, partial, g));
            if (image == wanted) out.push_back(partial);
            return;
        }
        const auto d = group.invariant_factors()[j];
        for (const auto& candidate : elements) {
            if (d % group.element_order(candidate) != 0) continue;
            partial.basis_images.push_back(candidate);
            if (subgroup_order(group, partial.basis_images) == prefix_order * d) {
                prefix_order *= d;
                self(self, j + 1);
                prefix_order /= d;
            }
            partial.basis_images.pop_back();
        }
    };
    recurse(recurse, 0);
    return out;
}

inline std::string to_string(const std::vector<std::int64_t>& v)
{
    std::string out = "(";
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
    return out + ")";
}

/// "Z_3 x Z_3", or "1" for the trivial group.
inline std::string describe_group(const std::vector<std::int64_t>& factors)
{
    if (factors.empty()) return "1";
    std::string out;
    for (std::size_t k = 0; k < factors.size(); ++k) out += (k ? " x Z_" : "Z_") + std::to_string(factors[k]);
    return out;
}

}  // namespace coverkit
