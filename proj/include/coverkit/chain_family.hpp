#pragma once

#include "coverkit/deformations.hpp"
#include "coverkit/invariants.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coverkit {

/// Parameters d_1 | ... | d_s of the family; index 0 is the extra divisor with e_0 = -(e_1 + ... + e_s).
class ChainParams {
public:
    explicit ChainParams(std::vector<std::int64_t> d) : d_(std::move(d))
    {
        if (d_.empty()) throw GroupError("the chain needs at least one entry");
        group_ = FinAbGroup(d_);  // validates d_j >= 2 and divisibility
    }

    std::size_t s() const { return d_.size(); }
    const std::vector<std::int64_t>& chain() const { return d_; }
    const FinAbGroup& group() const { return group_; }

    /// d_i for i = 0..s (d_0 = d_s).
    std::int64_t d(std::size_t i) const { return i == 0 ? d_.back() : d_.at(i - 1); }
    std::int64_t b(std::size_t j) const { return d(0) / d(j); }

    /// Inertia data in the order 0, 1, ..., s.
    std::vector<InertiaDatum> inertia() const
    {
        std::vector<InertiaDatum> out;
        auto e0 = group_.identity();
        for (std::size_t j = 0; j < s(); ++j) e0 = group_.add(e0, group_.basis_element(j));
        out.push_back(make_inertia(group_, group_.negate(e0)));
        for (std::size_t j = 0; j < s(); ++j) out.push_back(make_inertia(group_, group_.basis_element(j)));
        return out;
    }

    /// The closed-form r table: delta_ij for i >= 1 and b_j (d_j - 1) for i = 0 (j is 1-based).
    std::int64_t r_table(std::size_t i, std::size_t j) const
    {
        if (i == 0) return b(j) * (d(j) - 1);
        return i == j ? 1 : 0;
    }

private:
    std::vector<std::int64_t> d_;
    FinAbGroup group_;
};

/// N_chi = ceil(sum_j alpha_j b_j / d_0).
inline std::int64_t n_chi(const ChainParams& p, const Character& chi)
{
    p.group().check(chi);
    std::int64_t total = 0;
    for (std::size_t j = 1; j <= p.s(); ++j) total += chi.exponents[j - 1] * p.b(j);
    return (total + p.d(0) - 1) / p.d(0);
}

/// Builds the cover with M_0 = xi, L_j = M_0 + F_j and M_j = M_0 + d_j F_j.
///
/// `markers` holds F_1..F_s as Pic^0 markers (missing entries are zero).
inline CoverData build_chain_cover(const ChainParams& p, const NumericalBase& base, const NSClass& xi,
                                   std::vector<Pic0Marker> markers = {})
{
    if (!is_sufficiently_ample(base, xi)) throw CoverError("branch class must be sufficiently ample");
    std::size_t width = 0;
    for (const auto& f : markers) width = std::max(width, f.coords.size());
    markers.resize(p.s());
    for (auto& f : markers) f.coords.resize(width, 0);

    std::vector<NSClass> branch(p.s() + 1, xi);
    std::vector<NSClass> reduced(p.s(), xi);
    std::vector<Pic0Marker> branch_markers{Pic0Marker::zero(width)};
    std::vector<Pic0Marker> reduced_markers;
    for (std::size_t j = 1; j <= p.s(); ++j) {
        branch_markers.push_back(Pic0Marker::zero(width).axpy(p.d(j), markers[j - 1]));
        reduced_markers.push_back(markers[j - 1]);
    }
    return make_cover(p.group(), p.inertia(), base, std::move(branch), std::move(reduced), std::move(branch_markers),
                      std::move(reduced_markers));
}

/// F_1..F_k independent, F_{k+1} = ... = F_s = 0.
inline std::vector<Pic0Marker> generic_markers(const ChainParams& p, std::size_t k)
{
    std::vector<Pic0Marker> out;
    for (std::size_t j = 1; j <= p.s(); ++j) {
        auto f = Pic0Marker::zero(std::max<std::size_t>(k, 1));
        if (j <= k) f.coords[j - 1] = 1;
        out.push_back(f);
    }
    return out;
}

/// Diagnostic for the character chi_1 + chi_s used when d_0 = 2 and k = s - 1.
struct FallbackProbe {
    Character chi;
    std::int64_t N = 0;
    bool zero_index_in_S = false;
    Pic0Marker marker;          ///< Pic^0 part of M_0 - L_chi
    bool marker_zero = false;
    std::optional<std::int64_t> tangent;
};

struct ComponentClass {
    std::size_t k = 0;
    std::string locus;   ///< description of the marker locus
    AutomorphismPrediction predicted;
    std::vector<std::int64_t> expected_factors;   ///< d_1..d_k
    std::optional<FallbackProbe> fallback;
};

inline std::string marker_locus_description(std::size_t k, std::size_t s)
{
    std::string out;
    if (k == 0) out = "F_1..F_" + std::to_string(s) + " = 0";
    else {
        out = "F_1..F_" + std::to_string(k) + " generic";
        if (k < s) out += ", F_" + std::to_string(k + 1) + "..F_" + std::to_string(s) + " = 0";
    }
    return out;
}

inline std::vector<ComponentClass> classify_components(const ChainParams& p, const NumericalBase& base, const NSClass& xi)
{
    if (base.irregularity < 1) throw CoverError("component classification needs q(Y) >= 1");
    std::vector<ComponentClass> out;
    for (std::size_t k = 0; k <= p.s(); ++k) {
        ComponentClass c;
        c.k = k;
        c.locus = marker_locus_description(k, p.s());
        auto cd = build_chain_cover(p, base, xi, generic_markers(p, k));
        auto report = tangent_table(cd);
        c.predicted = predict_generic_automorphisms(cd.group, report);
        for (std::size_t j = 1; j <= k; ++j) c.expected_factors.push_back(p.d(j));

        if (p.d(0) == 2 && p.s() >= 2 && k + 1 == p.s()) {
            FallbackProbe probe;
            std::vector<std::int64_t> a(p.s(), 0);
            a.front() = 1;
            a.back() = 1;
            probe.chi = p.group().character(a);
            probe.N = n_chi(p, probe.chi);
            probe.zero_index_in_S = in_S(cd.group, cd.inertia[0], probe.chi);
            probe.marker = cd.branch_marker(0) - derive_L_chi_marker(cd, probe.chi);
            probe.marker_zero = probe.marker.is_zero();
            probe.tangent = report.rows[cd.group.index_of(probe.chi)].tangent;
            c.fallback = probe;
        }
        out.push_back(std::move(c));
    }
    return out;
}

/// K^2 three ways for the d = (n, n) family over a principally polarized abelian surface, xi = 2 Theta.
struct GroupBoundReport {
    std::int64_t n = 0;
    std::int64_t predicted_order = 0;
    std::vector<std::int64_t> predicted_factors;
    Rational K2_printed;      ///< the family's displayed K^2 expression
    Rational K2_pullback;     ///< #G (K_Y + sum (1 - 1/m_i) xi)^2
    Rational K2_quoted;       ///< 16 (n - 1)^2
    bool bound_printed = false;
    bool bound_pullback = false;
    bool bound_quoted = false;   ///< n^2 > k_n / 16 for each variant
};

inline GroupBoundReport group_bound_report(std::int64_t n)
{
    if (n < 2) throw InvalidConfiguration("n must be >= 2");
    GroupBoundReport r;
    r.n = n;
    const ChainParams p({n, n});
    const auto base = presets::principally_polarized_abelian_surface();
    const NSClass xi({2});
    auto cd = build_chain_cover(p, base, xi, generic_markers(p, p.s()));
    auto prediction = predict_generic_automorphisms(cd);
    r.predicted_order = prediction.order;
    r.predicted_factors = prediction.invariant_factors;
    r.K2_printed = chain_family_chern_displayed(p.chain(), base, xi).K_squared;
    r.K2_pullback = *canonical_data(cd).K_squared;
    r.K2_quoted = Rational(16 * (n - 1) * (n - 1));
    const Rational order(r.predicted_order);
    r.bound_printed = order > r.K2_printed / 16;
    r.bound_pullback = order > r.K2_pullback / 16;
    r.bound_quoted = order > r.K2_quoted / 16;
    return r;
}

}  // namespace coverkit
