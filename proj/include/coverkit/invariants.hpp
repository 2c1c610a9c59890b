#pragma once

#include "coverkit/building_data.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coverkit {

struct CanonicalData {
    QClass pullback_class;            ///< K_Y + sum_i (1 - 1/m_i) xi_i; pulls back to K_X
    NSClass class_times_order;        ///< #G times the above, always integral
    std::optional<Rational> K_squared;  ///< surfaces only: #G * (pullback class)^2
    bool canonical_ample = false;     ///< pullback class sufficiently ample (general type, K_X ample)
};

inline CanonicalData canonical_data(const CoverData& cd)
{
    CanonicalData out;
    out.pullback_class = to_rational(cd.base.canonical);
    for (std::size_t i = 0; i < cd.inertia.size(); ++i)
        out.pullback_class += make_rational(cd.inertia[i].order - 1, cd.inertia[i].order) * to_rational(cd.branch[i]);
    const Rational order(cd.group.order());
    for (const auto& x : out.pullback_class.coords) out.class_times_order.coords.push_back(to_int64(order * x));
    if (cd.base.is_surface()) out.K_squared = order * intersect(cd.base, out.pullback_class, out.pullback_class);
    out.canonical_ample = is_sufficiently_ample(cd.base, out.pullback_class);
    return out;
}

/// One locally closed piece of Y with its Euler number and the number of points of X over each point.
struct EulerStratum {
    std::string label;
    Rational euler;
    std::int64_t preimage_count = 0;
};

struct EulerReport {
    std::vector<EulerStratum> strata;
    Rational euler_number;
};

struct EulerInputs {
    std::map<std::size_t, std::int64_t> branch_euler;  ///< e(D_i); default -xi_i.(xi_i + K_Y)
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> pair_points;  ///< #(D_i cap D_j); default xi_i.xi_j
};

class ModelLimitError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// e(X) by additivity over the strata Y - union D_i, D_i minus the double points, and the double points.
///
/// A point of Y is covered by #G / #(local inertia) points; over a double point the local inertia
/// is the subgroup generated by H_i and H_j. Pairs outside the intersection pattern do not meet.
inline EulerReport euler_stratified(const CoverData& cd, const EulerInputs& inputs = {})
{
    if (!cd.base.is_surface()) throw ModelLimitError("Euler stratification is implemented for surfaces only");
    for (const auto& subset : cd.intersection_pattern)
        if (subset.size() > 2) throw ModelLimitError("triple points in the intersection pattern are outside the model");

    const std::size_t k = cd.inertia.size();
    auto meets = [&](std::size_t a, std::size_t b) {
        for (const auto& subset : cd.intersection_pattern)
            if (subset.size() == 2 && ((subset[0] == a && subset[1] == b) || (subset[0] == b && subset[1] == a)))
                return true;
        return false;
    };

    std::vector<std::int64_t> e_branch(k);
    for (std::size_t i = 0; i < k; ++i) {
        auto it = inputs.branch_euler.find(i);
        e_branch[i] = it != inputs.branch_euler.end()
                          ? it->second
                          : -intersect(cd.base, cd.branch[i], cd.branch[i] + cd.base.canonical);
    }
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> points;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            auto it = inputs.pair_points.find({a, b});
            std::int64_t value = 0;
            if (it != inputs.pair_points.end()) value = it->second;
            else if (meets(a, b)) value = intersect(cd.base, cd.branch[a], cd.branch[b]);
            if (value != 0 && !meets(a, b))
                throw ModelLimitError("point count given for a pair outside the intersection pattern");
            points[{a, b}] = value;
        }

    EulerReport report;
    const auto order = cd.group.order();
    std::int64_t open_part = cd.base.euler_number;
    for (std::size_t i = 0; i < k; ++i) open_part -= e_branch[i];
    for (const auto& [pair, count] : points) open_part += count;
    report.strata.push_back({"Y minus branch locus", Rational(open_part), order});

    for (std::size_t i = 0; i < k; ++i) {
        std::int64_t e = e_branch[i];
        for (const auto& [pair, count] : points)
            if (pair.first == i || pair.second == i) e -= count;
        report.strata.push_back({"D_" + std::to_string(i + 1) + " minus double points", Rational(e),
                                 order / cd.inertia[i].order});
    }
    for (const auto& [pair, count] : points) {
        if (count == 0) continue;
        auto local = subgroup_order(cd.group, {cd.inertia[pair.first].generator, cd.inertia[pair.second].generator});
        report.strata.push_back({"D_" + std::to_string(pair.first + 1) + " cap D_" + std::to_string(pair.second + 1),
                                 Rational(count), order / local});
    }
    report.euler_number = 0;
    for (const auto& s : report.strata) report.euler_number += s.euler * Rational(s.preimage_count);
    return report;
}

/// chi(O_X) = sum over characters of chi(L_chi^{-1}), each by Riemann-Roch on Y.
inline Rational chi_from_eigensheaves(const CoverData& cd)
{
    Rational total = 0;
    for (const auto& chi : cd.group.characters()) total += Rational(riemann_roch_chi(cd.base, -derive_L_chi(cd, chi)));
    return total;
}

struct CoverInvariants {
    CanonicalData canonical;
    std::optional<EulerReport> euler;
    std::optional<Rational> chi_OX;             ///< from Noether: (K^2 + e) / 12
    std::optional<Rational> chi_OX_eigensheaves;  ///< cross-check
    std::optional<std::int64_t> genus;          ///< curve bases
    bool general_type = false;
};

/// Chern numbers of the chain family d_1 | ... | d_s with one branch class on all s + 1 divisors.
struct ChainChern {
    Rational K_squared;
    Rational c2;
};

/// Evaluates the printed Chern number formulas for the d_1 | ... | d_s family with branch class xi
/// on every divisor (taken literally, including their coefficients).
inline ChainChern chain_family_chern_displayed(const std::vector<std::int64_t>& d_chain, const NumericalBase& base,
                                                       const NSClass& xi)
{
    if (!base.is_surface()) throw BaseError("Chern numbers need a surface base");
    const std::int64_t s = static_cast<std::int64_t>(d_chain.size());
    std::vector<std::int64_t> d{d_chain.back()};
    d.insert(d.end(), d_chain.begin(), d_chain.end());
    std::int64_t order = 1;
    for (auto x : d_chain) order *= x;

    Rational inverse_sum = 0;
    for (auto x : d) inverse_sum += make_rational(1, x);
    Rational pair_sum = 0;
    for (std::size_t a = 0; a < d.size(); ++a)
        for (std::size_t b = a + 1; b < d.size(); ++b) pair_sum += make_rational(1, d[a] * d[b]);

    const auto K = to_rational(base.canonical);
    const auto X = to_rational(xi);
    const auto cls = K + (Rational(s) - inverse_sum) * X;
    const Rational binom((s + 2) * (s + 1) / 2);

    ChainChern out;
    out.K_squared = Rational(order) * intersect(base, cls, cls);
    out.c2 = Rational(order) * (Rational(base.euler_number) - (Rational(s + 1) - inverse_sum) * intersect(base, X, K) +
                                (binom + inverse_sum + pair_sum) * intersect(base, X, X));
    return out;
}

class InvalidConfiguration : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Riemann-Hurwitz: 2 g_X - 2 = #G (2 g_Y - 2 + sum_i b_i (1 - 1/m_i)).
inline std::int64_t hurwitz_genus(std::int64_t genus_Y, const FinAbGroup& group, const std::vector<InertiaDatum>& inertia,
                                  const std::vector<std::int64_t>& branch_point_counts)
{
    if (genus_Y < 0) throw InvalidConfiguration("base genus must be >= 0");
    if (branch_point_counts.size() != inertia.size()) throw InvalidConfiguration("one branch point count per inertia datum");
    Rational bracket(2 * genus_Y - 2);
    for (std::size_t i = 0; i < inertia.size(); ++i) {
        if (branch_point_counts[i] < 0) throw InvalidConfiguration("branch point counts must be >= 0");
        bracket += Rational(branch_point_counts[i]) * make_rational(inertia[i].order - 1, inertia[i].order);
    }
    const Rational twice_minus_two = Rational(group.order()) * bracket;
    const Rational genus = (twice_minus_two + 2) / 2;
    if (!is_integer(genus) || genus < 0) throw InvalidConfiguration("Riemann-Hurwitz gives non-integral genus " + to_string(genus));
    return to_int64(genus);
}

inline CoverInvariants cover_invariants(const CoverData& cd, const EulerInputs& inputs = {})
{
    CoverInvariants out;
    out.canonical = canonical_data(cd);
    out.general_type = out.canonical.canonical_ample;
    if (cd.base.is_surface()) {
        bool triples = false;
        for (const auto& s : cd.intersection_pattern) triples = triples || s.size() > 2;
        if (!triples) {
            out.euler = euler_stratified(cd, inputs);
            out.chi_OX = (*out.canonical.K_squared + out.euler->euler_number) / 12;
        }
        out.chi_OX_eigensheaves = chi_from_eigensheaves(cd);
    } else if (cd.base.dim == 1) {
        std::vector<std::int64_t> counts;
        for (const auto& b : cd.branch) counts.push_back(b.coords.at(0));
        std::int64_t genus_Y = 1 - cd.base.chi_O;
        out.genus = hurwitz_genus(genus_Y, cd.group, cd.inertia, counts);
    }
    return out;
}

}  // namespace coverkit
