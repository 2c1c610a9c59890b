#pragma once

#include "coverkit/group.hpp"
#include "coverkit/numerical_base.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace coverkit {

class CoverError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical building data of a (G, I)-cover.
///
/// branch[i] is c_1(M_i) = c_1(O(D_i)); reduced[j] is c_1(L_j) for the dual basis character chi_j.
/// Markers, when present, record the Pic^0 part of M_i and L_j; all marker vectors live in one
/// free module. The divisor geometry (smoothness, transversality) is never verified here: the
/// intersection pattern only lists which sets of branch divisors are declared to meet.
struct CoverData {
    FinAbGroup group;
    std::vector<InertiaDatum> inertia;
    NumericalBase base;
    std::vector<NSClass> branch;
    std::vector<NSClass> reduced;
    std::vector<Pic0Marker> branch_markers;   ///< empty, or one per i
    std::vector<Pic0Marker> reduced_markers;  ///< empty, or one per j
    std::vector<std::vector<std::size_t>> intersection_pattern;

    bool has_markers() const { return !branch_markers.empty(); }

    Pic0Marker branch_marker(std::size_t i) const
    {
        return has_markers() ? branch_markers.at(i) : Pic0Marker{};
    }
    Pic0Marker reduced_marker(std::size_t j) const
    {
        return has_markers() ? reduced_markers.at(j) : Pic0Marker{};
    }
};

/// Subsets of I that generic divisors in ample classes meet in: all subsets of size min(dim, #I).
inline std::vector<std::vector<std::size_t>> default_intersection_pattern(std::size_t count, int dim)
{
    std::vector<std::vector<std::size_t>> out;
    const std::size_t size = std::min<std::size_t>(static_cast<std::size_t>(std::max(dim, 1)), count);
    if (size < 2) return out;
    std::vector<std::size_t> pick(size);
    auto recurse = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
        if (pos == size) {
            out.push_back(pick);
            return;
        }
        for (std::size_t k = start; k < count; ++k) {
            pick[pos] = k;
            self(self, pos + 1, k + 1);
        }
    };
    recurse(recurse, 0, 0);
    return out;
}

struct ReducedInfeasibility {
    std::size_t j = 0;          ///< failing dual-basis index
    NSClass numerator;          ///< sum_i rbar^i_j xi_i
    std::int64_t divisor = 0;   ///< n_j
    NSClass residue;            ///< numerator mod n_j, coordinatewise in [0, n_j)
};

struct ReducedSolution {
    std::vector<NSClass> reduced;
    /// Solutions in Pic over each point of prod Pic^{xi_i}: prod_j n_j^{2q}.
    BigInt torsion_candidates;
};

/// Solve n_j eta_j = sum_i rbar^i_j xi_i in NS(Y) (torsion ignored).
inline std::variant<ReducedSolution, ReducedInfeasibility> solve_reduced(const FinAbGroup& group,
                                                                        const std::vector<InertiaDatum>& inertia,
                                                                        const NumericalBase& base,
                                                                        const std::vector<NSClass>& branch)
{
    if (branch.size() != inertia.size()) throw CoverError("one branch class per inertia datum is required");
    if (!surjectivity_check(group, inertia)) throw CoverError("inertia data do not generate G (cover not totally ramified)");
    ReducedSolution solution;
    solution.torsion_candidates = 1;
    for (std::size_t j = 0; j < group.rank(); ++j) {
        const auto n = group.invariant_factors()[j];
        auto numerator = NSClass::zero(base.ns_rank());
        for (std::size_t i = 0; i < inertia.size(); ++i) numerator += reduced_coeff(group, inertia[i], j) * branch[i];
        NSClass quotient = numerator;
        NSClass residue = numerator;
        bool integral = true;
        for (std::size_t k = 0; k < numerator.rank(); ++k) {
            residue.coords[k] = ((numerator.coords[k] % n) + n) % n;
            if (residue.coords[k] != 0) integral = false;
            quotient.coords[k] = numerator.coords[k] / n;
        }
        if (!integral) return ReducedInfeasibility{j, numerator, n, residue};
        solution.reduced.push_back(quotient);
        for (std::int64_t e = 0; e < 2 * base.irregularity; ++e) solution.torsion_candidates *= n;
    }
    return solution;
}

/// First violated condition, or nullopt when the data satisfy the reduced relations and
/// total ramification.
inline std::optional<std::string> validation_error(const CoverData& cd)
{
    try {
        validate_base(cd.base);
    } catch (const BaseError& e) {
        return std::string(e.what());
    }
    const auto rho = cd.base.ns_rank();
    if (cd.branch.size() != cd.inertia.size()) return "one branch class per inertia datum is required";
    if (cd.reduced.size() != cd.group.rank()) return "one reduced class per invariant factor is required";
    for (const auto& c : cd.branch)
        if (c.rank() != rho) return "branch class has wrong rank";
    for (const auto& c : cd.reduced)
        if (c.rank() != rho) return "reduced class has wrong rank";
    for (const auto& i : cd.inertia) {
        try {
            cd.group.check(i.generator);
        } catch (const GroupError& e) {
            return std::string(e.what());
        }
        if (i.generator.is_zero() || i.order != cd.group.element_order(i.generator)) return "malformed inertia datum";
    }
    std::set<GroupElement> seen;
    for (const auto& i : cd.inertia)
        if (!seen.insert(i.generator).second) return "inertia data must be distinct";
    if (!surjectivity_check(cd.group, cd.inertia)) return "cover is not totally ramified: inertia subgroups do not generate G";
    if (cd.has_markers()) {
        if (cd.branch_markers.size() != cd.inertia.size() || cd.reduced_markers.size() != cd.group.rank())
            return "markers must be given for every branch and reduced class";
    }
    for (std::size_t j = 0; j < cd.group.rank(); ++j) {
        const auto n = cd.group.invariant_factors()[j];
        auto rhs = NSClass::zero(rho);
        Pic0Marker rhs_marker;
        for (std::size_t i = 0; i < cd.inertia.size(); ++i) {
            auto c = reduced_coeff(cd.group, cd.inertia[i], j);
            rhs += c * cd.branch[i];
            rhs_marker.axpy(c, cd.branch_marker(i));
        }
        if (!(n * cd.reduced[j] == rhs)) return "reduced relation fails for j = " + std::to_string(j + 1);
        Pic0Marker lhs_marker;
        lhs_marker.axpy(n, cd.reduced_marker(j));
        if (!(lhs_marker == rhs_marker)) return "marker relation fails for j = " + std::to_string(j + 1);
    }
    for (const auto& subset : cd.intersection_pattern)
        for (auto i : subset)
            if (i >= cd.inertia.size()) return "intersection pattern refers to an unknown branch index";
    return std::nullopt;
}

/// Validated CoverData; reduced classes are solved for when `reduced` is empty.
inline CoverData make_cover(FinAbGroup group, std::vector<InertiaDatum> inertia, NumericalBase base,
                            std::vector<NSClass> branch, std::vector<NSClass> reduced = {},
                            std::vector<Pic0Marker> branch_markers = {}, std::vector<Pic0Marker> reduced_markers = {},
                            std::optional<std::vector<std::vector<std::size_t>>> pattern = std::nullopt)
{
    if (reduced.empty() && group.rank() > 0) {
        auto solved = solve_reduced(group, inertia, base, branch);
        if (auto* bad = std::get_if<ReducedInfeasibility>(&solved))
            throw CoverError("reduced building data are not integral at j = " + std::to_string(bad->j + 1));
        reduced = std::get<ReducedSolution>(solved).reduced;
    }
    CoverData cd{std::move(group), std::move(inertia), std::move(base), std::move(branch), std::move(reduced),
                 std::move(branch_markers), std::move(reduced_markers), {}};
    cd.intersection_pattern = pattern ? *pattern : default_intersection_pattern(cd.inertia.size(), cd.base.dim);
    if (auto err = validation_error(cd)) throw CoverError(*err);
    return cd;
}

/// c_1(L_chi) = sum_j a_j eta_j - sum_i q^i_chi xi_i.
inline NSClass derive_L_chi(const CoverData& cd, const Character& chi)
{
    cd.group.check(chi);
    auto out = NSClass::zero(cd.base.ns_rank());
    for (std::size_t j = 0; j < cd.group.rank(); ++j) out += chi.exponents[j] * cd.reduced[j];
    for (std::size_t i = 0; i < cd.inertia.size(); ++i) out -= q_coeff(cd.group, cd.inertia[i], chi) * cd.branch[i];
    return out;
}

inline Pic0Marker derive_L_chi_marker(const CoverData& cd, const Character& chi)
{
    Pic0Marker out;
    if (!cd.has_markers()) return out;
    for (std::size_t j = 0; j < cd.group.rank(); ++j) out.axpy(chi.exponents[j], cd.reduced_marker(j));
    for (std::size_t i = 0; i < cd.inertia.size(); ++i)
        out.axpy(-q_coeff(cd.group, cd.inertia[i], chi), cd.branch_marker(i));
    return out;
}

struct RelationViolation {
    Character first;
    Character second;
};

/// Checks eta_chi + eta_chi' = eta_{chi chi'} + sum_i eps^i_{chi,chi'} xi_i (classes and markers)
/// for all pairs of nontrivial characters; returns the first violating pair.
inline std::optional<RelationViolation> check_fundamental_relations(const CoverData& cd)
{
    const auto chars = cd.group.characters();
    std::vector<NSClass> eta;
    std::vector<Pic0Marker> eta_marker;
    for (const auto& chi : chars) {
        eta.push_back(derive_L_chi(cd, chi));
        eta_marker.push_back(derive_L_chi_marker(cd, chi));
    }
    for (std::size_t a = 1; a < chars.size(); ++a)
        for (std::size_t b = a; b < chars.size(); ++b) {
            auto prod = cd.group.index_of(cd.group.multiply(chars[a], chars[b]));
            auto rhs = eta[prod];
            auto rhs_marker = eta_marker[prod];
            for (std::size_t i = 0; i < cd.inertia.size(); ++i) {
                auto e = eps_coeff(cd.group, cd.inertia[i], chars[a], chars[b]);
                rhs += e * cd.branch[i];
                rhs_marker.axpy(e, cd.branch_marker(i));
            }
            if (!(eta[a] + eta[b] == rhs) || !(eta_marker[a] + eta_marker[b] == rhs_marker))
                return RelationViolation{chars[a], chars[b]};
        }
    return std::nullopt;
}

struct SmoothnessEntry {
    std::vector<std::size_t> subset;
    std::int64_t product_of_orders = 1;
    std::int64_t generated_order = 1;
    bool injective = true;
};

struct SmoothnessReport {
    std::vector<SmoothnessEntry> entries;
    bool all_injective = true;
    /// Largest k such that some k branch divisors may share a point.
    std::size_t max_simultaneous = 0;
    std::string caveat = "divisor smoothness and normal crossings are user assertions and are not verified";
};

inline SmoothnessEntry audit_subset(const CoverData& cd, const std::vector<std::size_t>& subset)
{
    SmoothnessEntry entry;
    entry.subset = subset;
    std::vector<GroupElement> gens;
    for (auto i : subset) {
        entry.product_of_orders *= cd.inertia.at(i).order;
        gens.push_back(cd.inertia.at(i).generator);
    }
    entry.generated_order = subgroup_order(cd.group, gens);
    entry.injective = entry.product_of_orders == entry.generated_order;
    return entry;
}

inline SmoothnessReport smoothness_audit(const CoverData& cd)
{
    SmoothnessReport report;
    for (const auto& subset : cd.intersection_pattern) {
        report.entries.push_back(audit_subset(cd, subset));
        report.all_injective = report.all_injective && report.entries.back().injective;
    }
    const std::size_t k = cd.inertia.size();
    if (k <= 20) {
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
            std::vector<std::size_t> subset;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (std::uint32_t{1} << i)) subset.push_back(i);
            if (subset.size() > report.max_simultaneous && audit_subset(cd, subset).injective)
                report.max_simultaneous = subset.size();
        }
    }
    return report;
}

struct GenerationHypotheses {
    QClass M;                     ///< K_Y - (m-1) N H + sum_i (m_i - 1)/m_i xi_i
    bool M_sufficiently_ample = false;
    NSClass residual_system;      ///< xi_d - m N H
    bool residual_nef = false;    ///< necessary, not sufficient, for base-point-freeness
    bool plausible = false;
    std::string caveat = "base-point-freeness is checked only numerically (necessary, not sufficient)";
};

inline GenerationHypotheses generation_hypotheses(const CoverData& cd, const NSClass& hyperplane, std::int64_t N,
                                           std::size_t distinguished)
{
    if (distinguished >= cd.inertia.size()) throw CoverError("distinguished branch index out of range");
    if (N < 0) throw CoverError("N must be >= 0");
    const auto m = cd.inertia[distinguished].order;
    GenerationHypotheses report;
    report.M = to_rational(cd.base.canonical) - Rational((m - 1) * N) * to_rational(hyperplane);
    for (std::size_t i = 0; i < cd.inertia.size(); ++i)
        report.M += make_rational(cd.inertia[i].order - 1, cd.inertia[i].order) * to_rational(cd.branch[i]);
    report.M_sufficiently_ample = is_sufficiently_ample(cd.base, report.M);
    report.residual_system = cd.branch[distinguished] - (m * N) * hyperplane;
    report.residual_nef = is_nef_proxy(cd.base, report.residual_system);
    report.plausible = report.M_sufficiently_ample && report.residual_nef;
    return report;
}

}  // namespace coverkit
