#include "coverkit/chain_family.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace coverkit;

namespace {

const NumericalBase abelian = presets::principally_polarized_abelian_surface();

std::vector<std::int64_t> orders(const std::vector<ComponentClass>& cls)
{
    std::vector<std::int64_t> out;
    for (const auto& c : cls) out.push_back(c.predicted.order);
    return out;
}

}  // namespace

TEST(ChainFamily, InertiaAndClosedFormRTable)
{
    for (auto d : std::vector<std::vector<std::int64_t>>{{3, 3}, {2, 4}, {2, 2, 4}, {5}, {2, 6, 12}}) {
        ChainParams p(d);
        auto I = p.inertia();
        ASSERT_EQ(I.size(), p.s() + 1);
        EXPECT_TRUE(surjectivity_check(p.group(), I));
        for (std::size_t i = 0; i <= p.s(); ++i)
            for (std::size_t j = 1; j <= p.s(); ++j) {
                oracle::Vec dual(p.s(), 0);
                dual[j - 1] = 1;
                EXPECT_EQ(p.r_table(i, j), oracle::r_by_search(d, I[i].generator.coords, I[i].order, dual))
                    << describe_group(d) << " i=" << i << " j=" << j;
            }
    }
}

TEST(ChainFamily, NChiIsCeiling)
{
    ChainParams p({2, 4});
    // b = (2, 1), d_0 = 4
    EXPECT_EQ(n_chi(p, p.group().character({0, 0})), 0);
    EXPECT_EQ(n_chi(p, p.group().character({1, 0})), 1);
    EXPECT_EQ(n_chi(p, p.group().character({1, 3})), 2);
    EXPECT_EQ(n_chi(p, p.group().character({0, 3})), 1);
}

TEST(ChainFamily, ChainCoverSatisfiesRelations)
{
    ChainParams p({2, 2, 4});
    auto cd = build_chain_cover(p, abelian, NSClass({2}), generic_markers(p, 3));
    EXPECT_FALSE(check_fundamental_relations(cd).has_value());
    // L_chi class is N_chi xi
    for (const auto& chi : p.group().characters())
        EXPECT_EQ(derive_L_chi(cd, chi), NSClass({2 * n_chi(p, chi)})) << to_string(chi.exponents);
    EXPECT_THROW(build_chain_cover(p, abelian, NSClass({0})), CoverError);
}

TEST(ChainFamily, ThreeByThreeGivesOneThreeNine)
{
    ChainParams p({3, 3});
    auto cls = classify_components(p, abelian, NSClass({2}));
    EXPECT_EQ(orders(cls), (std::vector<std::int64_t>{1, 3, 9}));
    EXPECT_EQ(cls[1].predicted.invariant_factors, (std::vector<std::int64_t>{3}));
    EXPECT_EQ(cls[2].predicted.invariant_factors, (std::vector<std::int64_t>{3, 3}));
    for (const auto& c : cls) EXPECT_FALSE(c.fallback.has_value());
    EXPECT_EQ(cls[0].locus, "F_1..F_2 = 0");
    EXPECT_EQ(cls[1].locus, "F_1..F_1 generic, F_2..F_2 = 0");
}

TEST(ChainFamily, LongChainGivesDistinctGroups)
{
    ChainParams p({2, 2, 4, 4, 8});
    auto cls = classify_components(p, abelian, NSClass({2}));
    auto o = orders(cls);
    EXPECT_EQ(o, (std::vector<std::int64_t>{1, 2, 4, 16, 64, 512}));
    std::set<std::int64_t> distinct(o.begin(), o.end());
    EXPECT_EQ(distinct.size(), 6u);
}

TEST(ChainFamily, GenericComponentsMatchTheChainForOddOrders)
{
    for (auto d : std::vector<std::vector<std::int64_t>>{{3}, {3, 9}, {5, 5}, {3, 3, 3}}) {
        ChainParams p(d);
        auto cls = classify_components(p, abelian, NSClass({2}));
        for (const auto& c : cls) {
            auto expected = c.expected_factors;
            EXPECT_EQ(c.predicted.invariant_factors, expected) << describe_group(d) << " k=" << c.k;
        }
    }
}

TEST(ChainFamily, TwoByTwoProbeRecordsTheExtraCharacter)
{
    // The probe character chi_1 + chi_2 has N = 1 and (0, chi) in S; its marker part is F_1, nonzero on k = 1,
    // so the predictor only keeps the kernel of the other active characters.
    ChainParams p({2, 2});
    auto cls = classify_components(p, abelian, NSClass({2}));
    ASSERT_EQ(cls.size(), 3u);
    ASSERT_TRUE(cls[1].fallback.has_value());
    const auto& probe = *cls[1].fallback;
    EXPECT_EQ(probe.N, 1);
    EXPECT_TRUE(probe.zero_index_in_S);
    EXPECT_FALSE(probe.marker_zero);
    EXPECT_EQ(cls[0].predicted.order, 1);
    EXPECT_EQ(cls[2].predicted.order, 4);
}

TEST(ChainFamily, RequiresIrregularBase)
{
    EXPECT_THROW(classify_components(ChainParams({3, 3}), presets::projective_plane(), NSClass({3})), CoverError);
    EXPECT_THROW(ChainParams({}), GroupError);
    EXPECT_THROW(ChainParams({2, 3}), GroupError);
    // for d = (2) the data -e_1 and e_1 coincide
    EXPECT_THROW(build_chain_cover(ChainParams({2}), presets::quadric_surface(), NSClass({2, 2})), CoverError);
}

TEST(ChainFamily, ChernNumbersAgainstOrbifoldFormulas)
{
    // every branch divisor has class xi; K^2 = #G (K + ((s+1) - sum_{i=0..s} 1/d_i) xi)^2 and
    // e = #G (e(Y) - sum_i e(D_i)(1 - 1/d_i) + sum_{a<b} xi^2 (1 - 1/d_a - 1/d_b + 1/|<g_a, g_b>|))
    for (auto d : std::vector<std::vector<std::int64_t>>{{3}, {4}, {2, 2}, {3, 3}, {2, 4}, {2, 2, 2}}) {
        ChainParams p(d);
        auto base = presets::quadric_surface();
        const NSClass xi({2, 2});
        auto cd = build_chain_cover(p, base, xi);
        auto inv = cover_invariants(cd);
        const Rational order(p.group().order());
        const Rational xi2(intersect(base, xi, xi));
        const Rational xiK(intersect(base, xi, base.canonical));
        const Rational K2(intersect(base, base.canonical, base.canonical));

        Rational coefficient(static_cast<std::int64_t>(p.s() + 1));
        for (std::size_t i = 0; i <= p.s(); ++i) coefficient -= make_rational(1, p.d(i));
        EXPECT_EQ(*inv.canonical.K_squared, order * (K2 + 2 * coefficient * xiK + coefficient * coefficient * xi2));

        const Rational eD = -(xi2 + xiK);
        Rational e(base.euler_number);
        for (std::size_t i = 0; i <= p.s(); ++i) e -= eD * (Rational(1) - make_rational(1, p.d(i)));
        const auto I = p.inertia();
        for (std::size_t a = 0; a <= p.s(); ++a)
            for (std::size_t b = a + 1; b <= p.s(); ++b) {
                const auto local = oracle::closure_order(d, {I[a].generator.coords, I[b].generator.coords});
                e += xi2 * (Rational(1) - make_rational(1, p.d(a)) - make_rational(1, p.d(b)) + make_rational(1, local));
            }
        EXPECT_EQ(inv.euler->euler_number, order * e) << describe_group(d);
    }
}

TEST(ChainFamily, DisplayedKSquaredForSquareChains)
{
    // displayed expression over the abelian preset with xi = 2 Theta: n^2 (2 (2 - 3/n))^2 * 2 = 8 (2n - 3)^2
    for (std::int64_t n = 2; n <= 6; ++n)
        EXPECT_EQ(chain_family_chern_displayed({n, n}, abelian, NSClass({2})).K_squared, Rational(8 * (2 * n - 3) * (2 * n - 3)));
}

TEST(ChainFamily, GroupBoundReport)
{
    for (std::int64_t n = 2; n <= 6; ++n) {
        auto r = group_bound_report(n);
        EXPECT_EQ(r.predicted_order, n * n);
        EXPECT_EQ(r.predicted_factors, (std::vector<std::int64_t>{n, n}));
        EXPECT_EQ(r.K2_quoted, Rational(16 * (n - 1) * (n - 1)));
        EXPECT_TRUE(r.bound_quoted);
        // pullback: #G (2 (1 - 1/n) * 3 Theta)^2 with Theta^2 = 2
        const Rational c = Rational(6) * make_rational(n - 1, n);
        EXPECT_EQ(r.K2_pullback, Rational(n * n) * c * c * Rational(2));
    }
    EXPECT_THROW(group_bound_report(1), InvalidConfiguration);
}
