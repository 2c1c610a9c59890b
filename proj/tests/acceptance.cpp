// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.

#include "coverkit/coverkit.hpp"
#include "coverkit/io.hpp"
#include "oracles.hpp"
#include "random_covers.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace coverkit;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

std::string read_file(const std::string& name)
{
    std::ifstream f(std::string(COVERKIT_FIXTURES) + "/" + name);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

CoverData load_cover(const std::string& name)
{
    return io::parse_cover(io::Json::parse(read_file(name))).cover;
}

CoverData simple_cyclic_plane(std::int64_t m, std::int64_t degree)
{
    FinAbGroup g({m});
    return make_cover(g, {make_inertia(g, g.element({1}))}, presets::projective_plane(), {NSClass({degree})});
}

Outcome ig_size()
{
    Outcome o;
    for (const auto& d : oracle::abelian_groups_up_to(64)) {
        FinAbGroup g(d);
        o.require(static_cast<std::int64_t>(enumerate_IG(g).size()) == g.order() - 1, describe_group(d));
    }
    return o;
}

Outcome cocycle()
{
    Outcome o;
    for (const auto& d : oracle::abelian_groups_up_to(36)) {
        if (d.empty()) continue;
        FinAbGroup g(d);
        const auto chars = g.characters();
        for (const auto& i : enumerate_IG(g))
            for (const auto& a : chars)
                for (const auto& b : chars) {
                    const auto ab = g.character(oracle::add(d, a.exponents, b.exponents));
                    o.require(r_coeff(g, i, a) + r_coeff(g, i, b) == r_coeff(g, i, ab) + i.order * eps_coeff(g, i, a, b),
                              describe_group(d));
                }
    }
    return o;
}

Outcome rank_of_r_matrix()
{
    Outcome o;
    for (int t = 0; t < 1000; ++t) {
        auto d = randcov::random_chain(6, 3);
        FinAbGroup g(d);
        auto gens = randcov::random_generating_set(d, static_cast<std::size_t>(oracle::uniform(0, 3)));
        auto inertia = randcov::to_inertia(g, gens);
        // independent rank of the r matrix, entries by search
        std::vector<oracle::Vec> rows;
        for (const auto& x : gens) {
            const auto m = oracle::order_by_iteration(d, x);
            oracle::Vec row;
            for (std::size_t j = 0; j < d.size(); ++j) {
                oracle::Vec dual(d.size(), 0);
                dual[j] = 1;
                row.push_back(oracle::r_by_search(d, x, m, dual));
            }
            rows.push_back(row);
        }
        o.require(rank_check(g, inertia) && oracle::rank_over_q(rows) == d.size(), describe_group(d));
    }
    return o;
}

Outcome fundamental_relations()
{
    Outcome o;
    int built = 0;
    while (built < 500) {
        auto d = randcov::random_chain(6, 3, 64);
        FinAbGroup g(d);
        auto inertia = randcov::to_inertia(g, randcov::random_generating_set(d, static_cast<std::size_t>(oracle::uniform(0, 2))));
        auto base = randcov::random_surface();
        std::vector<NSClass> branch;
        for (std::size_t i = 0; i < inertia.size(); ++i) branch.push_back(randcov::random_branch_class(base, g.exponent()));
        CoverData cd;
        try {
            cd = make_cover(g, inertia, base, branch);
        } catch (const CoverError&) {
            continue;
        }
        ++built;
        o.require(!check_fundamental_relations(cd).has_value(), describe_group(d) + " over " + base.name);
        // L_chi + L_chi' = L_chichi' + sum eps D_i, checked on random pairs with the search oracle
        const auto chars = g.characters();
        const auto& a = chars[static_cast<std::size_t>(oracle::uniform(0, g.order() - 1))];
        const auto& b = chars[static_cast<std::size_t>(oracle::uniform(0, g.order() - 1))];
        const auto ab = g.character(oracle::add(d, a.exponents, b.exponents));
        auto lhs = derive_L_chi(cd, a);
        lhs += derive_L_chi(cd, b);
        auto rhs = derive_L_chi(cd, ab);
        for (std::size_t i = 0; i < inertia.size(); ++i) {
            const auto& x = inertia[i].generator.coords;
            const auto m = inertia[i].order;
            const auto e = (oracle::r_by_search(d, x, m, a.exponents) + oracle::r_by_search(d, x, m, b.exponents) -
                            oracle::r_by_search(d, x, m, ab.exponents)) / m;
            auto term = branch[i];
            term *= e;
            rhs += term;
        }
        o.require(lhs == rhs, "oracle identity, " + describe_group(d));
    }
    return o;
}

Outcome hurwitz_example()
{
    Outcome o;
    FinAbGroup z3({3});
    auto g1 = make_inertia(z3, z3.element({1}));
    auto g2 = make_inertia(z3, z3.element({2}));
    // two points over each of the two inertia data: 4 branch points
    o.require(hurwitz_genus(0, z3, {g1, g2}, {2, 2}) == 2, "Z_3 with 4 points");
    o.require(load_cover("covers/genus_two_curve.json").base.dim == 1, "fixture is a curve");
    o.require(*cover_invariants(load_cover("covers/genus_two_curve.json")).genus == 2, "fixture genus");
    return o;
}

Outcome predictor()
{
    Outcome o;
    o.require(predict_generic_automorphisms(simple_cyclic_plane(2, 8)).order == 2, "double plane");
    for (std::int64_t m = 3; m <= 5; ++m)
        o.require(predict_generic_automorphisms(simple_cyclic_plane(m, 4 * m)).order == 1, "m = " + std::to_string(m));
    return o;
}

std::vector<std::int64_t> component_orders(std::vector<std::int64_t> d)
{
    std::vector<std::int64_t> out;
    for (const auto& c : classify_components(ChainParams(d), presets::principally_polarized_abelian_surface(), NSClass({2})))
        out.push_back(c.predicted.order);
    return out;
}

std::string join(const std::vector<std::int64_t>& v)
{
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

Outcome chain_components()
{
    Outcome o;
    auto three = component_orders({3, 3});
    o.require(three == std::vector<std::int64_t>{1, 3, 9}, "d = (3,3) gave " + join(three));
    auto two = component_orders({2, 2});
    o.require(two == std::vector<std::int64_t>{1, 2, 4}, "d = (2,2) gave " + join(two));
    return o;
}

Outcome long_chain()
{
    Outcome o;
    auto orders = component_orders({2, 2, 4, 4, 8});
    std::set<std::int64_t> distinct(orders.begin(), orders.end());
    o.require(orders.size() == 6 && distinct.size() == 6, "orders " + join(orders));
    return o;
}

Outcome noether()
{
    Outcome o;
    int done = 0;
    while (done < 100) {
        auto d = randcov::random_chain(6, 2, 16);
        auto gens = randcov::random_pairwise_injective(d);
        if (!gens) continue;
        FinAbGroup g(d);
        auto inertia = randcov::to_inertia(g, *gens);
        auto base = randcov::random_surface();
        std::vector<NSClass> branch;
        for (std::size_t i = 0; i < inertia.size(); ++i) branch.push_back(randcov::random_branch_class(base, g.exponent()));
        auto cd = make_cover(g, inertia, base, branch);
        auto can = canonical_data(cd);
        auto e = euler_stratified(cd);
        o.require(can.K_squared.has_value() &&
                      Rational(12) * chi_from_eigensheaves(cd) == *can.K_squared + e.euler_number,
                  describe_group(d) + " over " + base.name);
        ++done;
    }
    return o;
}

Outcome double_planes()
{
    Outcome o;
    auto octic = cover_invariants(load_cover("covers/octic_double_plane.json"));
    auto quartic = cover_invariants(load_cover("covers/quartic_double_plane.json"));
    const auto oo = oracle::double_plane(8), qo = oracle::double_plane(4);
    o.require(*octic.canonical.K_squared == 2 && oo.K_squared == 2, "octic K^2");
    o.require(octic.euler->euler_number == oo.euler && octic.chi_OX == oo.chi, "octic e, chi");
    o.require(quartic.euler->euler_number == 10 && qo.euler == 10, "quartic e");
    o.require(*quartic.canonical.K_squared == qo.K_squared && quartic.chi_OX == qo.chi, "quartic K^2, chi");
    return o;
}

Outcome group_bound()
{
    Outcome o;
    for (std::int64_t n = 2; n <= 6; ++n) {
        auto r = group_bound_report(n);
        o.require(r.predicted_order == n * n, "order, n = " + std::to_string(n));
        o.require(r.K2_quoted == Rational(16 * (n - 1) * (n - 1)) && r.bound_quoted &&
                      Rational(n * n) > r.K2_quoted / Rational(16),
                  "quoted bound, n = " + std::to_string(n));
    }
    return o;
}

Outcome traces()
{
    Outcome o;
    try {
        auto s = resolution::verify_all(12);
        o.require(s.orders_checked == 11 && s.traces == 22, "trace count");
    } catch (const std::exception& e) {
        o.require(false, e.what());
    }
    return o;
}

Outcome emitter()
{
    Outcome o;
    FinAbGroup z2({2}), z22({2, 2});
    o.require(emit(build_relation_system(z2, enumerate_IG(z2), true), Flavor::Plain) == read_file("emitter/z2_galois.txt"),
              "Z_2 fixture");
    o.require(emit(build_relation_system(z22, enumerate_IG(z22), true), Flavor::Plain) ==
                  read_file("emitter/z2x2_galois.txt"),
              "Z_2^2 fixture");
    for (const auto& d : oracle::abelian_groups_up_to(16)) {
        if (d.empty()) continue;
        FinAbGroup g(d);
        auto sys = build_relation_system(g, enumerate_IG(g), true);
        const auto chars = g.characters();
        for (const auto& r : sys.relations) {
            oracle::Vec target(d.size());
            for (std::size_t j = 0; j < d.size(); ++j)
                target[j] = (chars[r.first].exponents[j] + chars[r.second].exponents[j]) % d[j];
            for (const auto& [m, c] : r.value.terms()) {
                oracle::Vec deg(d.size(), 0);
                for (std::size_t v = 0; v < m.size(); ++v) {
                    const auto& var = sys.variables[v];
                    const std::int64_t sign = var.is_parameter ? -1 : 1;
                    for (std::size_t j = 0; j < d.size(); ++j)
                        deg[j] = ((deg[j] + sign * m[v] * chars[var.character_index].exponents[j]) % d[j] + d[j]) % d[j];
                }
                o.require(deg == target, "grading, " + describe_group(d));
            }
        }
    }
    return o;
}

Outcome cstar()
{
    Outcome o;
    for (int t = 0; t < 200; ++t) {
        auto d = randcov::random_chain(6, 3, 64);
        FinAbGroup g(d);
        auto inertia = randcov::to_inertia(g, randcov::random_generating_set(d, static_cast<std::size_t>(oracle::uniform(0, 2))));
        bool seen = false;
        for (const auto& w : cstar_weights(g, inertia)) {
            if (!w.entry.chi.is_trivial()) continue;
            for (std::size_t i = 0; i < inertia.size(); ++i)
                o.require(w.exponents[i] == (i == w.entry.i ? inertia[i].order : 0), describe_group(d));
            seen = true;
        }
        o.require(seen, "no trivial-character weight");
    }
    return o;
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"inertia data count #G - 1, order <= 64", ig_size},
        {"cocycle identity, #G <= 36", cocycle},
        {"rank s for 1000 random configurations", rank_of_r_matrix},
        {"fundamental relations on 500 random covers", fundamental_relations},
        {"Z_3 curve cover has genus 2", hurwitz_example},
        {"automorphism predictor on simple cyclic planes", predictor},
        {"component groups for d = (3,3) and (2,2)", chain_components},
        {"six distinct groups from a chain of length 5", long_chain},
        {"Noether formula on 100 random covers", noether},
        {"double plane invariants", double_planes},
        {"group bound report n = 2..6", group_bound},
        {"blow-up traces up to n = 12", traces},
        {"emitter fixtures and character grading", emitter},
        {"C* weights of trivial-character parameters", cstar},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << (k + 1) << ": " << criteria[k].first << " (" << ms << " ms)";
        if (!o.ok) std::cout << " -- " << o.detail;
        std::cout << "\n";
        failures += o.ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
