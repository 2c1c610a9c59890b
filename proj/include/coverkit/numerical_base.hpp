#pragma once

#include "coverkit/integer_matrix.hpp"
#include "coverkit/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coverkit {

class BaseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A class in NS(Y) (Scalar = int64) or NS(Y) tensor Q (Scalar = Rational), in lattice coordinates.
template <typename Scalar>
struct DivisorClass {
    std::vector<Scalar> coords;

    DivisorClass() = default;
    explicit DivisorClass(std::vector<Scalar> c) : coords(std::move(c)) {}

    static DivisorClass zero(std::size_t rank) { return DivisorClass(std::vector<Scalar>(rank, Scalar(0))); }

    std::size_t rank() const { return coords.size(); }
    bool is_zero() const
    {
        return std::all_of(coords.begin(), coords.end(), [](const Scalar& x) { return x == Scalar(0); });
    }

    DivisorClass& operator+=(const DivisorClass& o)
    {
        require_same_rank(o);
        for (std::size_t k = 0; k < coords.size(); ++k) coords[k] += o.coords[k];
        return *this;
    }
    DivisorClass& operator-=(const DivisorClass& o)
    {
        require_same_rank(o);
        for (std::size_t k = 0; k < coords.size(); ++k) coords[k] -= o.coords[k];
        return *this;
    }
    DivisorClass& operator*=(const Scalar& s)
    {
        for (auto& x : coords) x *= s;
        return *this;
    }
    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(const Scalar& s, DivisorClass a) { return a *= s; }
    friend DivisorClass operator-(DivisorClass a) { return a *= Scalar(-1); }
    bool operator==(const DivisorClass&) const = default;

private:
    void require_same_rank(const DivisorClass& o) const
    {
        if (o.coords.size() != coords.size()) throw BaseError("classes live in lattices of different rank");
    }
};

using NSClass = DivisorClass<std::int64_t>;
using QClass = DivisorClass<Rational>;

inline QClass to_rational(const NSClass& c)
{
    std::vector<Rational> out;
    out.reserve(c.rank());
    for (auto x : c.coords) out.emplace_back(x);
    return QClass(std::move(out));
}

/// Element of the free module of formal Pic^0 symbols; zero means the trivial bundle.
struct Pic0Marker {
    std::vector<std::int64_t> coords;

    static Pic0Marker zero(std::size_t rank) { return Pic0Marker{std::vector<std::int64_t>(rank, 0)}; }
    bool is_zero() const
    {
        return std::all_of(coords.begin(), coords.end(), [](std::int64_t x) { return x == 0; });
    }
    Pic0Marker& axpy(std::int64_t factor, const Pic0Marker& o)
    {
        if (coords.size() < o.coords.size()) coords.resize(o.coords.size(), 0);
        for (std::size_t k = 0; k < o.coords.size(); ++k) coords[k] += factor * o.coords[k];
        return *this;
    }
    friend Pic0Marker operator-(Pic0Marker a, const Pic0Marker& b) { return a.axpy(-1, b); }
    friend Pic0Marker operator+(Pic0Marker a, const Pic0Marker& b) { return a.axpy(1, b); }
    bool operator==(const Pic0Marker& o) const { return (*this - o).is_zero(); }
};

/// Numerical model of a smooth projective base Y: NS(Y) with its intersection form,
/// the canonical class and the handful of numerical invariants the cover computations use.
///
/// For dim != 2 the form is only used as a degree pairing against the ample test classes.
struct NumericalBase {
    std::string name;
    int dim = 2;
    IntMatrix form;                     ///< rho x rho, symmetric
    NSClass canonical;                  ///< K_Y
    std::int64_t irregularity = 0;      ///< q(Y)
    std::int64_t chi_O = 1;             ///< chi(O_Y)
    std::int64_t euler_number = 0;      ///< e(Y) = c_2(Y) for surfaces
    std::vector<NSClass> ample_tests;   ///< positivity oracle

    std::size_t ns_rank() const { return form.rows(); }
    bool is_surface() const { return dim == 2; }
};

template <typename Scalar>
Scalar intersect(const NumericalBase& base, const DivisorClass<Scalar>& a, const DivisorClass<Scalar>& b)
{
    const auto rho = base.ns_rank();
    if (a.rank() != rho || b.rank() != rho) throw BaseError("class rank does not match the Neron-Severi rank");
    Scalar total(0);
    for (std::size_t r = 0; r < rho; ++r)
        for (std::size_t c = 0; c < rho; ++c)
            if (base.form(r, c) != 0) total += a.coords[r] * Scalar(base.form(r, c)) * b.coords[c];
    return total;
}

inline void validate_base(const NumericalBase& base)
{
    if (base.dim < 1) throw BaseError("dimension must be >= 1");
    if (base.ns_rank() < 1) throw BaseError("Neron-Severi rank must be >= 1");
    if (!base.form.is_symmetric()) throw BaseError("intersection form must be symmetric");
    if (base.canonical.rank() != base.ns_rank()) throw BaseError("canonical class has wrong rank");
    if (base.irregularity < 0) throw BaseError("irregularity must be >= 0");
    if (base.ample_tests.empty()) throw BaseError("at least one ample test class is required");
    for (const auto& t : base.ample_tests)
        if (t.rank() != base.ns_rank()) throw BaseError("ample test class has wrong rank");
    if (base.is_surface()) {
        auto k2 = intersect(base, base.canonical, base.canonical);
        if (12 * base.chi_O != k2 + base.euler_number)
            throw BaseError("Noether's formula 12 chi(O) = K^2 + e fails for base '" + base.name + "'");
    }
}

namespace presets {

inline NumericalBase projective_plane()
{
    NumericalBase b;
    b.name = "P2";
    b.form = IntMatrix(1, 1, {1});
    b.canonical = NSClass({-3});
    b.irregularity = 0;
    b.chi_O = 1;
    b.euler_number = 3;
    b.ample_tests = {NSClass({1})};
    return b;
}

/// Basis: the two rulings f_1, f_2.
inline NumericalBase quadric_surface()
{
    NumericalBase b;
    b.name = "P1xP1";
    b.form = IntMatrix(2, 2, {0, 1, 1, 0});
    b.canonical = NSClass({-2, -2});
    b.irregularity = 0;
    b.chi_O = 1;
    b.euler_number = 4;
    b.ample_tests = {NSClass({1, 0}), NSClass({0, 1})};
    return b;
}

/// Principally polarized abelian surface with NS = Z Theta, Theta^2 = 2.
inline NumericalBase principally_polarized_abelian_surface()
{
    NumericalBase b;
    b.name = "abelian_pp";
    b.form = IntMatrix(1, 1, {2});
    b.canonical = NSClass({0});
    b.irregularity = 2;
    b.chi_O = 0;
    b.euler_number = 0;
    b.ample_tests = {NSClass({1})};
    return b;
}

/// C x C for a generic curve of genus g, restricted to the span of the two fibre classes.
inline NumericalBase curve_product(std::int64_t genus = 2)
{
    if (genus < 0) throw BaseError("genus must be >= 0");
    NumericalBase b;
    b.name = "curve_product";
    b.form = IntMatrix(2, 2, {0, 1, 1, 0});
    b.canonical = NSClass({2 * genus - 2, 2 * genus - 2});
    b.irregularity = 2 * genus;
    b.chi_O = (genus - 1) * (genus - 1);
    b.euler_number = (2 - 2 * genus) * (2 - 2 * genus);
    b.ample_tests = {NSClass({1, 0}), NSClass({0, 1})};
    return b;
}

/// A smooth curve of genus g; NS = Z[point].
inline NumericalBase curve(std::int64_t genus)
{
    if (genus < 0) throw BaseError("genus must be >= 0");
    NumericalBase b;
    b.name = "curve";
    b.dim = 1;
    b.form = IntMatrix(1, 1, {1});
    b.canonical = NSClass({2 * genus - 2});
    b.irregularity = genus;
    b.chi_O = 1 - genus;
    b.euler_number = 2 - 2 * genus;
    b.ample_tests = {NSClass({1})};
    return b;
}

}  // namespace presets

/// True iff (a - margin) pairs strictly positively with every ample test class and,
/// on a surface, has positive self-intersection.
template <typename Scalar>
bool is_sufficiently_ample(const NumericalBase& base, const DivisorClass<Scalar>& a, const DivisorClass<Scalar>& margin)
{
    const auto diff = a - margin;
    for (const auto& t : base.ample_tests) {
        DivisorClass<Scalar> test;
        for (auto x : t.coords) test.coords.push_back(Scalar(x));
        if (!(intersect(base, diff, test) > Scalar(0))) return false;
    }
    if (base.is_surface() && !(intersect(base, diff, diff) > Scalar(0))) return false;
    return true;
}

template <typename Scalar>
bool is_sufficiently_ample(const NumericalBase& base, const DivisorClass<Scalar>& a)
{
    return is_sufficiently_ample(base, a, DivisorClass<Scalar>::zero(a.rank()));
}

/// Nonnegative against every test class (and nonnegative square on surfaces).
template <typename Scalar>
bool is_nef_proxy(const NumericalBase& base, const DivisorClass<Scalar>& a)
{
    for (const auto& t : base.ample_tests) {
        DivisorClass<Scalar> test;
        for (auto x : t.coords) test.coords.push_back(Scalar(x));
        if (intersect(base, a, test) < Scalar(0)) return false;
    }
    return !base.is_surface() || !(intersect(base, a, a) < Scalar(0));
}

/// chi(L) = chi(O_Y) + L.(L - K_Y)/2 on a surface (no vanishing assumed).
inline std::int64_t riemann_roch_chi(const NumericalBase& base, const NSClass& L)
{
    if (!base.is_surface()) throw BaseError("Riemann-Roch is only modelled on surfaces");
    auto twice = intersect(base, L, L - base.canonical);
    if (twice % 2 != 0) throw BaseError("L.(L-K) is odd: intersection form and canonical class are inconsistent");
    return base.chi_O + twice / 2;
}

/// h^0(L), or nullopt when the numerical data cannot decide it.
///
/// Degree-zero classes: h^0 = 1 exactly when the Pic^0 marker is trivial. Classes with
/// L - K_Y sufficiently ample: Riemann-Roch with vanishing of higher cohomology. Classes
/// pairing negatively with a test class: 0.
inline std::optional<std::int64_t> riemann_roch_h0(const NumericalBase& base, const NSClass& L,
                                                   const Pic0Marker& marker = {})
{
    if (L.is_zero()) return marker.is_zero() ? 1 : 0;
    for (const auto& t : base.ample_tests)
        if (intersect(base, L, t) < 0) return 0;
    if (base.is_surface() && is_sufficiently_ample(base, L, base.canonical)) return riemann_roch_chi(base, L);
    if (base.dim == 1 && is_sufficiently_ample(base, L, base.canonical))
        return intersect(base, L, NSClass({1})) + base.chi_O;
    return std::nullopt;
}

/// h^1(L) when numerically determined: 0 under the vanishing regime, q(Y) for the trivial bundle.
inline std::optional<std::int64_t> h1_if_known(const NumericalBase& base, const NSClass& L, const Pic0Marker& marker = {})
{
    if (L.is_zero()) return marker.is_zero() ? base.irregularity : 0;
    if (base.dim >= 1 && is_sufficiently_ample(base, L, base.canonical)) return 0;
    return std::nullopt;
}

}  // namespace coverkit
