/**
 * Splitting type of the tangent bundle T_X on the invariant curves of a
 * smooth complete toric variety.
 *
 * On a maximal cone sigma the tangent bundle is a sum of toric line bundles
 * whose characters are the dual basis u_1..u_n of sigma's generators. Across a
 * wall tau = sigma ∩ sigma' the characters pair up as (u_i, u'_i) with
 * u_i - u'_i in tau-perp, and the restriction to the curve C_tau is
 * O(a_1) + ... + O(a_n) where u_i = u'_i + a_i u_n. The same integers
 * appear as the coefficients of the wall relation
 * b_1 v_1 + ... + b_{n-1} v_{n-1} + v_n + v'_n = 0; both routes are computed
 * and cross-checked.
 */

#ifndef TORIC_TANGENT_SPLITTING_HPP
#define TORIC_TANGENT_SPLITTING_HPP

#include <toric/error.hpp>
#include <toric/fan.hpp>
#include <toric/lattice.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace toric {

struct AssociatedCharacters {
    ConeIndex cone = 0;
    std::vector<LatticeVector> characters;
};

struct WallRelation {
    Wall wall;
    std::vector<Integer> coefficients; // b_1..b_{n-1}, aligned with wall.shared_rays
};

struct SplittingSummand {
    LatticeVector u;
    LatticeVector u_prime;
    Integer degree; // a_i
};

struct SplittingType {
    Wall wall;
    LatticeVector distinguished; // u_n, positive on side a
    std::vector<SplittingSummand> summands; // positional: shared rays first, then the opposite ray

    /// The integers a_i, sorted ascending.
    std::vector<Integer> multiset() const
    {
        std::vector<Integer> out;
        out.reserve(summands.size());
        for (const auto& s : summands) {
            out.push_back(s.degree);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    Integer min_degree() const
    {
        return multiset().front();
    }
};

enum class Positivity { Ample, NefNotAmple, NotNef };

inline const char* to_string(Positivity p)
{
    switch (p) {
    case Positivity::Ample:
        return "Ample";
    case Positivity::NefNotAmple:
        return "NefNotAmple";
    case Positivity::NotNef:
        return "NotNef";
    }
    return "?";
}

struct PositivityClass {
    Positivity verdict = Positivity::Ample;
    std::optional<Wall> witness; // empty for Ample
    std::vector<SplittingType> splittings; // one per wall, in enumerate_walls order
};

inline AssociatedCharacters associated_characters(const Fan& fan, ConeIndex cone)
{
    const auto gens = fan.generators(cone);
    return {cone, dual_basis(gens)};
}

namespace detail {

/// Generators of one side of a wall: shared rays in wall order, then the opposite ray.
inline std::vector<LatticeVector> aligned_generators(const Fan& fan, const Wall& wall, bool side_a)
{
    std::vector<LatticeVector> gens = gather(fan.rays(), wall.shared_rays);
    gens.push_back(fan.ray(side_a ? wall.opposite_a : wall.opposite_b));
    return gens;
}

} // namespace detail

/// Expands v'_n in the basis of side a. Smoothness across the wall forces the
/// v_n coefficient to be -1; the remaining coefficients are -b_i.
inline WallRelation wall_relation(const Fan& fan, const Wall& wall)
{
    const auto basis = detail::aligned_generators(fan, wall, true);
    const LatticeVector x = solve_unimodular(IntegerMatrix::from_columns(basis), fan.ray(wall.opposite_b));
    const std::size_t n = fan.dim();
    if (x[n - 1] != -1) {
        throw InternalError("wall not smooth: opposite ray has coefficient " + x[n - 1].str() + ", expected -1");
    }
    WallRelation relation{wall, {}};
    for (std::size_t i = 0; i + 1 < n; ++i) {
        relation.coefficients.push_back(-x[i]);
    }
    return relation;
}

inline SplittingType splitting_type(const Fan& fan, const Wall& wall)
{
    const std::size_t n = fan.dim();
    const auto gens_a = detail::aligned_generators(fan, wall, true);
    const auto gens_b = detail::aligned_generators(fan, wall, false);
    const auto u = dual_basis(gens_a);
    const auto u_prime = dual_basis(gens_b);
    const LatticeVector& u_n = u[n - 1];
    const LatticeVector& v_n = gens_a[n - 1];

    SplittingType result{wall, u_n, {}};
    for (std::size_t i = 0; i < n; ++i) {
        const LatticeVector diff = u[i] - u_prime[i];
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (pairing(diff, gens_a[k]) != 0) {
                throw InternalError("character pair " + std::to_string(i) + " is not matched in tau-perp");
            }
        }
        // <u_n, v_n> = 1, so the multiple of u_n is read off against v_n.
        Integer a = pairing(diff, v_n);
        if (a * u_n != diff) {
            throw InternalError("character difference is not a multiple of the distinguished character");
        }
        result.summands.push_back({u[i], u_prime[i], std::move(a)});
    }
    if (result.summands.back().degree != 2 || result.summands.back().u_prime != -u_n) {
        throw InternalError("distinguished summand does not have degree 2");
    }
    const WallRelation relation = wall_relation(fan, wall);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (relation.coefficients[i] != result.summands[i].degree) {
            throw InternalError("splitting degree " + result.summands[i].degree.str() +
                                " disagrees with wall relation coefficient " + relation.coefficients[i].str());
        }
    }
    return result;
}

/// Curve criterion: ample (nef) iff every wall's splitting is positive
/// (non-negative). The witness is the first offending wall.
inline PositivityClass classify_tangent(const Fan& fan)
{
    PositivityClass result;
    std::optional<Wall> first_zero;
    std::optional<Wall> first_negative;
    for (const Wall& wall : enumerate_walls(fan)) {
        SplittingType split = splitting_type(fan, wall);
        const Integer lowest = split.min_degree();
        if (lowest < 0 && !first_negative) {
            first_negative = wall;
        }
        if (lowest == 0 && !first_zero) {
            first_zero = wall;
        }
        result.splittings.push_back(std::move(split));
    }
    if (first_negative) {
        result.verdict = Positivity::NotNef;
        result.witness = first_negative;
    } else if (first_zero) {
        result.verdict = Positivity::NefNotAmple;
        result.witness = first_zero;
    }
    return result;
}

} // namespace toric

#endif
