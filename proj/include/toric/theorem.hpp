/**
 * Instance checks of "ample tangent bundle implies projective space" and a
 * bounded census of smooth complete toric surfaces.
 */

#ifndef TORIC_THEOREM_HPP
#define TORIC_THEOREM_HPP

#include <toric/error.hpp>
#include <toric/fan.hpp>
#include <toric/lattice.hpp>
#include <toric/polytope.hpp>
#include <toric/tangent_splitting.hpp>

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace toric {

/// n+1 rays summing to zero, every n of them a basis, and the maximal cones
/// are exactly the n-subsets. This pins the fan of P^n up to GL(n, Z).
inline bool is_projective_space_fan(const Fan& fan)
{
    const std::size_t n = fan.dim();
    if (fan.rays().size() != n + 1 || fan.max_cones().size() != n + 1) {
        return false;
    }
    LatticeVector sum(n);
    for (const auto& r : fan.rays()) {
        sum += r;
    }
    if (!sum.is_zero()) {
        return false;
    }
    bool all_unimodular = true;
    std::set<RaySet> subsets;
    detail::for_each_subset(n + 1, n, [&](const std::vector<std::size_t>& pick) {
        const auto gens = detail::gather(fan.rays(), pick);
        all_unimodular = all_unimodular && is_unimodular(IntegerMatrix::from_columns(gens));
        subsets.insert(pick);
    });
    if (!all_unimodular) {
        return false;
    }
    std::set<RaySet> cones;
    for (const auto& c : fan.max_cones()) {
        cones.insert(detail::sorted(c));
    }
    return cones == subsets;
}

struct PolytopeChecks {
    DivisorCoefficients divisor;
    bool triangular = false;
    bool simplex = false;
};

struct TheoremReport {
    PositivityClass classification;
    bool is_pn = false;
    std::optional<PolytopeChecks> polytope_checks;
    std::string skipped_reason; // set when polytope_checks is empty
    bool pass = false;
};

/// Runs the curve criterion and, when T_X is ample, checks that the fan is
/// that of P^n and that the polytope of an ample divisor is a simplex whose
/// 2-faces are all triangles.
inline TheoremReport verify_theorem(const Fan& fan, std::optional<DivisorCoefficients> divisor = std::nullopt)
{
    if (!is_complete(fan)) {
        throw ValidationError("fan not complete");
    }
    TheoremReport report;
    report.classification = classify_tangent(fan);
    report.is_pn = is_projective_space_fan(fan);
    if (divisor && !is_divisor_ample(fan, *divisor).ample) {
        throw ValidationError("divisor not ample");
    }
    if (report.classification.verdict != Positivity::Ample) {
        report.skipped_reason = "tangent bundle not ample; implication holds vacuously";
        report.pass = true;
        return report;
    }
    if (!divisor) {
        const DivisorCoefficients minus_k = anticanonical(fan);
        if (is_divisor_ample(fan, minus_k).ample) {
            divisor = minus_k;
        } else {
            try {
                divisor = find_ample_divisor(fan);
            } catch (const ValidationError& e) {
                report.skipped_reason = e.what();
                report.pass = false;
                return report;
            }
        }
    }
    const LatticePolytope polytope = polytope_from_divisor(fan, *divisor);
    report.polytope_checks = PolytopeChecks{*divisor, all_two_faces_triangular(polytope).all_triangular,
                                            is_simplex(polytope)};
    report.pass = report.is_pn && report.polytope_checks->triangular && report.polytope_checks->simplex;
    return report;
}

/// Cyclic sequence of self-intersection numbers d_i of a smooth complete
/// toric surface, defined by v_{i-1} + v_{i+1} = -d_i v_i, reduced to its
/// lexicographically smallest rotation or reflection.
struct SurfaceCode {
    std::vector<Integer> d;

    friend bool operator==(const SurfaceCode&, const SurfaceCode&) = default;
    friend bool operator<(const SurfaceCode& a, const SurfaceCode& b)
    {
        return std::lexicographical_compare(a.d.begin(), a.d.end(), b.d.begin(), b.d.end());
    }

    std::string str() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < d.size(); ++i) {
            s += (i ? "," : "") + d[i].str();
        }
        return s + ")";
    }
};

namespace detail {

/// Ray indices of a complete 2D fan in cyclic order around the origin.
inline std::vector<RayIndex> cyclic_ray_order(const Fan& fan)
{
    const std::size_t m = fan.rays().size();
    std::vector<std::vector<RayIndex>> neighbours(m);
    for (const auto& cone : fan.max_cones()) {
        neighbours[cone[0]].push_back(cone[1]);
        neighbours[cone[1]].push_back(cone[0]);
    }
    std::vector<RayIndex> order{0};
    RayIndex previous = 0;
    RayIndex current = neighbours[0].at(0);
    while (current != 0) {
        if (order.size() > m || neighbours[current].size() != 2) {
            throw ValidationError("fan not complete: rays do not form a single cycle");
        }
        order.push_back(current);
        const RayIndex next = neighbours[current][0] == previous ? neighbours[current][1] : neighbours[current][0];
        previous = current;
        current = next;
    }
    if (order.size() != m) {
        throw ValidationError("fan not complete: rays do not form a single cycle");
    }
    return order;
}

inline SurfaceCode canonical_rotation(const std::vector<Integer>& cycle)
{
    const std::size_t m = cycle.size();
    std::optional<SurfaceCode> best;
    for (int reflect = 0; reflect < 2; ++reflect) {
        for (std::size_t start = 0; start < m; ++start) {
            SurfaceCode candidate;
            candidate.d.reserve(m);
            for (std::size_t k = 0; k < m; ++k) {
                const std::size_t i = reflect ? (start + m - k) % m : (start + k) % m;
                candidate.d.push_back(cycle[i]);
            }
            if (!best || candidate < *best) {
                best = std::move(candidate);
            }
        }
    }
    return *best;
}

/// Self-intersection numbers along a cyclically ordered ray list.
inline std::vector<Integer> self_intersections(const std::vector<LatticeVector>& cyclic_rays)
{
    const std::size_t m = cyclic_rays.size();
    std::vector<Integer> d;
    d.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const LatticeVector& v = cyclic_rays[i];
        const LatticeVector sum = cyclic_rays[(i + m - 1) % m] + cyclic_rays[(i + 1) % m];
        const std::size_t k = v[0] != 0 ? 0 : 1;
        const Integer di = -(sum[k] / v[k]);
        if (-di * v != sum) {
            throw InternalError("neighbouring rays are not related by an integer multiple");
        }
        d.push_back(di);
    }
    return d;
}

/// A 2D fan with rays in the given cyclic order and cones {i, i+1}.
inline Fan cyclic_surface_fan(std::vector<LatticeVector> rays)
{
    FanData data{2, std::move(rays), {}};
    const std::size_t m = data.rays.size();
    for (std::size_t i = 0; i < m; ++i) {
        data.max_cones.push_back({i, (i + 1) % m});
    }
    return Fan::build(std::move(data));
}

} // namespace detail

inline SurfaceCode canonical_surface_code(const Fan& fan)
{
    if (fan.dim() != 2) {
        throw ValidationError("surface codes are only defined in dimension 2");
    }
    if (!is_complete(fan)) {
        throw ValidationError("fan not complete");
    }
    const auto order = detail::cyclic_ray_order(fan);
    return detail::canonical_rotation(detail::self_intersections(detail::gather(fan.rays(), order)));
}

/// Rebuilds a fan from a code, starting from v_0 = (1,0), v_1 = (0,1).
inline Fan fan_from_surface_code(const SurfaceCode& code)
{
    const std::size_t m = code.d.size();
    if (m < 3) {
        throw ValidationError("a surface code needs at least 3 entries");
    }
    std::vector<LatticeVector> rays{{1, 0}, {0, 1}};
    for (std::size_t i = 1; i + 1 < m; ++i) {
        rays.push_back(-code.d[i] * rays[i] - rays[i - 1]);
    }
    const LatticeVector closes_first = -code.d[m - 1] * rays[m - 1] - rays[m - 2];
    const LatticeVector closes_second = -code.d[0] * rays[0] - rays[m - 1];
    if (!(closes_first == rays[0]) || !(closes_second == rays[1])) {
        throw ValidationError("code " + code.str() + " does not close up to a complete fan");
    }
    return detail::cyclic_surface_fan(std::move(rays));
}

/// Closure of P^2 and F_0..F_B under inserting v_i + v_{i+1} between adjacent
/// rays, keeping at most max_rays rays and |d_i| <= max_abs_d. Sorted by code.
inline std::vector<Fan> enumerate_smooth_surfaces(std::size_t max_rays, long long max_abs_d)
{
    if (max_rays < 3 || max_abs_d < 1) {
        throw std::invalid_argument("census bounds need max_rays >= 3 and max_abs_d >= 1");
    }
    auto within_bounds = [&](const SurfaceCode& code) {
        return code.d.size() <= max_rays && std::all_of(code.d.begin(), code.d.end(), [&](const Integer& d) {
                   return boost::multiprecision::abs(d) <= max_abs_d;
               });
    };
    std::map<SurfaceCode, Fan> found;
    std::deque<Fan> frontier;
    auto offer = [&](Fan fan) {
        SurfaceCode code = canonical_surface_code(fan);
        if (within_bounds(code) && !found.contains(code)) {
            found.emplace(std::move(code), fan);
            frontier.push_back(std::move(fan));
        }
    };

    offer(detail::cyclic_surface_fan({{1, 0}, {0, 1}, {-1, -1}}));
    for (long long a = 0; a <= max_abs_d; ++a) {
        offer(fans::hirzebruch(a));
    }
    while (!frontier.empty()) {
        const Fan fan = std::move(frontier.front());
        frontier.pop_front();
        if (fan.rays().size() >= max_rays) {
            continue;
        }
        const auto order = detail::cyclic_ray_order(fan);
        const auto cyclic = detail::gather(fan.rays(), order);
        for (std::size_t i = 0; i < cyclic.size(); ++i) {
            std::vector<LatticeVector> rays = cyclic;
            rays.insert(rays.begin() + static_cast<std::ptrdiff_t>(i + 1), cyclic[i] + cyclic[(i + 1) % cyclic.size()]);
            offer(detail::cyclic_surface_fan(std::move(rays)));
        }
    }
    std::vector<Fan> out;
    out.reserve(found.size());
    for (auto& [code, fan] : found) {
        out.push_back(std::move(fan));
    }
    return out;
}

struct CensusRow {
    SurfaceCode code;
    Fan fan;
    PositivityClass classification;
};

struct CensusTable {
    std::vector<CensusRow> rows;
    std::map<Positivity, std::size_t> counts;
};

inline CensusTable census(std::size_t max_rays, long long max_abs_d)
{
    CensusTable table;
    table.counts = {{Positivity::Ample, 0}, {Positivity::NefNotAmple, 0}, {Positivity::NotNef, 0}};
    for (Fan& fan : enumerate_smooth_surfaces(max_rays, max_abs_d)) {
        SurfaceCode code = canonical_surface_code(fan);
        PositivityClass cls = classify_tangent(fan);
        ++table.counts[cls.verdict];
        table.rows.push_back({std::move(code), std::move(fan), std::move(cls)});
    }
    return table;
}

} // namespace toric

#endif
