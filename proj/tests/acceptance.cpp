// Acceptance suite: one PASS/FAIL line per criterion, each with its time limit.

#include "test_support.hpp"

#include <toric/polytope.hpp>
#include <toric/tangent_splitting.hpp>
#include <toric/theorem.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace toric;
using namespace toric::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void expect(bool condition, const std::string& what)
    {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

std::vector<long long> multiset_of(const Fan& fan, RaySet shared)
{
    const auto walls = enumerate_walls(fan);
    return as_longs(splitting_type(fan, walls.at(*find_wall(walls, std::move(shared)))).multiset());
}

std::vector<Fan> census_universe()
{
    return enumerate_smooth_surfaces(7, 3);
}

std::vector<std::vector<long long>> points(std::initializer_list<std::vector<long long>> list)
{
    std::vector<std::vector<long long>> out(list);
    std::sort(out.begin(), out.end());
    return out;
}

DivisorCoefficients coeffs(std::initializer_list<long long> values)
{
    DivisorCoefficients d;
    for (long long v : values) {
        d.c.emplace_back(v);
    }
    return d;
}

Outcome golden_splittings()
{
    Outcome o;
    o.expect(multiset_of(p2(), {2}) == std::vector<long long>{1, 2}, "P2 wall is not {1,2}");
    o.expect(multiset_of(p1xp1(), {2}) == std::vector<long long>{0, 2}, "P1xP1 wall is not {0,2}");
    o.expect(multiset_of(f1(), {3}) == std::vector<long long>{-1, 2}, "F1 wall is not {-1,2}");
    o.expect(classify_tangent(p2()).verdict == Positivity::Ample, "P2 not Ample");
    o.expect(classify_tangent(p1xp1()).verdict == Positivity::NefNotAmple, "P1xP1 not NefNotAmple");
    o.expect(classify_tangent(f1()).verdict == Positivity::NotNef, "F1 not NotNef");
    return o;
}

Outcome golden_polytopes()
{
    Outcome o;
    auto vertices = [](const Fan& fan) {
        return sorted_points(polytope_from_divisor(fan, anticanonical(fan)).vertices());
    };
    o.expect(vertices(p2()) == points({{2, -1}, {-1, 2}, {-1, -1}}), "P2 vertices");
    o.expect(vertices(p1xp1()) == points({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}), "P1xP1 vertices");
    o.expect(vertices(f1()) == points({{1, 0}, {-1, 2}, {-1, -1}, {1, -1}}), "F1 vertices");
    return o;
}

Outcome angle_bridge()
{
    Outcome o;
    std::vector<std::pair<std::string, Fan>> fans;
    for (Fan& f : census_universe()) {
        fans.emplace_back(canonical_surface_code(f).str(), std::move(f));
    }
    for (auto& f : threefolds()) {
        fans.push_back(std::move(f));
    }
    std::size_t checked = 0;
    for (const auto& [name, fan] : fans) {
        const LatticePolytope p = polytope_from_divisor(fan, find_ample_divisor(fan));
        for (std::size_t w = 0; w < p.walls().size(); ++w) {
            const SplittingType split = splitting_type(fan, p.walls()[w]);
            const auto& shared = p.walls()[w].shared_rays;
            for (std::size_t f : p.faces_of_edge(w)) {
                const RaySet& rho = p.two_faces()[f].cone;
                std::size_t j = 0;
                while (std::binary_search(rho.begin(), rho.end(), shared[j])) {
                    ++j;
                }
                o.expect(angle_sum_sign(p, w, f).sign == sign(split.summands[j].degree), name + ": sign mismatch");
                ++checked;
            }
        }
    }
    o.expect(checked > 0, "nothing checked");
    if (o.ok) {
        o.detail = std::to_string(fans.size()) + " fans, " + std::to_string(checked) + " (edge, face) pairs";
    }
    return o;
}

Outcome two_methods()
{
    Outcome o;
    std::vector<Fan> fans = census_universe();
    for (auto& [name, f] : threefolds()) {
        fans.push_back(f);
    }
    for (std::size_t n = 1; n <= 5; ++n) {
        fans.push_back(fans::projective_space(n));
    }
    std::size_t walls = 0;
    for (const Fan& fan : fans) {
        for (const Wall& w : enumerate_walls(fan)) {
            std::vector<Integer> expected = wall_relation(fan, w).coefficients;
            expected.push_back(2);
            std::sort(expected.begin(), expected.end());
            o.expect(splitting_type(fan, w).multiset() == expected, "multiset mismatch");
            ++walls;
        }
    }
    if (o.ok) {
        o.detail = std::to_string(fans.size()) + " fans, " + std::to_string(walls) + " walls";
    }
    return o;
}

Outcome desk_scale_theorem()
{
    Outcome o;
    const CensusTable table = census(7, 3);
    std::vector<SurfaceCode> ample;
    std::vector<SurfaceCode> nef;
    for (const auto& row : table.rows) {
        if (row.classification.verdict == Positivity::Ample) {
            ample.push_back(row.code);
            const TheoremReport r = verify_theorem(row.fan);
            o.expect(r.pass && r.is_pn && r.polytope_checks && r.polytope_checks->triangular &&
                         r.polytope_checks->simplex,
                     "Ample entry " + row.code.str() + " fails verify_theorem");
        }
        if (row.classification.verdict != Positivity::NotNef) {
            nef.push_back(row.code);
        }
    }
    const SurfaceCode plane = canonical_surface_code(p2());
    const SurfaceCode quadric = canonical_surface_code(p1xp1());
    o.expect(ample == std::vector<SurfaceCode>{plane}, "Ample entries are not exactly P2");
    std::vector<SurfaceCode> expected_nef{plane, quadric};
    std::sort(expected_nef.begin(), expected_nef.end());
    o.expect(nef == expected_nef, "nef entries are not exactly P2 and P1xP1");
    if (o.ok) {
        o.detail = std::to_string(table.rows.size()) + " surfaces";
    }
    return o;
}

Outcome projective_spaces()
{
    Outcome o;
    for (std::size_t n = 1; n <= 5; ++n) {
        const Fan pn = fans::projective_space(n);
        std::vector<long long> expected(n - 1, 1);
        expected.push_back(2);
        const PositivityClass cls = classify_tangent(pn);
        o.expect(cls.verdict == Positivity::Ample, "P" + std::to_string(n) + " not Ample");
        for (const auto& s : cls.splittings) {
            o.expect(as_longs(s.multiset()) == expected, "P" + std::to_string(n) + " wall splitting");
        }
    }
    return o;
}

Outcome normal_fan_round_trip()
{
    Outcome o;
    const std::vector<std::pair<Fan, DivisorCoefficients>> skewed{
        {p2(), coeffs({2, 1, 1})}, {p1xp1(), coeffs({1, 1, 2, 2})}, {f1(), coeffs({2, 1, 1, 1})}};
    for (const auto& [fan, divisor] : skewed) {
        o.expect(normal_fan(polytope_from_divisor(fan, anticanonical(fan))) == fan, "round trip with -K");
        o.expect(is_divisor_ample(fan, divisor).ample, "skewed divisor not ample");
        if (is_divisor_ample(fan, divisor).ample) {
            o.expect(normal_fan(polytope_from_divisor(fan, divisor)) == fan, "round trip with skewed divisor");
        }
    }
    return o;
}

Outcome property_suites()
{
    Outcome o;
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + trial % 2;
        const IntegerMatrix m = random_unimodular(n, rng);
        std::vector<LatticeVector> basis;
        for (std::size_t c = 0; c < n; ++c) {
            basis.push_back(m.column(c));
        }
        const auto dual = dual_basis(basis);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                o.expect(pairing(dual[i], basis[j]) == (i == j ? 1 : 0), "dual basis pairing");
            }
        }
    }
    const auto golden = golden_fans();
    for (int trial = 0; trial < 100; ++trial) {
        const Fan& fan = golden[trial % golden.size()].second;
        const Fan moved = transform(fan, random_unimodular(2, rng));
        const auto walls = enumerate_walls(fan);
        const auto moved_walls = enumerate_walls(moved);
        for (std::size_t w = 0; w < walls.size(); ++w) {
            o.expect(splitting_type(fan, walls[w]).multiset() == splitting_type(moved, moved_walls[w]).multiset(),
                     "splitting changed under automorphism");
        }
    }
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const IntegerMatrix m = random_unimodular(n, rng);
        const LatticeVector x = random_vector(n, rng, 1000);
        o.expect(solve_unimodular(m, m * x) == x, "solve round trip");
    }
    return o;
}

struct Criterion {
    std::string id;
    std::string title;
    double limit_seconds;
    std::function<Outcome()> check;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {"AC1", "golden splitting types and verdicts", 1.0, golden_splittings},
        {"AC2", "golden anticanonical polytopes", 1.0, golden_polytopes},
        {"AC3", "angle-sum sign equals sign of a_j", 10.0, angle_bridge},
        {"AC4", "splitting multiset equals wall relation plus {2}", 10.0, two_methods},
        {"AC5", "census(7, 3): only P2 ample, only P2 and P1xP1 nef", 30.0, desk_scale_theorem},
        {"AC6", "P^n splittings {1,...,1,2}, n = 1..5", 5.0, projective_spaces},
        {"AC7", "normal fan round trip", 1.0, normal_fan_round_trip},
        {"AC8", "randomized property suites", 10.0, property_suites},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.check();
        } catch (const std::exception& e) {
            outcome.ok = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (outcome.ok && seconds >= c.limit_seconds) {
            outcome.ok = false;
            outcome.detail = "over the time limit";
        }
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(3);
        line << (outcome.ok ? "[PASS] " : "[FAIL] ") << c.id << ' ' << c.title << " (" << seconds << " s, limit "
             << c.limit_seconds << " s)";
        if (!outcome.detail.empty()) {
            line << ": " << outcome.detail;
        }
        std::cout << line.str() << std::endl;
        failures += outcome.ok ? 0 : 1;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
