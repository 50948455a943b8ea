#include "test_support.hpp"

#include <toric/polytope.hpp>
#include <toric/tangent_splitting.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace toric;
using namespace toric::testing;

namespace {

DivisorCoefficients coeffs(std::initializer_list<long long> values)
{
    DivisorCoefficients d;
    for (long long v : values) {
        d.c.emplace_back(v);
    }
    return d;
}

std::size_t wall_index(const LatticePolytope& p, RaySet shared)
{
    return *find_wall(p.walls(), std::move(shared));
}

int sign_on_only_face(const LatticePolytope& p, RaySet shared)
{
    const std::size_t w = wall_index(p, std::move(shared));
    const auto faces = p.faces_of_edge(w);
    EXPECT_EQ(faces.size(), 1u);
    return angle_sum_sign(p, w, faces.front()).sign;
}

std::vector<std::pair<std::string, Fan>> projective_fans()
{
    auto all = golden_fans();
    for (auto& f : threefolds()) {
        all.push_back(f);
    }
    all.emplace_back("F2", fans::hirzebruch(2));
    all.emplace_back("F3", fans::hirzebruch(3));
    all.emplace_back("BlP2x2", blow_up(blow_up(p2(), 0), 1));
    all.emplace_back("P4", fans::projective_space(4));
    return all;
}

/// 2c + <m, v_k>: another ample divisor with a translated, dilated polytope.
DivisorCoefficients dilate_and_translate(const Fan& fan, const DivisorCoefficients& d, const LatticeVector& m)
{
    DivisorCoefficients out;
    for (RayIndex k = 0; k < fan.rays().size(); ++k) {
        out.c.push_back(2 * d.c[k] + pairing(m, fan.ray(k)));
    }
    return out;
}

} // namespace

TEST(Anticanonical, AllOnes)
{
    EXPECT_EQ(anticanonical(p2()), coeffs({1, 1, 1}));
    EXPECT_EQ(anticanonical(p1xp1()), coeffs({1, 1, 1, 1}));
    EXPECT_EQ(anticanonical(p1xp1xp1()).c.size(), 6u);
}

TEST(IsDivisorAmple, Examples)
{
    EXPECT_TRUE(is_divisor_ample(p2(), coeffs({1, 1, 1})).ample);
    EXPECT_TRUE(is_divisor_ample(f1(), coeffs({1, 1, 1, 1})).ample);
    const AmplenessCheck flat = is_divisor_ample(p1xp1(), coeffs({0, 0, 0, 0}));
    EXPECT_FALSE(flat.ample);
    ASSERT_TRUE(flat.witness.has_value());
    EXPECT_EQ(flat.witness->first, 0u);
    EXPECT_EQ(flat.witness->second, 2u);
}

TEST(IsDivisorAmple, P2ByHand)
{
    // Each vertex against its single outside ray.
    const Fan fan = p2();
    const DivisorCoefficients d = coeffs({1, 1, 1});
    EXPECT_EQ(pairing(LatticeVector{-1, -1}, fan.ray(2)), 2);  // p_{01} vs v_2: 2 > -1
    EXPECT_EQ(pairing(LatticeVector{2, -1}, fan.ray(0)), 2);   // p_{12} vs v_0
    EXPECT_EQ(pairing(LatticeVector{-1, 2}, fan.ray(1)), 2);   // p_{20} vs v_1
    EXPECT_EQ(vertex_of_cone(fan, d, 1), (LatticeVector{2, -1}));
}

TEST(IsDivisorAmple, WrongLengthIsRejected)
{
    EXPECT_THROW(is_divisor_ample(p2(), coeffs({1, 1})), ValidationError);
}

TEST(FindAmpleDivisor, FanoStartsAtAnticanonical)
{
    EXPECT_EQ(find_ample_divisor(p2()), coeffs({1, 1, 1}));
    EXPECT_EQ(find_ample_divisor(p1xp2()), anticanonical(p1xp2()));
}

TEST(FindAmpleDivisor, HirzebruchSurfaces)
{
    for (long long a = 2; a <= 6; ++a) {
        const Fan fa = fans::hirzebruch(a);
        EXPECT_FALSE(is_divisor_ample(fa, anticanonical(fa)).ample);
        const DivisorCoefficients d = find_ample_divisor(fa);
        EXPECT_TRUE(is_divisor_ample(fa, d).ample) << "a = " << a;
    }
}

TEST(FindAmpleDivisor, WallRowsOfAnticanonicalAreTwoPlusRelationSum)
{
    // -K . C = 2 + sum of the wall relation coefficients.
    for (const auto& [name, fan] : projective_fans()) {
        const auto walls = enumerate_walls(fan);
        const auto rows = detail::wall_intersection_rows(fan);
        ASSERT_EQ(rows.size(), walls.size());
        for (std::size_t w = 0; w < walls.size(); ++w) {
            Integer expected = 2;
            for (const auto& b : wall_relation(fan, walls[w]).coefficients) {
                expected += b;
            }
            Integer dot = 0;
            for (const auto& entry : rows[w]) {
                dot += entry;
            }
            EXPECT_EQ(dot, expected) << name;
        }
    }
}

TEST(FindAmpleDivisor, ResultIsAmple)
{
    for (const auto& [name, fan] : projective_fans()) {
        EXPECT_TRUE(is_divisor_ample(fan, find_ample_divisor(fan)).ample) << name;
    }
    EXPECT_THROW(find_ample_divisor(build_fan(2, {{1, 0}, {0, 1}}, {{0, 1}})), ValidationError);
}

TEST(PolytopeFromDivisor, GoldenVertices)
{
    EXPECT_EQ(sorted_points(polytope_from_divisor(p2(), anticanonical(p2())).vertices()),
              (std::vector<std::vector<long long>>{{-1, -1}, {-1, 2}, {2, -1}}));
    EXPECT_EQ(sorted_points(polytope_from_divisor(p1xp1(), anticanonical(p1xp1())).vertices()),
              (std::vector<std::vector<long long>>{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}}));
    EXPECT_EQ(sorted_points(polytope_from_divisor(f1(), anticanonical(f1())).vertices()),
              (std::vector<std::vector<long long>>{{-1, -1}, {-1, 2}, {1, -1}, {1, 0}}));
}

TEST(PolytopeFromDivisor, RejectsNonAmple)
{
    try {
        polytope_from_divisor(p1xp1(), coeffs({0, 0, 0, 0}));
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("divisor not ample"), std::string::npos);
    }
}

TEST(PolytopeFromDivisor, Invariants)
{
    for (const auto& [name, fan] : projective_fans()) {
        const DivisorCoefficients d = find_ample_divisor(fan);
        const LatticePolytope p = polytope_from_divisor(fan, d);
        const std::size_t n = fan.dim();
        for (ConeIndex sigma = 0; sigma < fan.max_cones().size(); ++sigma) {
            const auto& cone = fan.cone(sigma);
            for (RayIndex k = 0; k < fan.rays().size(); ++k) {
                const Integer value = pairing(p.vertex(sigma), fan.ray(k));
                if (std::find(cone.begin(), cone.end(), k) != cone.end()) {
                    EXPECT_EQ(value, -d.c[k]) << name;
                } else {
                    EXPECT_GT(value, -d.c[k]) << name;
                }
            }
        }
        for (std::size_t w = 0; w < p.walls().size(); ++w) {
            const Wall& wall = p.walls()[w];
            const LatticeVector step = p.vertex(wall.side_b) - p.vertex(wall.side_a);
            EXPECT_EQ(primitive(step).direction, splitting_type(fan, wall).distinguished) << name;
            EXPECT_EQ(p.faces_of_edge(w).size(), n - 1) << name;
        }
        // Edge directions at p_sigma are the dual basis of sigma.
        for (ConeIndex sigma = 0; sigma < fan.max_cones().size(); ++sigma) {
            std::vector<LatticeVector> directions;
            for (const Wall& wall : p.walls()) {
                if (wall.side_a == sigma || wall.side_b == sigma) {
                    const ConeIndex other = wall.side_a == sigma ? wall.side_b : wall.side_a;
                    directions.push_back(primitive(p.vertex(other) - p.vertex(sigma)).direction);
                }
            }
            EXPECT_EQ(sorted_points(directions), sorted_points(associated_characters(fan, sigma).characters)) << name;
        }
    }
}

TEST(AngleSumSign, GoldenEdges)
{
    const LatticePolytope triangle = polytope_from_divisor(p2(), anticanonical(p2()));
    const Wall& w2 = triangle.walls()[wall_index(triangle, {2})];
    EXPECT_EQ(triangle.vertex(w2.side_a), (LatticeVector{2, -1}));
    EXPECT_EQ(triangle.vertex(w2.side_b), (LatticeVector{-1, 2}));
    EXPECT_EQ(sign_on_only_face(triangle, {2}), 1);

    const LatticePolytope square = polytope_from_divisor(p1xp1(), anticanonical(p1xp1()));
    const Wall& s2 = square.walls()[wall_index(square, {2})];
    EXPECT_EQ(square.vertex(s2.side_a), (LatticeVector{1, -1}));
    EXPECT_EQ(square.vertex(s2.side_b), (LatticeVector{1, 1}));
    EXPECT_EQ(sign_on_only_face(square, {2}), 0);

    const LatticePolytope trapezoid = polytope_from_divisor(f1(), anticanonical(f1()));
    const Wall& t3 = trapezoid.walls()[wall_index(trapezoid, {3})];
    EXPECT_EQ(trapezoid.vertex(t3.side_a), (LatticeVector{1, -1}));
    EXPECT_EQ(trapezoid.vertex(t3.side_b), (LatticeVector{1, 0}));
    EXPECT_EQ(sign_on_only_face(trapezoid, {3}), -1);
}

TEST(AngleSumSign, EdgeNotOnFaceIsRejected)
{
    const LatticePolytope p = polytope_from_divisor(p3(), anticanonical(p3()));
    // Wall {0,1} lies on faces {0} and {1}, not on face {2} or {3}.
    const std::size_t w = wall_index(p, {0, 1});
    std::size_t off_face = 0;
    while (p.two_faces()[off_face].cone != RaySet{3}) {
        ++off_face;
    }
    EXPECT_THROW(angle_sum_sign(p, w, off_face), std::invalid_argument);
}

TEST(AngleSumSign, MatchesSplittingDegree)
{
    for (const auto& [name, fan] : projective_fans()) {
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
                EXPECT_EQ(angle_sum_sign(p, w, f).sign, sign(split.summands[j].degree)) << name;
            }
        }
    }
}

TEST(AngleSumSign, IndependentOfDivisor)
{
    std::mt19937_64 rng(3);
    for (const auto& [name, fan] : projective_fans()) {
        const DivisorCoefficients d = find_ample_divisor(fan);
        const DivisorCoefficients other = dilate_and_translate(fan, d, random_vector(fan.dim(), rng, 4));
        DivisorCoefficients bumped = d;
        for (RayIndex k = 0; k < fan.rays().size(); ++k) {
            DivisorCoefficients candidate = d;
            candidate.c[k] += 1;
            if (is_divisor_ample(fan, candidate).ample) {
                bumped = candidate;
                break;
            }
        }
        const LatticePolytope p = polytope_from_divisor(fan, d);
        for (const auto& alt : {other, bumped}) {
            const LatticePolytope q = polytope_from_divisor(fan, alt);
            EXPECT_EQ(is_simplex(p), is_simplex(q)) << name;
            EXPECT_EQ(all_two_faces_triangular(p).all_triangular, all_two_faces_triangular(q).all_triangular) << name;
            for (std::size_t w = 0; w < p.walls().size(); ++w) {
                for (std::size_t f : p.faces_of_edge(w)) {
                    EXPECT_EQ(angle_sum_sign(p, w, f).sign, angle_sum_sign(q, w, f).sign) << name;
                }
            }
        }
    }
}

TEST(TwoFaces, Triangularity)
{
    EXPECT_TRUE(all_two_faces_triangular(polytope_from_divisor(p2(), anticanonical(p2()))).all_triangular);
    const TriangularCheck square = all_two_faces_triangular(polytope_from_divisor(p1xp1(), anticanonical(p1xp1())));
    EXPECT_FALSE(square.all_triangular);
    EXPECT_EQ(square.witness_face, 0u);
    const LatticePolytope tetra = polytope_from_divisor(p3(), anticanonical(p3()));
    EXPECT_EQ(tetra.two_faces().size(), 4u);
    EXPECT_TRUE(all_two_faces_triangular(tetra).all_triangular);
}

TEST(TwoFaces, CycleIsClosedWalk)
{
    for (const auto& [name, fan] : projective_fans()) {
        const LatticePolytope p = polytope_from_divisor(fan, find_ample_divisor(fan));
        for (const TwoFace& face : p.two_faces()) {
            const std::size_t m = face.cycle.size();
            ASSERT_EQ(face.edges.size(), m);
            for (std::size_t k = 0; k < m; ++k) {
                const Wall& w = p.walls()[face.edges[k]];
                const std::set<ConeIndex> ends{w.side_a, w.side_b};
                EXPECT_EQ(ends, (std::set<ConeIndex>{face.cycle[k], face.cycle[(k + 1) % m]})) << name;
            }
        }
    }
}

TEST(IsSimplex, Examples)
{
    EXPECT_TRUE(is_simplex(polytope_from_divisor(p2(), anticanonical(p2()))));
    EXPECT_FALSE(is_simplex(polytope_from_divisor(f1(), anticanonical(f1()))));
    const Fan p4 = fans::projective_space(4);
    const LatticePolytope simplex = polytope_from_divisor(p4, anticanonical(p4));
    EXPECT_EQ(simplex.vertices().size(), 5u);
    EXPECT_TRUE(is_simplex(simplex));
}

TEST(NormalFan, RecoversSourceFan)
{
    EXPECT_EQ(normal_fan(polytope_from_divisor(p2(), anticanonical(p2()))), p2());
    EXPECT_EQ(normal_fan(polytope_from_divisor(f1(), anticanonical(f1()))), f1());
    ASSERT_TRUE(is_divisor_ample(p1xp1(), coeffs({1, 1, 2, 2})).ample);
    EXPECT_EQ(normal_fan(polytope_from_divisor(p1xp1(), coeffs({1, 1, 2, 2}))), p1xp1());
    for (const auto& [name, fan] : projective_fans()) {
        EXPECT_EQ(normal_fan(polytope_from_divisor(fan, find_ample_divisor(fan))), fan) << name;
    }
}

TEST(NormalFan, SimplexIffTriangularFaces)
{
    for (const auto& [name, fan] : projective_fans()) {
        const LatticePolytope p = polytope_from_divisor(fan, find_ample_divisor(fan));
        EXPECT_EQ(is_simplex(p), all_two_faces_triangular(p).all_triangular) << name;
    }
}
