/**
 * Lattice polytopes P(X, D) of ample invariant divisors D = sum c_k D_k.
 *
 * P = { u : <u, v_k> >= -c_k for all rays v_k }. Its faces are read off the
 * fan: vertices p_sigma come from maximal cones, edges from walls, and 2-faces
 * from cones of codimension two. Polytopes are only ever derived from a
 * (fan, divisor) pair.
 */

#ifndef TORIC_POLYTOPE_HPP
#define TORIC_POLYTOPE_HPP

#include <toric/error.hpp>
#include <toric/fan.hpp>
#include <toric/lattice.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toric {

struct DivisorCoefficients {
    std::vector<Integer> c; // one per ray

    friend bool operator==(const DivisorCoefficients&, const DivisorCoefficients&) = default;
};

struct AmplenessCheck {
    bool ample = true;
    std::optional<std::pair<ConeIndex, RayIndex>> witness; // first (sigma, v) with <p_sigma, v> <= -c_v
};

struct TwoFace {
    RaySet cone;                     // the codimension-two cone, sorted
    std::vector<ConeIndex> cycle;    // vertices p_sigma in cyclic order
    std::vector<std::size_t> edges;  // edges[k] joins cycle[k] and cycle[k+1 mod m]; wall indices
};

struct Edge {
    ConeIndex from = 0; // side a
    ConeIndex to = 0;   // side b
};

struct AngleSign {
    std::size_t face = 0;
    std::size_t wall = 0;
    int sign = 0; // +1: angle sum < pi, 0: = pi, -1: > pi
};

namespace detail {

inline void require_divisor_length(const Fan& fan, const DivisorCoefficients& divisor)
{
    if (divisor.c.size() != fan.rays().size()) {
        throw ValidationError("divisor has " + std::to_string(divisor.c.size()) + " coefficients but the fan has " +
                              std::to_string(fan.rays().size()) + " rays");
    }
}

inline void require_complete(const Fan& fan)
{
    if (!is_complete(fan)) {
        throw ValidationError("fan not complete");
    }
}

} // namespace detail

/// The unique p with <p, v_i> = -c_i for every generator v_i of the cone.
inline LatticeVector vertex_of_cone(const Fan& fan, const DivisorCoefficients& divisor, ConeIndex cone)
{
    const auto gens = fan.generators(cone);
    LatticeVector rhs(fan.dim());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        rhs[i] = -divisor.c.at(fan.cone(cone)[i]);
    }
    return solve_unimodular(IntegerMatrix::from_rows(gens), rhs);
}

inline DivisorCoefficients anticanonical(const Fan& fan)
{
    return {std::vector<Integer>(fan.rays().size(), Integer(1))};
}

inline AmplenessCheck is_divisor_ample(const Fan& fan, const DivisorCoefficients& divisor)
{
    detail::require_divisor_length(fan, divisor);
    detail::require_complete(fan);
    for (ConeIndex sigma = 0; sigma < fan.max_cones().size(); ++sigma) {
        const LatticeVector p = vertex_of_cone(fan, divisor, sigma);
        const RaySet& cone = fan.cone(sigma);
        for (RayIndex v = 0; v < fan.rays().size(); ++v) {
            if (std::find(cone.begin(), cone.end(), v) != cone.end()) {
                continue;
            }
            if (pairing(p, fan.ray(v)) <= -divisor.c[v]) {
                return {false, std::make_pair(sigma, v)};
            }
        }
    }
    return {true, std::nullopt};
}

namespace detail {

/// One row per wall: row . c is the intersection number of D with the
/// invariant curve of the wall, read off the relation expressing the far
/// opposite ray in the basis of side a.
inline std::vector<std::vector<Integer>> wall_intersection_rows(const Fan& fan)
{
    std::vector<std::vector<Integer>> rows;
    for (const Wall& w : enumerate_walls(fan)) {
        std::vector<LatticeVector> basis = detail::gather(fan.rays(), w.shared_rays);
        basis.push_back(fan.ray(w.opposite_a));
        const LatticeVector x = solve_unimodular(IntegerMatrix::from_columns(basis), fan.ray(w.opposite_b));
        std::vector<Integer> row(fan.rays().size(), Integer(0));
        for (std::size_t i = 0; i < w.shared_rays.size(); ++i) {
            row[w.shared_rays[i]] -= x[i];
        }
        row[w.opposite_a] -= x[w.shared_rays.size()];
        row[w.opposite_b] += 1;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace detail

/// Perceptron search for c with every wall intersection number positive,
/// starting from -K. Terminates whenever the fan is projective; gives up after
/// a fixed number of updates otherwise.
inline DivisorCoefficients find_ample_divisor(const Fan& fan)
{
    detail::require_complete(fan);
    const auto rows = detail::wall_intersection_rows(fan);
    DivisorCoefficients divisor = anticanonical(fan);
    constexpr std::size_t budget = 100000;
    for (std::size_t step = 0; step <= budget; ++step) {
        const std::vector<Integer>* violated = nullptr;
        for (const auto& row : rows) {
            Integer dot = 0;
            for (std::size_t k = 0; k < row.size(); ++k) {
                dot += row[k] * divisor.c[k];
            }
            if (dot <= 0) {
                violated = &row;
                break;
            }
        }
        if (!violated) {
            if (!is_divisor_ample(fan, divisor).ample) {
                throw InternalError("divisor positive on every wall curve but not ample");
            }
            return divisor;
        }
        for (std::size_t k = 0; k < violated->size(); ++k) {
            divisor.c[k] += (*violated)[k];
        }
    }
    throw ValidationError("no ample divisor found (fan may be non-projective)");
}

class LatticePolytope {
public:
    const Fan& fan() const { return fan_; }
    const DivisorCoefficients& divisor() const { return divisor_; }
    std::size_t dim() const { return fan_.dim(); }

    /// Indexed by maximal cone.
    const std::vector<LatticeVector>& vertices() const { return vertices_; }
    const LatticeVector& vertex(ConeIndex sigma) const { return vertices_.at(sigma); }

    /// Indexed like walls().
    const std::vector<Wall>& walls() const { return walls_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<TwoFace>& two_faces() const { return two_faces_; }

    /// Two-faces containing the edge of the given wall.
    std::vector<std::size_t> faces_of_edge(std::size_t wall) const
    {
        std::vector<std::size_t> out;
        for (std::size_t f = 0; f < two_faces_.size(); ++f) {
            const auto& e = two_faces_[f].edges;
            if (std::find(e.begin(), e.end(), wall) != e.end()) {
                out.push_back(f);
            }
        }
        return out;
    }

private:
    friend LatticePolytope polytope_from_divisor(const Fan&, const DivisorCoefficients&);

    LatticePolytope(Fan fan, DivisorCoefficients divisor) : fan_(std::move(fan)), divisor_(std::move(divisor)) {}

    void build_two_faces()
    {
        for (RaySet rho : enumerate_codim2_cones(fan_)) {
            std::vector<std::size_t> incident;
            for (std::size_t w = 0; w < walls_.size(); ++w) {
                const auto& shared = walls_[w].shared_rays;
                if (std::includes(shared.begin(), shared.end(), rho.begin(), rho.end())) {
                    incident.push_back(w);
                }
            }
            const auto around = fan_.cones_containing(rho);
            TwoFace face{rho, {}, {}};
            ConeIndex current = around.front();
            std::optional<std::size_t> came_through;
            do {
                std::optional<std::size_t> next_wall;
                for (std::size_t w : incident) {
                    const Wall& wall = walls_[w];
                    if ((wall.side_a == current || wall.side_b == current) && w != came_through) {
                        next_wall = w;
                        break;
                    }
                }
                if (!next_wall) {
                    throw InternalError("codimension-two cone has an open link");
                }
                face.cycle.push_back(current);
                face.edges.push_back(*next_wall);
                const Wall& wall = walls_[*next_wall];
                current = wall.side_a == current ? wall.side_b : wall.side_a;
                came_through = next_wall;
            } while (current != face.cycle.front() && face.cycle.size() <= around.size());
            if (face.cycle.size() != around.size() || incident.size() != around.size()) {
                throw InternalError("2-face cycle does not visit every maximal cone around its cone");
            }
            two_faces_.push_back(std::move(face));
        }
    }

    Fan fan_;
    DivisorCoefficients divisor_;
    std::vector<LatticeVector> vertices_;
    std::vector<Wall> walls_;
    std::vector<Edge> edges_;
    std::vector<TwoFace> two_faces_;
};

inline LatticePolytope polytope_from_divisor(const Fan& fan, const DivisorCoefficients& divisor)
{
    const AmplenessCheck check = is_divisor_ample(fan, divisor);
    if (!check.ample) {
        const auto [sigma, v] = *check.witness;
        throw ValidationError("divisor not ample: vertex of cone " + std::to_string(sigma) +
                              " violates the strict inequality of ray " + std::to_string(v));
    }
    LatticePolytope polytope(fan, divisor);
    for (ConeIndex sigma = 0; sigma < fan.max_cones().size(); ++sigma) {
        polytope.vertices_.push_back(vertex_of_cone(fan, divisor, sigma));
    }
    polytope.walls_ = enumerate_walls(fan);
    for (const Wall& wall : polytope.walls_) {
        polytope.edges_.push_back({wall.side_a, wall.side_b});
    }
    polytope.build_two_faces();
    return polytope;
}

/// Compares the angles at p_sigma and p_sigma' on a 2-face against pi without
/// measuring them: with w the edge direction and s, s' the primitive
/// directions of the neighbouring edges at each end, s - s' = a w and the
/// angle sum is below, at or above pi as a is positive, zero or negative.
inline AngleSign angle_sum_sign(const LatticePolytope& polytope, std::size_t wall, std::size_t face)
{
    const TwoFace& two_face = polytope.two_faces().at(face);
    const auto& e = two_face.edges;
    const auto at = std::find(e.begin(), e.end(), wall);
    if (at == e.end()) {
        throw std::invalid_argument("edge " + std::to_string(wall) + " does not lie on 2-face " + std::to_string(face));
    }
    const Wall& w = polytope.walls().at(wall);
    const std::size_t m = two_face.cycle.size();
    auto other_neighbour = [&](ConeIndex vertex, ConeIndex across) {
        const auto pos = static_cast<std::size_t>(
            std::find(two_face.cycle.begin(), two_face.cycle.end(), vertex) - two_face.cycle.begin());
        const ConeIndex prev = two_face.cycle[(pos + m - 1) % m];
        const ConeIndex next = two_face.cycle[(pos + 1) % m];
        return prev == across ? next : prev;
    };
    const LatticeVector& p = polytope.vertex(w.side_a);
    const LatticeVector& q = polytope.vertex(w.side_b);
    const LatticeVector direction = primitive(q - p).direction;
    const LatticeVector s = primitive(polytope.vertex(other_neighbour(w.side_a, w.side_b)) - p).direction;
    const LatticeVector s_prime = primitive(polytope.vertex(other_neighbour(w.side_b, w.side_a)) - q).direction;
    const LatticeVector gap = s - s_prime;

    std::size_t k = 0;
    while (k < direction.dim() && direction[k] == 0) {
        ++k;
    }
    const Integer a = gap[k] / direction[k];
    if (a * direction != gap) {
        throw InternalError("face is not planar/2-dimensional");
    }
    return {face, wall, sign(a)};
}

struct TriangularCheck {
    bool all_triangular = true;
    std::optional<std::size_t> witness_face;
};

inline TriangularCheck all_two_faces_triangular(const LatticePolytope& polytope)
{
    for (std::size_t f = 0; f < polytope.two_faces().size(); ++f) {
        if (polytope.two_faces()[f].cycle.size() != 3) {
            return {false, f};
        }
    }
    return {true, std::nullopt};
}

inline bool is_simplex(const LatticePolytope& polytope)
{
    return polytope.vertices().size() == polytope.dim() + 1;
}

/// Recovers the inner normal fan from the vertex set alone, then checks it
/// against the fan the polytope was built from. Facets are found by brute
/// force over n-subsets of vertices, which is fine for the small polytopes of
/// interest here. The result uses the source fan's ray order.
inline Fan normal_fan(const LatticePolytope& polytope)
{
    const std::size_t n = polytope.dim();
    const auto& vertices = polytope.vertices();
    const Fan& source = polytope.fan();

    struct Facet {
        LatticeVector normal;
        Integer support; // min over vertices of <p, normal>
    };
    std::map<std::vector<Integer>, Facet> facets;
    detail::for_each_subset(vertices.size(), n, [&](const std::vector<std::size_t>& pick) {
        std::vector<LatticeVector> spans;
        for (std::size_t i = 1; i < pick.size(); ++i) {
            spans.push_back(vertices[pick[i]] - vertices[pick[0]]);
        }
        LatticeVector normal = orthogonal_complement(spans, n);
        if (normal.is_zero()) {
            return;
        }
        normal = primitive(normal).direction;
        const Integer level = pairing(vertices[pick[0]], normal);
        bool above = true;
        bool below = true;
        for (const auto& p : vertices) {
            const Integer value = pairing(p, normal);
            above = above && value >= level;
            below = below && value <= level;
        }
        if (below && !above) {
            normal = -normal;
        }
        if (above || below) {
            const Integer support = above ? level : Integer(-level);
            facets.emplace(normal.coords(), Facet{normal, support});
        }
    });

    if (facets.size() != source.rays().size()) {
        throw InternalError("polytope has " + std::to_string(facets.size()) + " facets but the fan has " +
                            std::to_string(source.rays().size()) + " rays");
    }
    for (RayIndex k = 0; k < source.rays().size(); ++k) {
        const auto found = facets.find(source.ray(k).coords());
        if (found == facets.end()) {
            throw InternalError("ray " + std::to_string(k) + " is not a facet normal of the polytope");
        }
        if (found->second.support != -polytope.divisor().c[k]) {
            throw InternalError("facet of ray " + std::to_string(k) + " has support " + found->second.support.str() +
                                ", expected " + Integer(-polytope.divisor().c[k]).str());
        }
        // Minimizers must be exactly the vertices of cones containing the ray.
        for (ConeIndex sigma = 0; sigma < vertices.size(); ++sigma) {
            const auto& cone = source.cone(sigma);
            const bool contains = std::find(cone.begin(), cone.end(), k) != cone.end();
            const bool on_facet = pairing(vertices[sigma], source.ray(k)) == found->second.support;
            if (contains != on_facet) {
                throw InternalError("vertex incidence of ray " + std::to_string(k) + " does not match the fan");
            }
        }
    }

    FanData data{n, source.rays(), {}};
    for (ConeIndex sigma = 0; sigma < vertices.size(); ++sigma) {
        RaySet incident;
        for (RayIndex k = 0; k < source.rays().size(); ++k) {
            if (pairing(vertices[sigma], source.ray(k)) == -polytope.divisor().c[k]) {
                incident.push_back(k);
            }
        }
        if (incident.size() != n) {
            throw InternalError("vertex " + std::to_string(sigma) + " lies on " + std::to_string(incident.size()) +
                                " facets; polytope is not simple");
        }
        data.max_cones.push_back(std::move(incident));
    }
    Fan rebuilt = Fan::build(std::move(data));
    if (!(rebuilt == source)) {
        throw InternalError("normal fan differs from the source fan");
    }
    return rebuilt;
}

} // namespace toric

#endif
