/**
 * Smooth fans given by rays and maximal cones.
 *
 * A Fan is validated once at construction and immutable afterwards: rays are
 * primitive and distinct, every maximal cone is unimodular, and any two
 * maximal cones meet in a common face. Completeness is a query, not an
 * invariant, so affine pieces such as the fan of A^n can be represented.
 *
 * Note that in dimension >= 3 a smooth complete fan need not be projective;
 * nothing here assumes projectivity.
 */

#ifndef TORIC_FAN_HPP
#define TORIC_FAN_HPP

#include <toric/error.hpp>
#include <toric/lattice.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace toric {

using RayIndex = std::size_t;
using ConeIndex = std::size_t;
using RaySet = std::vector<RayIndex>;

/// Unvalidated fan data, as read from a file.
struct FanData {
    std::size_t dim = 0;
    std::vector<LatticeVector> rays;
    std::vector<RaySet> max_cones;

    friend bool operator==(const FanData&, const FanData&) = default;
};

struct SmoothnessCheck {
    bool smooth = true;
    std::optional<ConeIndex> offending_cone;
};

/// A codimension-one cone tau and the two maximal cones sigma (side a) and
/// sigma' (side b) on either side of it.
struct Wall {
    RaySet shared_rays; // sorted ascending
    ConeIndex side_a = 0;
    ConeIndex side_b = 0;
    RayIndex opposite_a = 0;
    RayIndex opposite_b = 0;

    /// The same wall seen from the other side.
    Wall swapped() const { return {shared_rays, side_b, side_a, opposite_b, opposite_a}; }

    friend bool operator==(const Wall&, const Wall&) = default;
};

namespace detail {

inline RaySet sorted(RaySet s)
{
    std::sort(s.begin(), s.end());
    return s;
}

inline std::vector<LatticeVector> gather(const std::vector<LatticeVector>& rays, const RaySet& indices)
{
    std::vector<LatticeVector> out;
    out.reserve(indices.size());
    for (RayIndex i : indices) {
        out.push_back(rays[i]);
    }
    return out;
}

/// Calls f on every k-element subset of {0..n-1}, in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f)
{
    if (k > n) {
        return;
    }
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) {
        pick[i] = i;
    }
    while (true) {
        f(static_cast<const std::vector<std::size_t>&>(pick));
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + (i - 1)) {
            --i;
        }
        if (i == 0) {
            return;
        }
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

} // namespace detail

/// Smoothness of raw data: every maximal cone has exactly `dim` generators
/// forming a Z-basis. Index errors are not reported here.
inline SmoothnessCheck is_smooth(const FanData& data)
{
    for (ConeIndex c = 0; c < data.max_cones.size(); ++c) {
        const auto& cone = data.max_cones[c];
        if (cone.size() != data.dim) {
            return {false, c};
        }
        std::vector<LatticeVector> generators;
        for (RayIndex r : cone) {
            if (r >= data.rays.size() || data.rays[r].dim() != data.dim) {
                return {false, c};
            }
            generators.push_back(data.rays[r]);
        }
        if (!is_unimodular(IntegerMatrix::from_columns(generators))) {
            return {false, c};
        }
    }
    return {true, std::nullopt};
}

class Fan {
public:
    /// Validates and canonicalizes. Non-primitive rays are divided down and a
    /// warning is recorded. Ray order and cone order are kept as given.
    static Fan build(FanData data)
    {
        Fan fan;
        fan.validate_rays(data);
        fan.validate_cones(data);
        fan.data_ = std::move(data);
        fan.index_facets();
        fan.check_face_condition();
        return fan;
    }

    std::size_t dim() const { return data_.dim; }
    const std::vector<LatticeVector>& rays() const { return data_.rays; }
    const LatticeVector& ray(RayIndex i) const { return data_.rays.at(i); }
    const std::vector<RaySet>& max_cones() const { return data_.max_cones; }
    const RaySet& cone(ConeIndex c) const { return data_.max_cones.at(c); }
    const FanData& data() const { return data_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    std::vector<LatticeVector> generators(ConeIndex c) const { return detail::gather(data_.rays, cone(c)); }

    /// Maximal cones having `face` (sorted) among their faces.
    std::vector<ConeIndex> cones_containing(const RaySet& face) const
    {
        std::vector<ConeIndex> out;
        for (ConeIndex c = 0; c < data_.max_cones.size(); ++c) {
            const RaySet s = detail::sorted(data_.max_cones[c]);
            if (std::includes(s.begin(), s.end(), face.begin(), face.end())) {
                out.push_back(c);
            }
        }
        return out;
    }

    /// Facets (sorted ray sets) mapped to the maximal cones containing them.
    const std::map<RaySet, std::vector<ConeIndex>>& facets() const { return facets_; }

    /// Equality up to the order of generators inside each cone.
    friend bool operator==(const Fan& a, const Fan& b)
    {
        if (a.dim() != b.dim() || a.rays() != b.rays() || a.max_cones().size() != b.max_cones().size()) {
            return false;
        }
        for (ConeIndex c = 0; c < a.max_cones().size(); ++c) {
            if (detail::sorted(a.cone(c)) != detail::sorted(b.cone(c))) {
                return false;
            }
        }
        return true;
    }

private:
    Fan() = default;

    void validate_rays(FanData& data)
    {
        if (data.dim == 0) {
            throw ValidationError("invalid rays: dimension must be at least 1");
        }
        for (std::size_t i = 0; i < data.rays.size(); ++i) {
            auto& r = data.rays[i];
            if (r.dim() != data.dim) {
                throw ValidationError("invalid rays: ray " + std::to_string(i) + " has " + std::to_string(r.dim()) +
                                      " coordinates, expected " + std::to_string(data.dim));
            }
            if (r.is_zero()) {
                throw ValidationError("invalid rays: ray " + std::to_string(i) + " is zero");
            }
            auto [direction, k] = primitive(r);
            if (k != 1) {
                warnings_.push_back("ray " + std::to_string(i) + " " + r.str() + " replaced by primitive " +
                                    direction.str());
                r = std::move(direction);
            }
        }
        std::set<std::vector<Integer>> seen;
        for (std::size_t i = 0; i < data.rays.size(); ++i) {
            if (!seen.insert(data.rays[i].coords()).second) {
                throw ValidationError("invalid rays: ray " + std::to_string(i) + " " + data.rays[i].str() +
                                      " duplicates an earlier ray");
            }
        }
    }

    void validate_cones(const FanData& data)
    {
        std::vector<bool> used(data.rays.size(), false);
        std::set<RaySet> distinct;
        for (ConeIndex c = 0; c < data.max_cones.size(); ++c) {
            const auto& cone = data.max_cones[c];
            for (RayIndex r : cone) {
                if (r >= data.rays.size()) {
                    throw ValidationError("not a fan: cone " + std::to_string(c) + " refers to missing ray " +
                                          std::to_string(r));
                }
                used[r] = true;
            }
            RaySet key = detail::sorted(cone);
            if (std::adjacent_find(key.begin(), key.end()) != key.end()) {
                throw ValidationError("not a fan: cone " + std::to_string(c) + " repeats a ray");
            }
            if (cone.size() > data.dim) {
                throw ValidationError("not smooth: cone " + std::to_string(c) + " has more than " +
                                      std::to_string(data.dim) + " rays");
            }
            if (cone.size() < data.dim) {
                // A lower-dimensional maximal cone can never sit inside a complete fan.
                throw ValidationError("fan not complete: maximal cone " + std::to_string(c) + " has only " +
                                      std::to_string(cone.size()) + " rays in dimension " +
                                      std::to_string(data.dim));
            }
            if (!distinct.insert(std::move(key)).second) {
                throw ValidationError("not a fan: cone " + std::to_string(c) + " is listed twice");
            }
        }
        for (RayIndex r = 0; r < used.size(); ++r) {
            if (!used[r]) {
                throw ValidationError("invalid rays: ray " + std::to_string(r) + " lies in no maximal cone");
            }
        }
        const SmoothnessCheck smooth = is_smooth(data);
        if (!smooth.smooth) {
            throw ValidationError("not smooth: cone " + std::to_string(*smooth.offending_cone) +
                                  " is not unimodular");
        }
    }

    void index_facets()
    {
        for (ConeIndex c = 0; c < data_.max_cones.size(); ++c) {
            const RaySet s = detail::sorted(data_.max_cones[c]);
            for (std::size_t skip = 0; skip < s.size(); ++skip) {
                RaySet facet;
                for (std::size_t i = 0; i < s.size(); ++i) {
                    if (i != skip) {
                        facet.push_back(s[i]);
                    }
                }
                facets_[facet].push_back(c);
            }
        }
        for (const auto& [facet, cones] : facets_) {
            if (cones.size() > 2) {
                throw ValidationError("not a fan: a facet is shared by " + std::to_string(cones.size()) +
                                      " maximal cones");
            }
        }
    }

    // sigma and sigma' meet in the cone over their common rays iff every
    // extreme ray of the intersection lies in that common face. The
    // intersection is cut out by the 2n dual-basis inequalities; its extreme
    // rays are found by trying every choice of n-1 tight inequalities.
    void check_face_condition() const
    {
        const std::size_t n = dim();
        std::vector<std::vector<LatticeVector>> duals;
        duals.reserve(data_.max_cones.size());
        for (ConeIndex c = 0; c < data_.max_cones.size(); ++c) {
            const auto gens = generators(c);
            duals.push_back(dual_basis(gens));
        }
        for (ConeIndex a = 0; a < data_.max_cones.size(); ++a) {
            for (ConeIndex b = a + 1; b < data_.max_cones.size(); ++b) {
                std::vector<LatticeVector> inequalities = duals[a];
                inequalities.insert(inequalities.end(), duals[b].begin(), duals[b].end());
                // Dual vectors of sigma_a that must vanish on the common face.
                std::vector<std::size_t> outside;
                for (std::size_t i = 0; i < n; ++i) {
                    const RayIndex r = data_.max_cones[a][i];
                    const auto& other = data_.max_cones[b];
                    if (std::find(other.begin(), other.end(), r) == other.end()) {
                        outside.push_back(i);
                    }
                }
                bool overlap = false;
                detail::for_each_subset(inequalities.size(), n - 1, [&](const std::vector<std::size_t>& tight) {
                    if (overlap) {
                        return;
                    }
                    std::vector<LatticeVector> rows;
                    for (std::size_t t : tight) {
                        rows.push_back(inequalities[t]);
                    }
                    const LatticeVector r = orthogonal_complement(rows, n);
                    if (r.is_zero()) {
                        return;
                    }
                    for (const LatticeVector& candidate : {r, -r}) {
                        const bool inside = std::all_of(inequalities.begin(), inequalities.end(),
                                                        [&](const LatticeVector& u) { return pairing(u, candidate) >= 0; });
                        if (!inside) {
                            continue;
                        }
                        for (std::size_t i : outside) {
                            if (pairing(duals[a][i], candidate) != 0) {
                                overlap = true;
                            }
                        }
                    }
                });
                if (overlap) {
                    throw ValidationError("not a fan: cones " + std::to_string(a) + " and " + std::to_string(b) +
                                          " overlap beyond a common face");
                }
            }
        }
    }

    FanData data_;
    std::vector<std::string> warnings_;
    std::map<RaySet, std::vector<ConeIndex>> facets_;
};

inline Fan build_fan(FanData data)
{
    return Fan::build(std::move(data));
}

inline Fan build_fan(std::size_t dim, std::vector<LatticeVector> rays, std::vector<RaySet> max_cones)
{
    return Fan::build(FanData{dim, std::move(rays), std::move(max_cones)});
}

inline SmoothnessCheck is_smooth(const Fan&)
{
    return {true, std::nullopt};
}

/// Complete iff there is at least one maximal cone and no facet bounds only
/// one of them.
inline bool is_complete(const Fan& fan)
{
    if (fan.max_cones().empty()) {
        return false;
    }
    return std::all_of(fan.facets().begin(), fan.facets().end(),
                       [](const auto& entry) { return entry.second.size() == 2; });
}

/// All walls, ordered lexicographically by their shared rays. Side a is the
/// lower-numbered maximal cone.
inline std::vector<Wall> enumerate_walls(const Fan& fan)
{
    std::vector<Wall> walls;
    walls.reserve(fan.facets().size());
    for (const auto& [facet, cones] : fan.facets()) {
        if (cones.size() != 2) {
            throw ValidationError("fan not complete: facet {" + [&] {
                std::string s;
                for (RayIndex r : facet) {
                    s += (s.empty() ? "" : ",") + std::to_string(r);
                }
                return s;
            }() + "} bounds a single maximal cone");
        }
        auto opposite = [&](ConeIndex c) {
            for (RayIndex r : fan.cone(c)) {
                if (!std::binary_search(facet.begin(), facet.end(), r)) {
                    return r;
                }
            }
            throw InternalError("facet is not a facet of its cone");
        };
        walls.push_back({facet, cones[0], cones[1], opposite(cones[0]), opposite(cones[1])});
    }
    return walls;
}

/// Position of the wall with the given shared rays (any order), if any.
inline std::optional<std::size_t> find_wall(const std::vector<Wall>& walls, RaySet shared)
{
    shared = detail::sorted(std::move(shared));
    for (std::size_t i = 0; i < walls.size(); ++i) {
        if (walls[i].shared_rays == shared) {
            return i;
        }
    }
    return std::nullopt;
}

/// Cones of dimension n-2 (sorted ray sets), lexicographic order. Empty for n = 1;
/// for n = 2 the single entry is the zero cone.
inline std::vector<RaySet> enumerate_codim2_cones(const Fan& fan)
{
    std::set<RaySet> faces;
    if (fan.dim() < 2) {
        return {};
    }
    for (const auto& cone : fan.max_cones()) {
        const RaySet s = detail::sorted(cone);
        detail::for_each_subset(s.size(), s.size() - 2, [&](const std::vector<std::size_t>& pick) {
            RaySet face;
            for (std::size_t i : pick) {
                face.push_back(s[i]);
            }
            faces.insert(std::move(face));
        });
    }
    return {faces.begin(), faces.end()};
}

/// Star subdivision of a maximal cone at the sum of its generators. In
/// dimension 2 this is the blowup of the corresponding fixed point.
inline Fan blow_up(const Fan& fan, ConeIndex c)
{
    FanData data = fan.data();
    LatticeVector center(fan.dim());
    for (RayIndex r : fan.cone(c)) {
        center += fan.ray(r);
    }
    const RayIndex fresh = data.rays.size();
    data.rays.push_back(center);
    const RaySet old = data.max_cones[c];
    data.max_cones.erase(data.max_cones.begin() + static_cast<std::ptrdiff_t>(c));
    for (std::size_t i = 0; i < old.size(); ++i) {
        RaySet replaced = old;
        replaced[i] = fresh;
        data.max_cones.push_back(std::move(replaced));
    }
    return Fan::build(std::move(data));
}

namespace fans {

/// rays e_1..e_n, -(e_1+..+e_n); maximal cones are all n-subsets.
inline Fan projective_space(std::size_t n)
{
    FanData data;
    data.dim = n;
    LatticeVector minus_sum(n);
    for (std::size_t i = 0; i < n; ++i) {
        data.rays.push_back(LatticeVector::unit(n, i));
        minus_sum[i] = -1;
    }
    data.rays.push_back(minus_sum);
    detail::for_each_subset(n + 1, n, [&](const std::vector<std::size_t>& pick) { data.max_cones.push_back(pick); });
    return Fan::build(std::move(data));
}

/// rays (1,0), (0,1), (-1,a), (0,-1) in counterclockwise order.
inline Fan hirzebruch(long long a)
{
    return build_fan(2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

inline Fan product(const Fan& left, const Fan& right)
{
    FanData data;
    data.dim = left.dim() + right.dim();
    for (const auto& r : left.rays()) {
        std::vector<Integer> coords = r.coords();
        coords.resize(data.dim, Integer(0));
        data.rays.emplace_back(std::move(coords));
    }
    for (const auto& r : right.rays()) {
        std::vector<Integer> coords(left.dim(), Integer(0));
        coords.insert(coords.end(), r.coords().begin(), r.coords().end());
        data.rays.emplace_back(std::move(coords));
    }
    const std::size_t offset = left.rays().size();
    for (const auto& a : left.max_cones()) {
        for (const auto& b : right.max_cones()) {
            RaySet cone = a;
            for (RayIndex r : b) {
                cone.push_back(r + offset);
            }
            data.max_cones.push_back(std::move(cone));
        }
    }
    return Fan::build(std::move(data));
}

} // namespace fans

} // namespace toric

#endif
