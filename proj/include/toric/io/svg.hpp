// Deterministic SVG pictures of 2D fans and their polytopes.
// 40 px per lattice unit, y axis pointing up, viewBox centred on the origin
// and padded by one unit. Every coordinate written is an integer.

#ifndef TORIC_IO_SVG_HPP
#define TORIC_IO_SVG_HPP

#include <toric/error.hpp>
#include <toric/fan.hpp>
#include <toric/lattice.hpp>
#include <toric/polytope.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

namespace toric::io {

inline constexpr std::int64_t svg_unit = 40;

inline std::string render_svg(const Fan& fan, const std::optional<LatticePolytope>& polytope = std::nullopt)
{
    if (fan.dim() != 2) {
        throw ValidationError("rendering supports dimension 2 only");
    }
    auto x_of = [](const LatticeVector& v) { return to_int64(v[0]) * svg_unit; };
    auto y_of = [](const LatticeVector& v) { return -to_int64(v[1]) * svg_unit; };

    // Arrows run to twice the primitive generator.
    std::int64_t extent = 1;
    auto widen = [&](const LatticeVector& v) {
        for (const auto& c : v) {
            extent = std::max(extent, to_int64(boost::multiprecision::abs(c)));
        }
    };
    for (const auto& r : fan.rays()) {
        widen(Integer(2) * r);
    }
    if (polytope) {
        for (const auto& p : polytope->vertices()) {
            widen(p);
        }
    }
    const std::int64_t half = (extent + 1) * svg_unit;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * half << "\" height=\"" << 2 * half
        << "\" viewBox=\"" << -half << ' ' << -half << ' ' << 2 * half << ' ' << 2 * half << "\">\n";
    svg << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"8\" "
           "markerHeight=\"8\" orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\"/></marker></defs>\n";

    if (polytope) {
        svg << "<g id=\"lattice\" fill=\"#c8c8c8\">\n";
        for (std::int64_t x = -extent; x <= extent; ++x) {
            for (std::int64_t y = -extent; y <= extent; ++y) {
                svg << "<circle cx=\"" << x * svg_unit << "\" cy=\"" << -y * svg_unit << "\" r=\"2\"/>\n";
            }
        }
        svg << "</g>\n";
        const TwoFace& boundary = polytope->two_faces().front();
        svg << "<polygon id=\"polytope\" fill=\"#dde8f7\" stroke=\"#000000\" stroke-width=\"2\" points=\"";
        for (std::size_t k = 0; k < boundary.cycle.size(); ++k) {
            const auto& p = polytope->vertex(boundary.cycle[k]);
            svg << (k ? " " : "") << x_of(p) << ',' << y_of(p);
        }
        svg << "\"/>\n";
        svg << "<g id=\"vertices\" font-family=\"sans-serif\" font-size=\"14\">\n";
        for (ConeIndex sigma = 0; sigma < polytope->vertices().size(); ++sigma) {
            const auto& p = polytope->vertex(sigma);
            svg << "<circle cx=\"" << x_of(p) << "\" cy=\"" << y_of(p) << "\" r=\"4\" fill=\"#1f4fbf\"/>";
            svg << "<text x=\"" << x_of(p) + 6 << "\" y=\"" << y_of(p) - 6 << "\">p" << sigma << "</text>\n";
        }
        svg << "</g>\n";
    }

    svg << "<g id=\"rays\" stroke=\"#000000\" stroke-width=\"2\">\n";
    for (RayIndex i = 0; i < fan.rays().size(); ++i) {
        const LatticeVector tip = Integer(2) * fan.ray(i);
        svg << "<line x1=\"0\" y1=\"0\" x2=\"" << x_of(tip) << "\" y2=\"" << y_of(tip)
            << "\" marker-end=\"url(#arrow)\"/>\n";
    }
    svg << "</g>\n";
    svg << "<g id=\"generators\" fill=\"#000000\">\n";
    for (const auto& r : fan.rays()) {
        svg << "<circle cx=\"" << x_of(r) << "\" cy=\"" << y_of(r) << "\" r=\"4\"/>\n";
    }
    svg << "<circle cx=\"0\" cy=\"0\" r=\"6\"/>\n";
    svg << "</g>\n";
    svg << "</svg>\n";
    return svg.str();
}

} // namespace toric::io

#endif
