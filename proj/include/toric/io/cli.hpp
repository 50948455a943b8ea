// Command dispatch for the `toric` tool.
//
// Every command prints one JSON report on stdout. Exit codes:
//   0 success, 1 input/parse error, 2 validation failure, 3 internal failure.

#ifndef TORIC_IO_CLI_HPP
#define TORIC_IO_CLI_HPP

#include <toric/error.hpp>
#include <toric/fan.hpp>
#include <toric/io/fan_json.hpp>
#include <toric/io/svg.hpp>
#include <toric/polytope.hpp>
#include <toric/tangent_splitting.hpp>
#include <toric/theorem.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace toric::io {

enum ExitCode : int { kOk = 0, kInputError = 1, kValidationFailure = 2, kInternalFailure = 3 };

struct CliResult {
    std::string out;
    std::string err;
    int exit_code = kOk;
};

namespace report {

inline json vector(const LatticeVector& v)
{
    json out = json::array();
    for (const auto& c : v) {
        out.push_back(to_int64(c));
    }
    return out;
}

inline json integers(const std::vector<Integer>& values)
{
    json out = json::array();
    for (const auto& c : values) {
        out.push_back(to_int64(c));
    }
    return out;
}

inline json wall(const Wall& w)
{
    return {{"shared_rays", w.shared_rays},
            {"side_a", w.side_a},
            {"side_b", w.side_b},
            {"opposite_a", w.opposite_a},
            {"opposite_b", w.opposite_b}};
}

inline json splitting(const Fan& fan, const SplittingType& split)
{
    json summands = json::array();
    for (const auto& s : split.summands) {
        summands.push_back({{"u", vector(s.u)}, {"u_prime", vector(s.u_prime)}, {"a", to_int64(s.degree)}});
    }
    json out = wall(split.wall);
    out["distinguished"] = vector(split.distinguished);
    out["summands"] = summands;
    out["wall_relation"] = integers(wall_relation(fan, split.wall).coefficients);
    out["multiset"] = integers(split.multiset());
    return out;
}

inline json divisor(const DivisorCoefficients& d)
{
    return integers(d.c);
}

} // namespace report

namespace detail {

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct LoadedFan {
    FanDocument doc;
    Fan fan;
};

inline LoadedFan load_fan(const std::string& path)
{
    FanDocument doc = parse_fan(read_file(path));
    Fan fan = build_fan(to_fan_data(doc));
    return {std::move(doc), std::move(fan)};
}

inline void require_complete(const Fan& fan)
{
    if (!is_complete(fan)) {
        throw ValidationError("fan not complete");
    }
}

inline DivisorCoefficients load_divisor(const Fan& fan, const std::string& path)
{
    DivisorDocument doc = parse_divisor(read_file(path));
    if (doc.coeffs.size() != fan.rays().size()) {
        throw InputError("coeffs: expected " + std::to_string(fan.rays().size()) + " entries, got " +
                         std::to_string(doc.coeffs.size()));
    }
    return to_divisor(doc);
}

inline std::optional<DivisorCoefficients> choose_divisor(const Fan& fan, const std::string& divisor_path,
                                                         bool anticanonical_flag, bool required)
{
    if (!divisor_path.empty() && anticanonical_flag) {
        throw InputError("--divisor and --anticanonical are mutually exclusive");
    }
    if (!divisor_path.empty()) {
        return load_divisor(fan, divisor_path);
    }
    if (anticanonical_flag) {
        return anticanonical(fan);
    }
    if (required) {
        throw InputError("one of --divisor or --anticanonical is required");
    }
    return std::nullopt;
}

inline json error_report(const std::string& kind, const std::string& message)
{
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

} // namespace detail

inline json run_validate(const std::string& fan_path, int& exit_code)
{
    const auto [doc, fan] = detail::load_fan(fan_path);
    const bool complete = is_complete(fan);
    json out = {{"command", "validate"},
                {"dim", fan.dim()},
                {"rays", fan.rays().size()},
                {"max_cones", fan.max_cones().size()},
                {"smooth", is_smooth(fan).smooth},
                {"complete", complete},
                {"warnings", fan.warnings()}};
    if (doc.name) {
        out["name"] = *doc.name;
    }
    if (complete) {
        out["walls"] = enumerate_walls(fan).size();
    } else {
        exit_code = kValidationFailure;
    }
    return out;
}

inline json run_splitting(const std::string& fan_path, const std::vector<std::size_t>& wall_rays)
{
    const auto [doc, fan] = detail::load_fan(fan_path);
    detail::require_complete(fan);
    const auto walls = enumerate_walls(fan);
    if (!wall_rays.empty()) {
        const auto index = find_wall(walls, wall_rays);
        if (!index) {
            std::string rays;
            for (auto r : wall_rays) {
                rays += (rays.empty() ? "" : ",") + std::to_string(r);
            }
            throw InputError("--wall: no wall is spanned by rays {" + rays + "}");
        }
        json out = report::splitting(fan, splitting_type(fan, walls[*index]));
        out["command"] = "splitting";
        return out;
    }
    json all = json::array();
    for (const auto& w : walls) {
        all.push_back(report::splitting(fan, splitting_type(fan, w)));
    }
    return {{"command", "splitting"}, {"walls", all}};
}

inline json run_classify(const std::string& fan_path)
{
    const auto [doc, fan] = detail::load_fan(fan_path);
    detail::require_complete(fan);
    const PositivityClass cls = classify_tangent(fan);
    json walls = json::array();
    for (const auto& s : cls.splittings) {
        walls.push_back({{"shared_rays", s.wall.shared_rays}, {"multiset", report::integers(s.multiset())}});
    }
    json out = {{"command", "classify"}, {"verdict", to_string(cls.verdict)}, {"walls", walls}};
    out["witness_wall"] = cls.witness ? report::wall(*cls.witness) : json(nullptr);
    return out;
}

inline json run_polytope(const std::string& fan_path, const std::string& divisor_path, bool anticanonical_flag)
{
    const auto [doc, fan] = detail::load_fan(fan_path);
    detail::require_complete(fan);
    const auto divisor = *detail::choose_divisor(fan, divisor_path, anticanonical_flag, true);
    const LatticePolytope polytope = polytope_from_divisor(fan, divisor);
    json vertices = json::array();
    for (ConeIndex sigma = 0; sigma < polytope.vertices().size(); ++sigma) {
        vertices.push_back({{"cone", sigma}, {"point", report::vector(polytope.vertex(sigma))}});
    }
    json edges = json::array();
    for (std::size_t w = 0; w < polytope.walls().size(); ++w) {
        edges.push_back({{"shared_rays", polytope.walls()[w].shared_rays},
                         {"vertices", {polytope.edges()[w].from, polytope.edges()[w].to}}});
    }
    json faces = json::array();
    for (const auto& f : polytope.two_faces()) {
        faces.push_back({{"cone", f.cone}, {"cycle", f.cycle}});
    }
    return {{"command", "polytope"},
            {"divisor", report::divisor(divisor)},
            {"vertices", vertices},
            {"edges", edges},
            {"two_faces", faces},
            {"all_two_faces_triangular", all_two_faces_triangular(polytope).all_triangular},
            {"simplex", is_simplex(polytope)}};
}

inline json run_angles(const std::string& fan_path, const std::string& divisor_path, bool anticanonical_flag)
{
    const auto [doc, fan] = detail::load_fan(fan_path);
    detail::require_complete(fan);
    const auto divisor = *detail::choose_divisor(fan, divisor_path, anticanonical_flag, true);
    const LatticePolytope polytope = polytope_from_divisor(fan, divisor);
    json angles = json::array();
    for (std::size_t w = 0; w < polytope.walls().size(); ++w) {
        const SplittingType split = splitting_type(fan, polytope.walls()[w]);
        for (std::size_t f : polytope.faces_of_edge(w)) {
            const AngleSign angle = angle_sum_sign(polytope, w, f);
            const RaySet& rho = polytope.two_faces()[f].cone;
            // The summand attached to this face belongs to the shared ray missing from it.
            std::size_t j = 0;
            const auto& shared = polytope.walls()[w].shared_rays;
            while (std::binary_search(rho.begin(), rho.end(), shared[j])) {
                ++j;
            }
            angles.push_back({{"wall", shared},
                              {"face", rho},
                              {"sign", angle.sign},
                              {"splitting_degree", to_int64(split.summands[j].degree)}});
        }
    }
    return {{"command", "angles"}, {"divisor", report::divisor(divisor)}, {"angles", angles}};
}

inline json run_verify(const std::string& fan_path, const std::string& divisor_path, int& exit_code)
{
    const auto [doc, fan] = detail::load_fan(fan_path);
    detail::require_complete(fan);
    std::optional<DivisorCoefficients> divisor;
    if (!divisor_path.empty()) {
        divisor = detail::load_divisor(fan, divisor_path);
    }
    const TheoremReport r = verify_theorem(fan, divisor);
    json out = {{"command", "verify"},
                {"verdict", to_string(r.classification.verdict)},
                {"is_pn", r.is_pn},
                {"pass", r.pass}};
    if (r.polytope_checks) {
        out["polytope_checks"] = {{"divisor", report::divisor(r.polytope_checks->divisor)},
                                  {"triangular", r.polytope_checks->triangular},
                                  {"simplex", r.polytope_checks->simplex}};
    } else {
        out["polytope_checks"] = nullptr;
        out["skipped_reason"] = r.skipped_reason;
    }
    if (!r.pass) {
        exit_code = kInternalFailure;
    }
    return out;
}

inline json run_census(std::size_t max_rays, long long max_abs_d)
{
    if (max_rays < 3 || max_abs_d < 1) {
        throw InputError("census needs --max-rays >= 3 and --max-abs-d >= 1");
    }
    const CensusTable table = census(max_rays, max_abs_d);
    json rows = json::array();
    for (const auto& row : table.rows) {
        rows.push_back({{"code", report::integers(row.code.d)}, {"verdict", to_string(row.classification.verdict)}});
    }
    json summary = json::object();
    for (const auto& [verdict, count] : table.counts) {
        summary[to_string(verdict)] = count;
    }
    return {{"command", "census"},
            {"max_rays", max_rays},
            {"max_abs_d", max_abs_d},
            {"rows", rows},
            {"summary", summary},
            {"total", table.rows.size()}};
}

inline json run_render(const std::string& fan_path, const std::string& divisor_path, bool anticanonical_flag,
                       const std::string& output_path)
{
    const auto [doc, fan] = detail::load_fan(fan_path);
    if (fan.dim() != 2) {
        throw ValidationError("rendering supports dimension 2 only");
    }
    std::optional<LatticePolytope> polytope;
    if (auto divisor = detail::choose_divisor(fan, divisor_path, anticanonical_flag, false)) {
        detail::require_complete(fan);
        polytope = polytope_from_divisor(fan, *divisor);
    }
    const std::string svg = render_svg(fan, polytope);
    std::ofstream file(output_path, std::ios::binary);
    if (!file) {
        throw InputError("cannot write " + output_path);
    }
    file << svg;
    return {{"command", "render"}, {"output", output_path}, {"bytes", svg.size()}};
}

/// Parses `args` (without the program name) and runs one command.
inline CliResult run(const std::vector<std::string>& args)
{
    CLI::App app{"Tangent bundle splitting types on smooth complete toric varieties", "toric"};
    app.require_subcommand(1);

    std::string fan_path;
    std::string divisor_path;
    std::string output_path;
    bool anticanonical_flag = false;
    std::vector<std::size_t> wall_rays;
    std::size_t max_rays = 0;
    long long max_abs_d = 0;

    auto* validate = app.add_subcommand("validate", "Check that FAN is a smooth complete fan");
    validate->add_option("FAN", fan_path, "fan JSON file")->required();

    auto* splitting = app.add_subcommand("splitting", "Splitting type of T_X on every wall (or one)");
    splitting->add_option("FAN", fan_path, "fan JSON file")->required();
    splitting->add_option("--wall", wall_rays, "indices of the rays spanning the wall, e.g. 2 or 0,1")
        ->delimiter(',');

    auto* classify = app.add_subcommand("classify", "Ample / nef / not nef verdict for T_X");
    classify->add_option("FAN", fan_path, "fan JSON file")->required();

    auto add_divisor_options = [&](CLI::App* cmd) {
        cmd->add_option("--divisor", divisor_path, "divisor JSON file");
        cmd->add_flag("--anticanonical", anticanonical_flag, "use -K (all coefficients 1)");
    };
    auto* polytope = app.add_subcommand("polytope", "Vertices, edges and 2-faces of P(X, D)");
    polytope->add_option("FAN", fan_path, "fan JSON file")->required();
    add_divisor_options(polytope);

    auto* angles = app.add_subcommand("angles", "Angle-sum signs on every (edge, 2-face) pair");
    angles->add_option("FAN", fan_path, "fan JSON file")->required();
    add_divisor_options(angles);

    auto* verify = app.add_subcommand("verify", "Check 'T_X ample implies P^n' on FAN");
    verify->add_option("FAN", fan_path, "fan JSON file")->required();
    verify->add_option("--divisor", divisor_path, "ample divisor JSON file");

    auto* census_cmd = app.add_subcommand("census", "Classify all enumerated smooth complete toric surfaces");
    census_cmd->add_option("--max-rays", max_rays, "largest ray count")->required();
    census_cmd->add_option("--max-abs-d", max_abs_d, "largest |self-intersection|")->required();

    auto* render = app.add_subcommand("render", "Draw a 2D fan (and polytope) as SVG");
    render->add_option("FAN", fan_path, "fan JSON file")->required();
    add_divisor_options(render);
    render->add_option("-o,--output", output_path, "SVG file to write")->required();

    CliResult result;
    std::ostringstream out;
    std::ostringstream err;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        result.exit_code = app.exit(e, out, err) == 0 ? kOk : kInputError;
        result.out = out.str();
        result.err = err.str();
        return result;
    }

    json report;
    int exit_code = kOk;
    try {
        if (validate->parsed()) {
            report = run_validate(fan_path, exit_code);
        } else if (splitting->parsed()) {
            report = run_splitting(fan_path, wall_rays);
        } else if (classify->parsed()) {
            report = run_classify(fan_path);
        } else if (polytope->parsed()) {
            report = run_polytope(fan_path, divisor_path, anticanonical_flag);
        } else if (angles->parsed()) {
            report = run_angles(fan_path, divisor_path, anticanonical_flag);
        } else if (verify->parsed()) {
            report = run_verify(fan_path, divisor_path, exit_code);
        } else if (census_cmd->parsed()) {
            report = run_census(max_rays, max_abs_d);
        } else if (render->parsed()) {
            report = run_render(fan_path, divisor_path, anticanonical_flag, output_path);
        }
    } catch (const InputError& e) {
        report = detail::error_report("input", e.what());
        err << "error: " << e.what() << '\n';
        exit_code = kInputError;
    } catch (const ValidationError& e) {
        report = detail::error_report("validation", e.what());
        err << "error: " << e.what() << '\n';
        exit_code = kValidationFailure;
    } catch (const std::exception& e) {
        report = detail::error_report("internal", e.what());
        err << "error: " << e.what() << '\n';
        exit_code = kInternalFailure;
    }
    result.out = report.dump() + "\n";
    result.err = err.str();
    result.exit_code = exit_code;
    return result;
}

} // namespace toric::io

#endif
