#include <cbns/cli.hpp>

#include <cbns/boundary.hpp>
#include <cbns/cubic.hpp>
#include <cbns/hull.hpp>
#include <cbns/integer_part.hpp>
#include <cbns/io.hpp>
#include <cbns/render.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <numbers>
#include <sstream>

namespace cbns::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

std::vector<std::int64_t> parse_integers(const std::string& text, const std::string& what) {
    std::vector<std::int64_t> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw DomainError(what + ": '" + item + "' is not an integer");
        out.push_back(v);
    }
    return out;
}

std::vector<double> parse_reals(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw DomainError(what + ": '" + item + "' is not a number");
        out.push_back(v);
    }
    return out;
}

LatticePoint parse_point(const std::string& text) {
    const auto v = parse_integers(text, "--point");
    if (v.size() != 2) throw DomainError("--point expects A,B");
    return {v[0], v[1]};
}

DigitString parse_digits(const std::string& text, const std::string& what) {
    DigitString d;
    for (std::int64_t v : parse_integers(text, what)) {
        if (v < 0 || v > 1000000) throw DomainError(what + ": digit " + std::to_string(v) + " out of range");
        d.digits.push_back(static_cast<int>(v));
    }
    return d;
}

Json point_json(LatticePoint p) { return Json::array({p.a, p.b}); }

Json point3_json(const LatticePoint3& p) { return Json::array({p.x0, p.x1, p.x2}); }

Json digits_json(const DigitString& d) { return Json(d.digits); }

Json header(const std::string& command) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

std::string complex_text(Complex c) { return format_number(c.real()) + "," + format_number(c.imag()); }

// Each subcommand registers its options and a body to run after parsing.
struct Command {
    CLI::App* app = nullptr;
    std::function<void()> body;
};

struct SystemFlags {
    int n = 2;
    int d = -1;

    void add(CLI::App* app) {
        app->add_option("--n", n, "digit count n >= 2")->required();
        app->add_option("--d", d, "trace D with D^2 < 4n")->required()->allow_extra_args(false);
    }
    System system() const { return make_system(n, d); }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"complex-base numeral systems z^2 = D z - n", "cbns"};
    app.require_subcommand(1);
    std::vector<Command> commands;
    bool json = false;

    // classify
    SystemFlags classify_sys;
    {
        auto* c = app.add_subcommand("classify", "properness class and fixed points");
        classify_sys.add(c);
        c->add_flag("--json", json, "machine-readable output");
        commands.push_back({c, [&] {
                                const PropernessClass pc = classify(classify_sys.system());
                                if (json) {
                                    Json j = header("classify");
                                    j["n"] = classify_sys.n;
                                    j["D"] = classify_sys.d;
                                    j["tag"] = std::string(to_string(pc.tag));
                                    j["proper"] = pc.tag == ProperTag::Proper;
                                    j["fixed_points"] = Json::array();
                                    for (LatticePoint p : pc.fixed_points) j["fixed_points"].push_back(point_json(p));
                                    out << j.dump(2) << "\n";
                                } else {
                                    out << "tag: " << to_string(pc.tag) << "\nfixed points:";
                                    for (LatticePoint p : pc.fixed_points) out << " " << to_string(p);
                                    out << "\n";
                                }
                            }});
    }

    // encode
    SystemFlags encode_sys;
    std::string encode_point;
    {
        auto* c = app.add_subcommand("encode", "digits of a lattice point a + b z");
        encode_sys.add(c);
        c->add_option("--point", encode_point, "A,B")->required();
        c->add_flag("--json", json, "machine-readable output");
        commands.push_back({c, [&] {
                                const EncodeResult r = encode(encode_sys.system(), parse_point(encode_point));
                                if (json) {
                                    Json j = header("encode");
                                    j["digits"] = digits_json(r.digits);
                                    j["terminal"] = point_json(r.terminal);
                                    out << j.dump(2) << "\n";
                                } else {
                                    out << "digits " << to_string(r.digits) << " terminal " << to_string(r.terminal)
                                        << "\n";
                                }
                            }});
    }

    // decode
    SystemFlags decode_sys;
    std::string decode_digits;
    {
        auto* c = app.add_subcommand("decode", "lattice point of a digit string (least significant first)");
        decode_sys.add(c);
        c->add_option("--digits", decode_digits, "d0,d1,...")->required();
        c->add_flag("--json", json, "machine-readable output");
        commands.push_back({c, [&] {
                                const LatticePoint p = decode(decode_sys.system(), parse_digits(decode_digits, "--digits"));
                                if (json) {
                                    Json j = header("decode");
                                    j["point"] = point_json(p);
                                    out << j.dump(2) << "\n";
                                } else {
                                    out << "point " << to_string(p) << "\n";
                                }
                            }});
    }

    // add
    SystemFlags add_sys;
    std::string add_x, add_y;
    {
        auto* c = app.add_subcommand("add", "sum of two digit strings, normalized");
        add_sys.add(c);
        c->add_option("--x", add_x, "d0,d1,...")->required();
        c->add_option("--y", add_y, "d0,d1,...")->required();
        c->add_flag("--json", json, "machine-readable output");
        commands.push_back({c, [&] {
                                const EncodeResult r = add(add_sys.system(), parse_digits(add_x, "--x"),
                                                           parse_digits(add_y, "--y"));
                                if (json) {
                                    Json j = header("add");
                                    j["digits"] = digits_json(r.digits);
                                    j["terminal"] = point_json(r.terminal);
                                    out << j.dump(2) << "\n";
                                } else {
                                    out << "digits " << to_string(r.digits) << " terminal " << to_string(r.terminal)
                                        << "\n";
                                }
                            }});
    }

    // hull
    SystemFlags hull_sys;
    int hull_dirs = 4096;
    std::string hull_svg;
    {
        auto* c = app.add_subcommand("hull", "convex hull of the fractional tile");
        hull_sys.add(c);
        c->add_option("--dirs", hull_dirs, "support directions")->capture_default_str();
        c->add_option("--svg", hull_svg, "write the hull polygon as SVG");
        c->add_flag("--json", json, "machine-readable output");
        commands.push_back({c, [&] {
                                const System s = hull_sys.system();
                                const HullMetrics m = hull_metrics(s);
                                const Polygon poly = hull_polygon(make_hull_model(s), hull_dirs);
                                if (!hull_svg.empty()) write_file(hull_svg, encode_svg({{poly.vertices, true}}));
                                if (json) {
                                    Json j = header("hull");
                                    j["perimeter"] = m.perimeter;
                                    j["polygon_perimeter"] = poly.perimeter();
                                    j["hull_area"] = m.hull_area;
                                    j["polygon_area"] = poly.signed_area();
                                    j["tile_area"] = m.tile_area;
                                    j["center"] = Json::array({m.center.real(), m.center.imag()});
                                    j["directions"] = hull_dirs;
                                    out << j.dump(2) << "\n";
                                } else {
                                    out << "perimeter " << format_number(m.perimeter) << " (polygon "
                                        << format_number(poly.perimeter()) << ")\n"
                                        << "hull area " << format_number(m.hull_area) << " (polygon "
                                        << format_number(poly.signed_area()) << ")\n"
                                        << "tile area " << format_number(m.tile_area) << "\n"
                                        << "center " << complex_text(m.center) << "\n";
                                }
                            }});
    }

    // dim
    SystemFlags dim_sys;
    double dim_tol = 1e-12;
    {
        auto* c = app.add_subcommand("dim", "boundary dimension log(lambda)/log(sqrt n)");
        dim_sys.add(c);
        c->add_option("--tol", dim_tol, "power-iteration tolerance")->capture_default_str();
        c->add_flag("--json", json, "machine-readable output");
        commands.push_back({c, [&] {
                                const double h = boundary_dimension(dim_sys.system(), dim_tol);
                                char buf[64];
                                std::snprintf(buf, sizeof buf, "%.9f", h);
                                if (json) {
                                    Json j = header("dim");
                                    j["n"] = dim_sys.n;
                                    j["D"] = dim_sys.d;
                                    j["dimension"] = h;
                                    out << j.dump(2) << "\n";
                                } else {
                                    out << buf << "\n";
                                }
                            }});
    }

    // dim-table
    int table_max_n = 9;
    std::string table_csv;
    {
        auto* c = app.add_subcommand("dim-table", "boundary dimensions for n = 2..max-n, D >= 0");
        c->add_option("--max-n", table_max_n, "largest n")->capture_default_str();
        c->add_option("--csv", table_csv, "output CSV (columns n,D,H)")->required();
        commands.push_back({c, [&] {
                                if (table_max_n < 2) throw DomainError("--max-n must be at least 2");
                                std::vector<std::vector<std::string>> rows;
                                for (int n = 2; n <= table_max_n; ++n) {
                                    for (int d = 0; d * d < 4 * n; ++d) {
                                        rows.push_back({std::to_string(n), std::to_string(d),
                                                        format_number(boundary_dimension(make_system(n, d)))});
                                    }
                                }
                                write_file(table_csv, encode_csv({"n", "D", "H"}, rows));
                                out << "wrote " << rows.size() << " rows to " << table_csv
                                    << " (D and -D give the same dimension: the tiles differ by a reflection and a "
                                       "translation)\n";
                            }});
    }

    // boundary
    SystemFlags boundary_sys;
    int boundary_k = 6;
    std::string boundary_svg;
    {
        auto* c = app.add_subcommand("boundary", "level-k boundary chain of the fractional tile");
        boundary_sys.add(c);
        c->add_option("--k", boundary_k, "refinement level")->capture_default_str();
        c->add_option("--svg", boundary_svg, "output SVG")->required();
        c->add_flag("--json", json, "machine-readable output");
        commands.push_back({c, [&] {
                                const System s = boundary_sys.system();
                                const std::vector<Complex> line = boundary_polyline(s, boundary_k);
                                const Polygon hull = hull_polygon(make_hull_model(s), 4096);
                                write_file(boundary_svg, encode_svg({{hull.vertices, true, "#999999"},
                                                                     {line, true, "#000000"}}));
                                if (json) {
                                    Json j = header("boundary");
                                    j["level"] = boundary_k;
                                    j["points"] = line.size();
                                    j["svg"] = boundary_svg;
                                    out << j.dump(2) << "\n";
                                } else {
                                    out << "wrote " << line.size() << " chain points to " << boundary_svg << "\n";
                                }
                            }});
    }

    // render
    SystemFlags render_sys;
    std::string render_mode;
    int render_k = 12;
    int render_res = 512;
    double render_radius = 0;
    std::int64_t render_samples = 0;
    std::uint64_t render_seed = 1;
    int render_workers = 0;
    std::string render_out;
    {
        auto* c = app.add_subcommand("render", "raster image (frac: fractional tile, int: integer part, "
                                               "attr: attractors of a lattice ball)");
        c->add_option("mode", render_mode, "frac | int | attr")
            ->required()
            ->check(CLI::IsMember({"frac", "int", "attr"}));
        render_sys.add(c);
        c->add_option("--k", render_k, "digit count")->capture_default_str();
        c->add_option("--res", render_res, "pixels per side")->capture_default_str();
        c->add_option("--radius", render_radius, "attr: ball radius (default 3 sqrt n)");
        c->add_option("--samples", render_samples, "frac: random samples instead of all n^k strings")
            ->capture_default_str();
        c->add_option("--seed", render_seed, "frac: sampling seed")->capture_default_str();
        c->add_option("--workers", render_workers, "threads (0: all cores)")->capture_default_str();
        c->add_option("--out", render_out, "output PPM")->required();
        commands.push_back({c, [&] {
                                const System s = render_sys.system();
                                RasterImage img;
                                if (render_mode == "frac") {
                                    img = raster_fractional(s, render_k, render_res, {render_samples, render_seed},
                                                            render_workers);
                                } else if (render_mode == "int") {
                                    img = raster_integer(s, render_k, render_res);
                                } else {
                                    const double radius =
                                        render_radius > 0 ? render_radius : 3.0 * std::sqrt(static_cast<double>(s.n));
                                    img = raster_attractors(s, radius, render_res);
                                }
                                write_file(render_out, encode_ppm(img));
                                out << "wrote " << img.width << "x" << img.height << " image (" << img.nonempty()
                                    << " pixels set) to " << render_out << "\n";
                            }});
    }

    // coverage
    SystemFlags coverage_sys;
    int coverage_k = 12;
    int coverage_res = 512;
    int coverage_sub = 3;
    int coverage_workers = 0;
    std::string coverage_window = "-2,-2,2,2";
    std::string coverage_translates = "integer";
    {
        auto* c = app.add_subcommand("coverage", "tiling coverage and overlap of level-k cells");
        coverage_sys.add(c);
        c->add_option("--k", coverage_k, "level")->capture_default_str();
        c->add_option("--res", coverage_res, "pixels per side")->capture_default_str();
        c->add_option("--window", coverage_window, "X0,Y0,X1,Y1")->capture_default_str();
        c->add_option("--translates", coverage_translates, "integer (encode terminal 0) | all")
            ->check(CLI::IsMember({"integer", "all"}))
            ->capture_default_str();
        c->add_option("--samples-per-axis", coverage_sub, "samples per pixel side")->capture_default_str();
        c->add_option("--workers", coverage_workers, "threads (0: all cores)")->capture_default_str();
        c->add_flag("--json", json, "machine-readable output");
        commands.push_back({c, [&] {
                                const auto w = parse_reals(coverage_window, "--window");
                                if (w.size() != 4) throw DomainError("--window expects X0,Y0,X1,Y1");
                                const TranslateSet set = coverage_translates == "all" ? TranslateSet::AllLattice
                                                                                      : TranslateSet::IntegerPart;
                                const CoverageReport r =
                                    coverage_report(coverage_sys.system(), coverage_k, coverage_res,
                                                    {{w[0], w[1]}, {w[2], w[3]}}, set, coverage_sub, coverage_workers);
                                if (json) {
                                    Json j = header("coverage");
                                    j["level"] = r.level;
                                    j["resolution"] = r.resolution;
                                    j["samples_per_axis"] = r.samples_per_axis;
                                    j["window"] = w;
                                    j["translates"] = coverage_translates;
                                    j["covered_fraction"] = r.covered_fraction;
                                    j["overlap_fraction"] = r.overlap_fraction;
                                    j["covered_samples"] = r.covered_samples;
                                    j["overlap_samples"] = r.overlap_samples;
                                    j["total_samples"] = r.total_samples;
                                    out << j.dump(2) << "\n";
                                } else {
                                    out << "covered " << format_number(r.covered_fraction) << " overlap "
                                        << format_number(r.overlap_fraction) << "\n";
                                }
                            }});
    }

    // sweep
    int sweep_n = 2;
    double sweep_min = std::numbers::pi / 2;
    double sweep_max = std::numbers::pi;
    int sweep_steps = 64;
    int sweep_depth = 20;
    int sweep_grid = 128;
    int sweep_workers = 0;
    std::string sweep_csv;
    {
        auto* c = app.add_subcommand("sweep", "box-counting dimension of the fractional set for z = sqrt(n) e^{i phi}");
        c->add_option("--n", sweep_n, "digit count")->capture_default_str();
        c->add_option("--phi-min", sweep_min, "first angle (radians)")->capture_default_str();
        c->add_option("--phi-max", sweep_max, "last angle (radians)")->capture_default_str();
        c->add_option("--steps", sweep_steps, "angles, endpoints included")->capture_default_str();
        c->add_option("--depth", sweep_depth, "digits per point")->capture_default_str();
        c->add_option("--grid", sweep_grid, "finest boxes per axis (multiple of 16)")->capture_default_str();
        c->add_option("--workers", sweep_workers, "threads (0: all cores)")->capture_default_str();
        c->add_option("--csv", sweep_csv, "output CSV (columns phi,dimension)")->required();
        commands.push_back({c, [&] {
                                const auto rows =
                                    dimension_sweep(sweep_n, sweep_min, sweep_max, sweep_steps, sweep_depth, sweep_grid,
                                                    sweep_workers);
                                std::vector<std::vector<std::string>> cells;
                                for (const SweepRow& r : rows) cells.push_back({format_number(r.phi), format_number(r.estimate)});
                                write_file(sweep_csv, encode_csv({"phi", "dimension"}, cells));
                                out << "wrote " << rows.size() << " rows to " << sweep_csv << "\n";
                            }});
    }

    // cubic
    int cubic_m = 2;
    int cubic_a = 0;
    bool cubic_positive = false;
    {
        auto* c = app.add_subcommand("cubic", "attractors of the cubic system (-r^3, -A r, A, 1)_z = 0");
        c->add_option("--m", cubic_m, "|r| >= 2")->required();
        c->add_option("--a", cubic_a, "coefficient A")->required();
        c->add_flag("--positive-r", cubic_positive, "r = +m instead of -m");
        c->add_flag("--json", json, "machine-readable output");
        commands.push_back({c, [&] {
                                const CubicSystem cs = cubic_system(cubic_m, cubic_a, cubic_positive ? 1 : -1);
                                const CubicClass k = classify3(cs);
                                if (json) {
                                    Json j = header("cubic");
                                    j["r"] = cs.r;
                                    j["A"] = cs.A;
                                    j["n"] = cs.n;
                                    j["phi"] = cs.phi;
                                    j["radius"] = k.radius;
                                    j["proper"] = k.proper;
                                    j["attractors"] = Json::array();
                                    for (const Attractor3& a : k.attractors) {
                                        Json e;
                                        e["kind"] = a.kind == AttractorKind::FixedPoint ? "fixed_point" : "cycle";
                                        e["points"] = Json::array();
                                        for (const auto& p : a.points) e["points"].push_back(point3_json(p));
                                        j["attractors"].push_back(e);
                                    }
                                    out << j.dump(2) << "\n";
                                } else {
                                    out << "r " << cs.r << " n " << cs.n << " phi " << format_number(cs.phi)
                                        << (k.proper ? " proper" : " not proper") << "\n";
                                    for (const Attractor3& a : k.attractors) {
                                        out << (a.kind == AttractorKind::FixedPoint ? "fixed point" : "cycle");
                                        for (const auto& p : a.points) out << " (" << to_string(p) << ")";
                                        out << "\n";
                                    }
                                }
                            }});
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        for (const Command& c : commands) {
            if (c.app->parsed()) c.body();
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace cbns::cli
