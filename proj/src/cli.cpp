#include "setdepth/cli.hpp"

#include "setdepth/errors.hpp"
#include "setdepth/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace setdepth {

namespace {

struct Options {
    std::vector<std::string> bodies;
    std::string dist;
    std::string sample_csv;
    std::string method = "auto";
    std::optional<std::size_t> m;
    std::uint64_t seed = 0;
    std::optional<double> alpha;
    std::optional<double> epsilon;
    std::vector<std::size_t> n_grid;
    std::string out;
    std::string format;
    std::string config;
    std::string depth_fn = "tukey";
    std::optional<std::size_t> trials;
};

DiscreteSetDistribution load_law(const Options& o) {
    if (!o.dist.empty() && !o.sample_csv.empty()) {
        throw ValidationError("--dist/--sample-csv: give exactly one");
    }
    if (!o.dist.empty()) return io::load_distribution(o.dist);
    if (!o.sample_csv.empty()) return io::load_sample_csv(o.sample_csv);
    throw ValidationError("--dist: required (or --sample-csv)");
}

DepthConfig depth_config(const Options& o) {
    DepthConfig c;
    c.method = parse_depth_method(o.method);
    if (o.m && *o.m == 0) throw ValidationError("--m: must be >= 1");
    c.direction_budget = o.m;
    c.seed = o.seed;
    return c;
}

std::string format_or(const Options& o, const std::string& fallback) {
    const auto f = o.format.empty() ? fallback : o.format;
    if (f != "json" && f != "csv") throw ValidationError("--format: expected json or csv, got '" + f + "'");
    return f;
}

std::string direction_text(const UnitDirection& u) {
    std::string s;
    for (int i = 0; i < u.dimension(); ++i) s += (i ? " " : "") + io::format_double(u[i]);
    return s;
}

void check_alpha(const Options& o) {
    if (o.alpha && !(*o.alpha >= 0.0 && *o.alpha <= 1.0)) throw ValidationError("--alpha: must lie in [0, 1]");
}

void check_dimension(const ConvexBody& body, const DiscreteSetDistribution& dist, const std::string& source) {
    if (body.dimension() != dist.dimension()) {
        throw ValidationError("--body " + source + ": dimension " + std::to_string(body.dimension()) +
                              " does not match distribution dimension " + std::to_string(dist.dimension()));
    }
}

std::string cmd_depth(const Options& o) {
    if (o.bodies.size() != 1) throw ValidationError("--body: depth takes exactly one body");
    check_alpha(o);
    const auto dist = load_law(o);
    const auto body = io::load_body(o.bodies[0]);
    check_dimension(body, dist, o.bodies[0]);
    const auto report = depth(body, dist, depth_config(o));
    const bool member = o.alpha && report.value.to_double() >= *o.alpha - kGeometryTolerance;
    std::ostringstream out;
    if (format_or(o, "json") == "json") {
        auto j = io::to_json(report);
        j["seed"] = o.seed;
        if (o.alpha) {
            j["alpha"] = *o.alpha;
            j["in_contour"] = member;
        }
        out << j.dump(2) << '\n';
    } else {
        out << "value,fraction,direction,side,method,directions_used,seed" << (o.alpha ? ",alpha,in_contour" : "")
            << '\n';
        out << io::format_double(report.value.to_double()) << ',' << report.value.to_string() << ','
            << direction_text(report.witness_direction) << ',' << to_string(report.witness_side) << ','
            << to_string(report.method) << ',' << report.directions_used << ',' << o.seed;
        if (o.alpha) out << ',' << io::format_double(*o.alpha) << ',' << (member ? "true" : "false");
        out << '\n';
    }
    return out.str();
}

std::string cmd_rank(const Options& o) {
    if (o.bodies.empty()) throw ValidationError("--body: rank needs at least one body");
    check_alpha(o);
    const auto dist = load_law(o);
    std::vector<ConvexBody> bodies;
    for (const auto& path : o.bodies) {
        bodies.push_back(io::load_body(path));
        check_dimension(bodies.back(), dist, path);
    }
    const auto ranked = rank(bodies, dist, depth_config(o));
    std::ostringstream out;
    if (format_or(o, "csv") == "csv") {
        out << "id,body,depth,fraction,direction,side,method,seed" << (o.alpha ? ",in_contour" : "") << '\n';
        for (const auto& r : ranked) {
            out << r.index << ',' << io::csv_field(r.body.describe()) << ','
                << io::format_double(r.report.value.to_double()) << ',' << r.report.value.to_string() << ','
                << direction_text(r.report.witness_direction) << ',' << to_string(r.report.witness_side) << ','
                << to_string(r.report.method) << ',' << o.seed;
            if (o.alpha) out << ',' << (r.report.value.to_double() >= *o.alpha - kGeometryTolerance ? "true" : "false");
            out << '\n';
        }
    } else {
        io::Json rows = io::Json::array();
        for (const auto& r : ranked) {
            auto j = io::to_json(r.report);
            j["id"] = r.index;
            j["source"] = o.bodies[r.index];
            j["body"] = io::to_json(r.body);
            rows.push_back(j);
        }
        out << io::Json{{"seed", o.seed}, {"ranking", rows}}.dump(2) << '\n';
    }
    return out.str();
}

std::string cmd_hausdorff(const Options& o) {
    if (o.bodies.size() != 2) throw ValidationError("--body: hausdorff takes exactly two bodies");
    const auto a = io::load_body(o.bodies[0]);
    const auto b = io::load_body(o.bodies[1]);
    if (a.dimension() != b.dimension()) throw ValidationError("--body: dimension mismatch");
    const auto h = hausdorff(a, b);
    std::ostringstream out;
    if (format_or(o, "json") == "json") {
        io::Json j{{"distance", h.value}, {"method", h.method()}};
        if (!h.exact) j["directions"] = h.directions;
        out << j.dump(2) << '\n';
    } else {
        out << "distance,method,directions\n"
            << io::format_double(h.value) << ',' << h.method() << ',' << h.directions << '\n';
    }
    return out.str();
}

std::string cmd_median(const Options& o) {
    const auto dist = load_law(o);
    if (dist.dimension() != 1) throw ValidationError("--dist: median requires dimension 1");
    const auto med = tukey_median_1d(dist);
    const auto report = depth(med, dist);
    const auto& iv = std::get<Interval>(med.shape());
    std::ostringstream out;
    if (format_or(o, "json") == "json") {
        io::Json j{{"median", io::to_json(med)}, {"depth", report.value.to_double()}, {"fraction", report.value.to_string()}};
        out << j.dump(2) << '\n';
    } else {
        out << "a,b,depth,fraction\n"
            << io::format_double(iv.a) << ',' << io::format_double(iv.b) << ','
            << io::format_double(report.value.to_double()) << ',' << report.value.to_string() << '\n';
    }
    return out.str();
}

std::string cmd_properties(const Options& o, const CLI::App& sub) {
    SuiteConfig config;
    if (sub.count("--seed")) config.seed = o.seed;
    if (!o.config.empty()) {
        config = io::suite_config_from_json(io::parse_json_text(io::read_file(o.config), o.config), config);
        if (sub.count("--seed")) config.seed = o.seed;
    }
    if (o.epsilon) {
        if (!(*o.epsilon > 0.0)) throw ValidationError("--epsilon: must be > 0");
        config.epsilon = *o.epsilon;
    }
    if (!o.n_grid.empty()) config.n_grid = o.n_grid;
    if (o.trials) config.trials = *o.trials;
    const auto fn = depth_function_by_name(o.depth_fn, depth_config(o));
    const auto report = run_suite(fn, config);
    std::ostringstream out;
    if (format_or(o, "json") == "json") {
        out << io::to_json(report).dump(2) << '\n';
    } else {
        io::write_suite_csv(out, report);
    }
    return out.str();
}

std::string cmd_consistency(const Options& o) {
    const double eps = o.epsilon.value_or(0.05);
    if (!(eps > 0.0)) throw ValidationError("--epsilon: must be > 0 (the bound degenerates at 0)");
    const auto dist = load_law(o);
    std::vector<ConvexBody> bodies;
    for (const auto& path : o.bodies) {
        bodies.push_back(io::load_body(path));
        check_dimension(bodies.back(), dist, path);
    }
    if (bodies.empty()) {
        bodies = dist.bodies();
        if (dist.dimension() == 1) bodies.push_back(tukey_median_1d(dist));
    }
    const auto grid = o.n_grid.empty() ? std::vector<std::size_t>{100, 1000, 10000} : o.n_grid;
    for (auto n : grid) {
        if (n == 0) throw ValidationError("--n-grid: entries must be >= 1");
    }
    const auto table = consistency_experiment(dist, bodies, grid, eps, o.seed);
    std::ostringstream out;
    if (format_or(o, "csv") == "csv") {
        io::write_convergence_csv(out, table);
    } else {
        out << io::Json{{"epsilon", eps}, {"seed", o.seed}, {"rows", io::to_json(table)}}.dump(2) << '\n';
    }
    return out.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tukey depth of compact convex sets"};
    app.require_subcommand(1);
    Options o;

    auto add_law = [&](CLI::App* s) {
        s->add_option("--dist", o.dist, "distribution JSON");
        s->add_option("--sample-csv", o.sample_csv, "p=1 sample CSV with header a,b");
    };
    auto add_depth = [&](CLI::App* s) {
        s->add_option("--method", o.method, "auto|exact|sampled");
        s->add_option("--m", o.m, "direction budget for the sampled engine");
    };
    auto add_common = [&](CLI::App* s) {
        s->add_option("--seed", o.seed, "seed");
        s->add_option("--out", o.out, "output path (default stdout)");
        s->add_option("--format", o.format, "json|csv");
    };

    auto* depth_cmd = app.add_subcommand("depth", "depth of one body");
    depth_cmd->add_option("--body", o.bodies, "body JSON");
    depth_cmd->add_option("--alpha", o.alpha, "report membership in the alpha contour");
    add_law(depth_cmd);
    add_depth(depth_cmd);
    add_common(depth_cmd);

    auto* rank_cmd = app.add_subcommand("rank", "order bodies by depth");
    rank_cmd->add_option("--body", o.bodies, "body JSON (repeatable)");
    rank_cmd->add_option("--alpha", o.alpha, "report membership in the alpha contour");
    add_law(rank_cmd);
    add_depth(rank_cmd);
    add_common(rank_cmd);

    auto* haus_cmd = app.add_subcommand("hausdorff", "Hausdorff distance of two bodies");
    haus_cmd->add_option("--body", o.bodies, "body JSON (twice)");
    add_common(haus_cmd);

    auto* median_cmd = app.add_subcommand("median", "Tukey median interval (p=1)");
    add_law(median_cmd);
    add_common(median_cmd);

    auto* prop_cmd = app.add_subcommand("properties", "run the property suite");
    prop_cmd->add_option("--config", o.config, "suite config JSON");
    prop_cmd->add_option("--depth-fn", o.depth_fn, "tukey or a mutant name");
    prop_cmd->add_option("--epsilon", o.epsilon, "consistency tolerance");
    prop_cmd->add_option("--n-grid", o.n_grid, "sample sizes for consistency")->delimiter(',');
    prop_cmd->add_option("--trials", o.trials, "trials for P1, P4 and P5");
    add_depth(prop_cmd);
    add_common(prop_cmd);

    auto* cons_cmd = app.add_subcommand("consistency", "sample depth convergence table");
    cons_cmd->add_option("--body", o.bodies, "test body JSON (repeatable; default atoms)");
    cons_cmd->add_option("--epsilon", o.epsilon, "tolerance in the DKW envelope");
    cons_cmd->add_option("--n-grid", o.n_grid, "sample sizes")->delimiter(',');
    add_law(cons_cmd);
    add_common(cons_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        std::string result;
        if (*depth_cmd) result = cmd_depth(o);
        else if (*rank_cmd) result = cmd_rank(o);
        else if (*haus_cmd) result = cmd_hausdorff(o);
        else if (*median_cmd) result = cmd_median(o);
        else if (*prop_cmd) result = cmd_properties(o, *prop_cmd);
        else result = cmd_consistency(o);

        if (o.out.empty()) {
            out << result;
        } else {
            std::ofstream f(o.out, std::ios::binary);
            if (!f) throw ValidationError("--out: cannot open '" + o.out + "' for writing");
            f << result;
        }
        return kExitOk;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "computation error: " << e.what() << '\n';
        return kExitComputation;
    }
}

}  // namespace setdepth
