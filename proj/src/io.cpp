#include "setdepth/io.hpp"

#include "setdepth/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace setdepth::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ValidationError(path + ": " + what); }

const Json& field(const Json& j, const std::string& path, const char* key) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing");
    return *it;
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "not finite");
    return v;
}

Vector vector_from(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of numbers");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = number(j[i], path + "[" + std::to_string(i) + "]");
    }
    return v;
}

Json vector_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

double parse_csv_number(const std::string& text, const std::string& where) {
    const auto t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v)) {
        fail(where, "expected a number, got '" + t + "'");
    }
    return v;
}

std::size_t count_field(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

Scenario scenario_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected a scenario name or object");
    const auto& id = field(j, path, "id");
    if (!id.is_string()) fail(path + ".id", "expected a string");
    auto dist = distribution_from_json(field(j, path, "distribution"), path + ".distribution");
    Scenario s{id.get<std::string>(), dist, std::nullopt, false, {}};
    if (j.contains("center")) {
        s.center = body_from_json(j["center"], path + ".center");
        if (s.center->dimension() != dist.dimension()) fail(path + ".center", "dimension mismatch");
    } else if (dist.dimension() == 1) {
        s.center = tukey_median_1d(dist);
    }
    if (j.contains("symmetric")) {
        if (!j["symmetric"].is_boolean()) fail(path + ".symmetric", "expected a boolean");
        s.symmetric = j["symmetric"].get<bool>();
        if (s.symmetric && !s.center) fail(path + ".symmetric", "requires a center");
    }
    if (j.contains("candidates")) {
        const auto& c = j["candidates"];
        if (!c.is_array()) fail(path + ".candidates", "expected an array");
        for (std::size_t i = 0; i < c.size(); ++i) {
            const auto p = path + ".candidates[" + std::to_string(i) + "]";
            s.candidates.push_back(body_from_json(c[i], p));
            if (s.candidates.back().dimension() != dist.dimension()) fail(p, "dimension mismatch");
        }
    } else {
        s.candidates = dist.bodies();
    }
    return s;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw ComputationError("format_double: conversion failed");
    return {buf, ptr};
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

ConvexBody body_from_json(const Json& j, const std::string& path) {
    const auto& type = field(j, path, "type");
    if (!type.is_string()) fail(path + ".type", "expected a string");
    const auto t = type.get<std::string>();
    try {
        if (t == "interval") {
            return ConvexBody::interval(number(field(j, path, "a"), path + ".a"), number(field(j, path, "b"), path + ".b"));
        }
        if (t == "box") {
            return ConvexBody::box(vector_from(field(j, path, "min"), path + ".min"),
                                   vector_from(field(j, path, "max"), path + ".max"));
        }
        if (t == "polytope") {
            const auto& vs = field(j, path, "vertices");
            if (!vs.is_array() || vs.empty()) fail(path + ".vertices", "expected a nonempty array of points");
            std::vector<Vector> pts;
            for (std::size_t i = 0; i < vs.size(); ++i) {
                pts.push_back(vector_from(vs[i], path + ".vertices[" + std::to_string(i) + "]"));
            }
            return ConvexBody::polytope(std::move(pts));
        }
        if (t == "ball") {
            return ConvexBody::ball(vector_from(field(j, path, "center"), path + ".center"),
                                    number(field(j, path, "radius"), path + ".radius"));
        }
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        if (msg.rfind(path, 0) == 0) throw;
        fail(path, msg);
    }
    fail(path + ".type", "unknown body type '" + t + "'");
}

Json to_json(const ConvexBody& body) {
    return std::visit(
        [&](const auto& s) -> Json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Interval>) {
                return Json{{"type", "interval"}, {"a", s.a}, {"b", s.b}};
            } else if constexpr (std::is_same_v<T, Box>) {
                return Json{{"type", "box"}, {"min", vector_json(s.min)}, {"max", vector_json(s.max)}};
            } else if constexpr (std::is_same_v<T, Polytope>) {
                Json vs = Json::array();
                for (const auto& v : s.vertices) vs.push_back(vector_json(v));
                return Json{{"type", "polytope"}, {"vertices", vs}};
            } else if constexpr (std::is_same_v<T, Ball>) {
                return Json{{"type", "ball"}, {"center", vector_json(s.center)}, {"radius", s.radius}};
            } else {
                // no schema for composites: emit a description only
                return Json{{"type", "composite"}, {"dimension", body.dimension()}, {"description", body.describe()}};
            }
        },
        body.shape());
}

DiscreteSetDistribution distribution_from_json(const Json& j, const std::string& path) {
    const auto& dim = field(j, path, "dimension");
    if (!dim.is_number_integer() || dim.get<long long>() < 1) fail(path + ".dimension", "expected an integer >= 1");
    const int p = dim.get<int>();
    const auto& atoms = field(j, path, "atoms");
    if (!atoms.is_array() || atoms.empty()) fail(path + ".atoms", "expected a nonempty array");
    std::vector<ConvexBody> bodies;
    std::vector<double> weights;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const auto ap = path + ".atoms[" + std::to_string(i) + "]";
        bodies.push_back(body_from_json(field(atoms[i], ap, "body"), ap + ".body"));
        if (bodies.back().dimension() != p) {
            fail(ap + ".body", "dimension " + std::to_string(bodies.back().dimension()) + " does not match " +
                                   std::to_string(p));
        }
        const double w = number(field(atoms[i], ap, "prob"), ap + ".prob");
        if (w <= 0.0) fail(ap + ".prob", "must be positive");
        weights.push_back(w);
    }
    try {
        return make_discrete(std::move(bodies), weights);
    } catch (const ValidationError& e) {
        fail(path + ".atoms", e.what());
    }
}

Json to_json(const DiscreteSetDistribution& dist) {
    Json atoms = Json::array();
    for (std::size_t i = 0; i < dist.size(); ++i) {
        atoms.push_back(Json{{"body", to_json(dist.body(i))}, {"prob", dist.weight(i).to_double()}});
    }
    return Json{{"dimension", dist.dimension()}, {"atoms", atoms}};
}

DiscreteSetDistribution distribution_from_sample_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) fail("sample-csv", "empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line) != "a,b") fail("sample-csv line 1", "expected header 'a,b'");
    std::vector<ConvexBody> bodies;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto where = "sample-csv line " + std::to_string(lineno);
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            fail(where, "expected two columns");
        }
        const double a = parse_csv_number(line.substr(0, comma), where + " column a");
        const double b = parse_csv_number(line.substr(comma + 1), where + " column b");
        if (a > b) fail(where, "a > b");
        bodies.push_back(ConvexBody::interval(a, b));
    }
    if (bodies.empty()) fail("sample-csv", "no rows");
    return make_empirical(std::move(bodies));
}

Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(source, std::string("malformed JSON: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ConvexBody load_body(const std::string& path) { return body_from_json(parse_json_text(read_file(path), path), path); }

DiscreteSetDistribution load_distribution(const std::string& path) {
    return distribution_from_json(parse_json_text(read_file(path), path), path);
}

DiscreteSetDistribution load_sample_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    return distribution_from_sample_csv(in);
}

Json to_json(const UnitDirection& u) { return vector_json(u.coords()); }

Json to_json(const DepthReport& report) {
    return Json{{"value", report.value.to_double()},
                {"fraction", report.value.to_string()},
                {"witness", Json{{"direction", to_json(report.witness_direction)}, {"side", to_string(report.witness_side)}}},
                {"method", to_string(report.method)},
                {"directions_used", report.directions_used}};
}

Json to_json(const Counterexample& cex) {
    Json evals = Json::array();
    for (const auto& e : cex.evaluations) {
        evals.push_back(Json{{"label", e.label},
                             {"body", to_json(e.body)},
                             {"distribution", to_json(e.dist)},
                             {"value", e.value}});
    }
    Json out{{"relation", to_string(cex.relation)}, {"lhs", cex.lhs}, {"rhs", cex.rhs}};
    out["bound"] = cex.bound;
    out["tolerance"] = cex.tolerance;
    out["evaluations"] = evals;
    out["note"] = cex.note;
    return out;
}

Json to_json(const PropertyReport& report) {
    Json out{{"property", to_string(report.id)},
             {"verdict", to_string(report.verdict)},
             {"trials", report.trials},
             {"seed", report.seed},
             {"detail", report.detail}};
    if (report.horizon) out["horizon"] = *report.horizon;
    out["counterexample"] = report.counterexample ? to_json(*report.counterexample) : Json(nullptr);
    return out;
}

Json to_json(const SuiteReport& report) {
    Json reports = Json::array();
    for (const auto& r : report.reports) reports.push_back(to_json(r));
    return Json{{"depth_function", report.depth_function},
                {"seed", report.seed},
                {"labels", report.labels},
                {"reports", reports}};
}

void write_suite_csv(std::ostream& out, const SuiteReport& report) {
    std::string labels;
    for (const auto& l : report.labels) labels += (labels.empty() ? "" : ";") + l;
    out << "depth_function,property,verdict,trials,seed,labels,detail\n";
    for (const auto& r : report.reports) {
        out << csv_field(report.depth_function) << ',' << to_string(r.id) << ',' << to_string(r.verdict) << ','
            << r.trials << ',' << r.seed << ',' << csv_field(labels) << ',' << csv_field(r.detail) << '\n';
    }
}

Json to_json(const ConvergenceTable& table) {
    Json rows = Json::array();
    for (const auto& r : table) {
        rows.push_back(Json{{"n", r.n}, {"sup_error", r.sup_error}, {"dkw_bound", r.dkw_bound}, {"seed", r.seed}});
    }
    return rows;
}

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table) {
    out << "n,sup_error,dkw_bound,seed\n";
    for (const auto& r : table) {
        out << r.n << ',' << format_double(r.sup_error) << ',' << format_double(r.dkw_bound) << ',' << r.seed << '\n';
    }
}

std::vector<Scenario> builtin_scenarios(const std::string& name, std::uint64_t seed) {
    if (name == "counterexample") return {counterexample_scenario()};
    if (name == "translates") return {translates_scenario()};
    auto all = default_scenarios(seed);
    if (name == "default") return all;
    for (auto& s : all) {
        if (s.id == name) return {std::move(s)};
    }
    throw ValidationError("scenarios: unknown built-in scenario '" + name + "'");
}

SuiteConfig suite_config_from_json(const Json& j, SuiteConfig base) {
    const std::string path = "config";
    if (!j.is_object()) fail(path, "expected an object");
    if (j.contains("seed")) base.seed = count_field(j["seed"], path + ".seed");
    if (j.contains("trials")) base.trials = count_field(j["trials"], path + ".trials");
    if (j.contains("epsilon")) {
        base.epsilon = number(j["epsilon"], path + ".epsilon");
        if (base.epsilon <= 0.0) fail(path + ".epsilon", "must be > 0");
    }
    if (j.contains("n_grid")) {
        const auto& g = j["n_grid"];
        if (!g.is_array() || g.empty()) fail(path + ".n_grid", "expected a nonempty array");
        base.n_grid.clear();
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto n = count_field(g[i], path + ".n_grid[" + std::to_string(i) + "]");
            if (n == 0) fail(path + ".n_grid[" + std::to_string(i) + "]", "must be >= 1");
            base.n_grid.push_back(n);
        }
    }
    if (j.contains("scenarios")) {
        const auto& sc = j["scenarios"];
        if (!sc.is_array()) fail(path + ".scenarios", "expected an array");
        if (sc.empty()) fail(path + ".scenarios", "empty scenario list");
        base.scenarios.clear();
        for (std::size_t i = 0; i < sc.size(); ++i) {
            const auto sp = path + ".scenarios[" + std::to_string(i) + "]";
            if (sc[i].is_string()) {
                try {
                    for (auto& s : builtin_scenarios(sc[i].get<std::string>(), base.seed)) {
                        base.scenarios.push_back(std::move(s));
                    }
                } catch (const ValidationError& e) {
                    fail(sp, e.what());
                }
            } else {
                base.scenarios.push_back(scenario_from_json(sc[i], sp));
            }
        }
    }
    return base;
}

}  // namespace setdepth::io
