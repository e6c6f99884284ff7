#include "setdepth/properties.hpp"

#include "setdepth/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace setdepth {

namespace {

constexpr double kValueTolerance = 1e-9;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 step
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

const std::vector<double>& lambda_grid() {
    static const std::vector<double> grid = [] {
        std::vector<double> g;
        for (int i = 0; i <= 10; ++i) g.push_back(i / 10.0);
        return g;
    }();
    return grid;
}

Evaluation evaluate(const DepthFunctionUnderTest& fn, std::string label, const ConvexBody& body,
                    const DiscreteSetDistribution& dist) {
    const double v = fn.evaluate(body, dist);
    return {std::move(label), body, dist, v};
}

PropertyReport make_report(PropertyId id, std::uint64_t seed) {
    PropertyReport r;
    r.id = id;
    r.seed = seed;
    return r;
}

void record_failure(PropertyReport& report, Counterexample cex) {
    if (!report.counterexample) {
        report.counterexample = std::move(cex);
    }
    report.verdict = Verdict::kFail;
}

void finish(PropertyReport& report) {
    if (report.verdict != Verdict::kFail) {
        report.verdict = report.trials > 0 ? Verdict::kPass : Verdict::kNotApplicable;
    }
}

std::vector<const Scenario*> with_center(const std::vector<Scenario>& scenarios) {
    std::vector<const Scenario*> out;
    for (const auto& s : scenarios) {
        if (s.center) out.push_back(&s);
    }
    return out;
}

// Directions over which the vanishing threshold is computed.
std::vector<UnitDirection> threshold_directions(int p) {
    auto dirs = default_directions(p);
    if (p > 1) {
        const auto axes = direction_set(p, DirectionStrategy::kAxes, 1, 0);
        dirs.insert(dirs.end(), axes.begin(), axes.end());
    }
    return dirs;
}

double mean_width(const ConvexBody& body) {
    double w = 0.0;
    for (int i = 0; i < body.dimension(); ++i) {
        const auto e = UnitDirection::axis(body.dimension(), i);
        w += body.support(e) + body.support(-e);
    }
    return w / body.dimension();
}

ConvexBody random_small_body(std::mt19937_64& rng, int p) {
    if (p == 1) {
        return random_interval(rng, -1.0, 1.0);
    }
    std::uniform_real_distribution<double> offset(-0.5, 0.5);
    std::uniform_real_distribution<double> radius(0.1, 1.0);
    Vector c(p);
    for (int i = 0; i < p; ++i) c[i] = offset(rng);
    if (p == 2) {
        return random_polygon(rng, c, radius(rng));
    }
    return ConvexBody::ball(c, radius(rng));
}

ConvexBody random_nonzero_body(std::mt19937_64& rng, int p) {
    if (p == 1) {
        for (;;) {
            auto l = random_interval(rng, -3.0, 3.0);
            const auto& iv = std::get<Interval>(l.shape());
            if (iv.a != 0.0 || iv.b != 0.0) return l;
        }
    }
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> radius(0.1, 1.5);
    Vector c(p);
    for (int i = 0; i < p; ++i) c[i] = coord(rng);
    if (p == 2) {
        return random_polygon(rng, c, radius(rng));
    }
    return ConvexBody::ball(c, radius(rng));
}

Vector random_translation(std::mt19937_64& rng, int p) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> length(0.5, 2.0);
    Vector t(p);
    do {
        for (int i = 0; i < p; ++i) t[i] = normal(rng);
    } while (t.norm() < 1e-6);
    return t.normalized() * length(rng);
}

std::string matrix_note(const Matrix& m) {
    std::ostringstream os;
    os.precision(17);
    os << "M = [";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    }
    os << "]";
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Depth functions

DepthFunctionUnderTest tukey_depth_function(const DepthConfig& config) {
    return {"tukey", [config](const ConvexBody& k, const DiscreteSetDistribution& d) {
                return depth(k, d, config).value.to_double();
            }};
}

DepthFunctionUnderTest mutant_constant(double value) {
    return {"constant", [value](const ConvexBody&, const DiscreteSetDistribution&) { return value; }};
}

DepthFunctionUnderTest mutant_first_axis_only() {
    return {"first-axis-only", [](const ConvexBody& k, const DiscreteSetDistribution& d) {
                const auto u = UnitDirection::axis(k.dimension(), 0);
                return halfspace_depth_1d(k.support(u), support_law(d, u), kGeometryTolerance).to_double();
            }};
}

DepthFunctionUnderTest mutant_strict_inequalities() {
    return {"strict", [](const ConvexBody& k, const DiscreteSetDistribution& d) {
                std::vector<UnitDirection> dirs;
                if (k.dimension() == 2 && k.is_polytopal() && d.all_polytopal()) {
                    for (double a : exact2d_evaluation_angles(k, d)) dirs.push_back(UnitDirection::from_angle(a));
                } else {
                    dirs = default_directions(k.dimension());
                }
                std::int64_t best = d.total_mass();
                for (const auto& u : dirs) {
                    const double t = k.support(u);
                    std::int64_t below = 0, above = 0;
                    for (std::size_t i = 0; i < d.size(); ++i) {
                        const double v = d.body(i).support(u);
                        if (v < t - kGeometryTolerance) below += d.mass(i);
                        if (v > t + kGeometryTolerance) above += d.mass(i);
                    }
                    best = std::min({best, below, above});
                }
                return Probability(best, d.total_mass()).to_double();
            }};
}

DepthFunctionUnderTest mutant_favor_large() {
    return {"favor-large", [](const ConvexBody& k, const DiscreteSetDistribution&) {
                const double w = std::max(0.0, mean_width(k));
                return w / (1.0 + w);
            }};
}

ConvexBody outlier_body(int dimension) {
    if (dimension == 1) {
        return ConvexBody::interval(100, 101);
    }
    return ConvexBody::box(Vector::Constant(dimension, 100.0), Vector::Constant(dimension, 101.0));
}

DepthFunctionUnderTest mutant_outlier_bump() {
    return {"outlier-bump", [](const ConvexBody& k, const DiscreteSetDistribution& d) {
                if (hausdorff(k, outlier_body(k.dimension())).value <= 0.5) {
                    return 1.0;
                }
                return depth(k, d).value.to_double();
            }};
}

std::vector<std::string> depth_function_names() {
    return {"tukey", "constant", "first-axis-only", "strict", "favor-large", "outlier-bump"};
}

DepthFunctionUnderTest depth_function_by_name(const std::string& name, const DepthConfig& config) {
    if (name == "tukey") return tukey_depth_function(config);
    if (name == "constant") return mutant_constant();
    if (name == "first-axis-only") return mutant_first_axis_only();
    if (name == "strict") return mutant_strict_inequalities();
    if (name == "favor-large") return mutant_favor_large();
    if (name == "outlier-bump") return mutant_outlier_bump();
    throw ValidationError("unknown depth function '" + name + "'");
}

// ---------------------------------------------------------------------------
// Reports

std::string to_string(PropertyId id) {
    switch (id) {
        case PropertyId::kP1: return "P1";
        case PropertyId::kP2: return "P2";
        case PropertyId::kP3a: return "P3a";
        case PropertyId::kP3b: return "P3b";
        case PropertyId::kP4a: return "P4a";
        case PropertyId::kP4b: return "P4b";
        case PropertyId::kP5: return "P5";
        case PropertyId::kP6: return "P6";
        case PropertyId::kP7: return "P7";
    }
    return "?";
}

PropertyId parse_property_id(const std::string& name) {
    for (auto id : {PropertyId::kP1, PropertyId::kP2, PropertyId::kP3a, PropertyId::kP3b, PropertyId::kP4a,
                    PropertyId::kP4b, PropertyId::kP5, PropertyId::kP6, PropertyId::kP7}) {
        if (to_string(id) == name) return id;
    }
    throw ValidationError("unknown property '" + name + "'");
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::kPass: return "pass";
        case Verdict::kFail: return "fail";
        case Verdict::kNotApplicable: return "not-applicable";
    }
    return "?";
}

std::string to_string(Relation relation) {
    switch (relation) {
        case Relation::kEqual: return "equal";
        case Relation::kAtLeast: return "at-least";
        case Relation::kAtMost: return "at-most";
        case Relation::kZero: return "zero";
        case Relation::kAtLeastBound: return "at-least-bound";
        case Relation::kClose: return "close";
    }
    return "?";
}

bool violates(const Counterexample& cex, const std::vector<double>& values) {
    const double l = values.at(cex.lhs);
    if (!std::isfinite(l)) return true;
    switch (cex.relation) {
        case Relation::kEqual: {
            const double r = values.at(cex.rhs);
            return !std::isfinite(r) || std::abs(l - r) > cex.tolerance;
        }
        case Relation::kAtLeast: return l < values.at(cex.rhs) - cex.tolerance;
        case Relation::kAtMost: return l > values.at(cex.rhs) + cex.tolerance;
        case Relation::kZero: return std::abs(l) > cex.tolerance;
        case Relation::kAtLeastBound: return l < cex.bound - cex.tolerance;
        case Relation::kClose: return std::abs(l - values.at(cex.rhs)) > cex.bound + cex.tolerance;
    }
    return false;
}

bool recheck(const DepthFunctionUnderTest& fn, const Counterexample& cex) {
    std::vector<double> values;
    values.reserve(cex.evaluations.size());
    for (const auto& e : cex.evaluations) {
        values.push_back(fn.evaluate(e.body, e.dist));
    }
    return violates(cex, values);
}

double dkw_bound(double epsilon, std::size_t n) {
    return 4.0 * std::exp(-2.0 * epsilon * epsilon * static_cast<double>(n));
}

// ---------------------------------------------------------------------------
// P1 affine invariance

PropertyReport run_p1(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios, std::size_t trials,
                      std::uint64_t seed) {
    auto report = make_report(PropertyId::kP1, seed);
    if (scenarios.empty()) {
        finish(report);
        return report;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto& s = scenarios[t % scenarios.size()];
        const int p = s.dist.dimension();
        const auto k = random_probe(rng, s);
        const Matrix m = random_nonsingular(rng, p);
        const AffineMap map(m, random_probe(rng, s));
        const auto mapped_dist = affine_image(map, s.dist);
        Counterexample cex;
        cex.relation = Relation::kEqual;
        cex.lhs = 0;
        cex.rhs = 1;
        cex.tolerance = kValueTolerance;
        cex.evaluations.push_back(evaluate(fn, "K;Gamma", k, s.dist));
        cex.evaluations.push_back(evaluate(fn, "M*K+L;M*Gamma+L", affine_image(map, k), mapped_dist));
        cex.note = s.id + ": " + matrix_note(m) + ", L = " + map.translate().describe();
        ++report.trials;
        if (violates(cex, {cex.evaluations[0].value, cex.evaluations[1].value})) {
            record_failure(report, std::move(cex));
        }
    }
    finish(report);
    return report;
}

// ---------------------------------------------------------------------------
// P2 maximality at the center of symmetry

PropertyReport run_p2(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios, std::size_t probes,
                      std::uint64_t seed) {
    auto report = make_report(PropertyId::kP2, seed);
    std::mt19937_64 rng(seed);
    std::size_t applicable = 0;
    for (const auto& s : scenarios) {
        if (!s.center || !s.symmetric) continue;
        ++applicable;
        const auto center_eval = evaluate(fn, "center", *s.center, s.dist);
        for (std::size_t i = 0; i < probes; ++i) {
            const auto probe = i < s.candidates.size() ? s.candidates[i] : random_probe(rng, s);
            ++report.trials;
            Counterexample cex;
            cex.relation = Relation::kAtLeast;
            cex.lhs = 0;
            cex.rhs = 1;
            cex.evaluations.push_back(center_eval);
            cex.evaluations.push_back(evaluate(fn, "probe", probe, s.dist));
            cex.note = s.id;
            if (violates(cex, {cex.evaluations[0].value, cex.evaluations[1].value})) {
                record_failure(report, std::move(cex));
            }
        }
    }
    report.detail = std::to_string(applicable) + " scenarios with a certified symmetric center";
    finish(report);
    return report;
}

// ---------------------------------------------------------------------------
// P3a monotonicity along segments from the center

PropertyReport run_p3a(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios, std::size_t trials,
                       std::uint64_t seed) {
    auto report = make_report(PropertyId::kP3a, seed);
    const auto applicable = with_center(scenarios);
    if (applicable.empty()) {
        finish(report);
        return report;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto& s = *applicable[t % applicable.size()];
        const auto l = random_probe(rng, s);
        const auto l_eval = evaluate(fn, "L", l, s.dist);
        ++report.trials;
        for (double lambda : lambda_grid()) {
            Counterexample cex;
            cex.relation = Relation::kAtLeast;
            cex.lhs = 0;
            cex.rhs = 1;
            cex.evaluations.push_back(
                evaluate(fn, "(1-lambda)*K+lambda*L", convex_combination(*s.center, l, lambda), s.dist));
            cex.evaluations.push_back(l_eval);
            if (violates(cex, {cex.evaluations[0].value, cex.evaluations[1].value})) {
                cex.note = s.id + ": lambda = " + std::to_string(lambda);
                record_failure(report, std::move(cex));
                break;
            }
        }
    }
    finish(report);
    return report;
}

// ---------------------------------------------------------------------------
// P3b monotonicity along metric segments

PropertyReport run_p3b(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios, std::uint64_t seed) {
    auto report = make_report(PropertyId::kP3b, seed);
    for (const auto* s : with_center(scenarios)) {
        const auto& k = *s->center;
        const auto& cands = s->candidates.empty() ? s->dist.bodies() : s->candidates;
        std::vector<std::optional<double>> to_center;
        std::vector<double> values;
        for (const auto& c : cands) {
            const auto h = hausdorff(k, c);
            to_center.push_back(h.exact ? std::optional<double>(h.value) : std::nullopt);
            values.push_back(fn.evaluate(c, s->dist));
        }
        for (std::size_t i = 0; i < cands.size(); ++i) {
            for (std::size_t j = 0; j < cands.size(); ++j) {
                if (i == j || !to_center[i] || !to_center[j]) continue;
                const auto between = hausdorff(cands[i], cands[j]);
                if (!between.exact) continue;
                if (std::abs(*to_center[j] - *to_center[i] - between.value) > kGeometryTolerance) continue;
                ++report.trials;
                if (values[i] < values[j]) {
                    Counterexample cex;
                    cex.relation = Relation::kAtLeast;
                    cex.lhs = 1;
                    cex.rhs = 2;
                    cex.evaluations.push_back(evaluate(fn, "K", k, s->dist));
                    cex.evaluations.push_back({"L", cands[i], s->dist, values[i]});
                    cex.evaluations.push_back({"S", cands[j], s->dist, values[j]});
                    std::ostringstream note;
                    note << s->id << ": d(K,S) = " << *to_center[j] << " = d(K,L) + d(L,S) = " << *to_center[i]
                         << " + " << between.value;
                    cex.note = note.str();
                    record_failure(report, std::move(cex));
                }
            }
        }
    }
    finish(report);
    return report;
}

// ---------------------------------------------------------------------------
// P4 vanishing at infinity

VanishingCheck check_vanishing(const DepthFunctionUnderTest& fn, const DiscreteSetDistribution& dist,
                               const ConvexBody& k, const ConvexBody& l, std::size_t extra) {
    if (k.dimension() != dist.dimension() || l.dimension() != dist.dimension()) {
        throw ValidationError("check_vanishing: dimension mismatch");
    }
    constexpr double kCap = 1e6;
    double best = kCap + 1;
    for (const auto& u : threshold_directions(dist.dimension())) {
        const double sl = l.support(u);
        if (std::abs(sl) <= kGeometryTolerance) continue;
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (const auto& atom : dist.bodies()) {
            const double v = atom.support(u);
            hi = std::max(hi, v);
            lo = std::min(lo, v);
        }
        const double sk = k.support(u);
        // smallest n >= 1 with sk + n sl strictly beyond the range (with tolerance)
        const double bound = sl > 0 ? (hi + 2 * kGeometryTolerance - sk) / sl : (sk - lo + 2 * kGeometryTolerance) / -sl;
        const double n = std::max(1.0, std::floor(bound) + 1.0);
        best = std::min(best, n);
    }
    VanishingCheck check;
    if (best > kCap) {
        return check;
    }
    check.applicable = true;
    check.threshold = static_cast<std::size_t>(best);
    for (std::size_t n = check.threshold; n <= check.threshold + extra; ++n) {
        check.tail.push_back(fn.evaluate(minkowski_sum(k, scale(l, static_cast<double>(n))), dist));
    }
    return check;
}

PropertyReport run_p4(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios,
                      VanishingVariant variant, std::size_t trials, std::uint64_t seed) {
    auto report = make_report(variant == VanishingVariant::kAlgebraic ? PropertyId::kP4a : PropertyId::kP4b, seed);
    const auto applicable = with_center(scenarios);
    if (applicable.empty()) {
        finish(report);
        return report;
    }
    std::mt19937_64 rng(seed);
    std::size_t skipped = 0;
    std::size_t max_threshold = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto& s = *applicable[t % applicable.size()];
        const int p = s.dist.dimension();
        const auto l = variant == VanishingVariant::kAlgebraic ? random_nonzero_body(rng, p)
                                                               : ConvexBody::singleton(random_translation(rng, p));
        const auto check = check_vanishing(fn, s.dist, *s.center, l);
        if (!check.applicable) {
            ++skipped;
            continue;
        }
        ++report.trials;
        max_threshold = std::max(max_threshold, check.threshold);
        for (std::size_t i = 0; i < check.tail.size(); ++i) {
            const std::size_t n = check.threshold + i;
            const auto kn = minkowski_sum(*s.center, scale(l, static_cast<double>(n)));
            bool diverging = true;
            if (variant == VanishingVariant::kGeometric && i > 0) {
                const auto prev = minkowski_sum(*s.center, scale(l, static_cast<double>(n - 1)));
                diverging = hausdorff(*s.center, kn).value > hausdorff(*s.center, prev).value;
            }
            if (check.tail[i] > kValueTolerance || !diverging) {
                Counterexample cex;
                cex.relation = Relation::kZero;
                cex.lhs = 0;
                cex.tolerance = kValueTolerance;
                cex.evaluations.push_back({"K+n*L", kn, s.dist, check.tail[i]});
                cex.note = s.id + ": n = " + std::to_string(n) + ", L = " + l.describe();
                record_failure(report, std::move(cex));
                break;
            }
        }
    }
    report.detail = "max threshold n0 = " + std::to_string(max_threshold) + ", skipped (L = {0}) = " +
                    std::to_string(skipped);
    finish(report);
    return report;
}

// ---------------------------------------------------------------------------
// P5 upper semicontinuity

SemicontinuityCheck check_semicontinuity(const DepthFunctionUnderTest& fn, const DiscreteSetDistribution& dist,
                                         const ConvexBody& k, const ConvexBody& perturbation, std::size_t horizon) {
    SemicontinuityCheck check;
    check.base = fn.evaluate(k, dist);
    for (std::size_t n = 1; n <= horizon; ++n) {
        const double v = fn.evaluate(minkowski_sum(k, scale(perturbation, 1.0 / static_cast<double>(n))), dist);
        check.values.push_back(v);
        if (v > check.base + kValueTolerance) {
            check.first_clean = n + 1;
        }
    }
    return check;
}

PropertyReport run_p5(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios, std::size_t trials,
                      std::uint64_t seed) {
    constexpr std::size_t kHorizon = 64;
    auto report = make_report(PropertyId::kP5, seed);
    if (scenarios.empty()) {
        finish(report);
        return report;
    }
    std::mt19937_64 rng(seed);
    std::size_t worst = 1;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto& s = scenarios[t % scenarios.size()];
        const int p = s.dist.dimension();
        std::uniform_int_distribution<std::size_t> pick(0, s.dist.size() - 1);
        // alternate between atoms (ties with the law) and random probes
        const auto k = t % 2 == 0 ? s.dist.body(pick(rng)) : random_probe(rng, s);
        const auto b = random_small_body(rng, p);
        const auto check = check_semicontinuity(fn, s.dist, k, b, kHorizon);
        ++report.trials;
        worst = std::max(worst, check.first_clean);
        if (check.first_clean > kHorizon / 2) {
            const std::size_t n = check.first_clean - 1;
            Counterexample cex;
            cex.relation = Relation::kAtMost;
            cex.lhs = 0;
            cex.rhs = 1;
            cex.tolerance = kValueTolerance;
            cex.evaluations.push_back(
                {"K_n", minkowski_sum(k, scale(b, 1.0 / static_cast<double>(n))), s.dist, check.values[n - 1]});
            cex.evaluations.push_back({"K", k, s.dist, check.base});
            cex.note = s.id + ": n = " + std::to_string(n) + ", B = " + b.describe();
            record_failure(report, std::move(cex));
        }
    }
    report.horizon = worst;
    report.detail = "horizon 64; pass requires D(K_n) <= D(K) for n > 32";
    finish(report);
    return report;
}

// ---------------------------------------------------------------------------
// P6 consistency

ConvergenceTable consistency_experiment(const DiscreteSetDistribution& dist, const std::vector<ConvexBody>& bodies,
                                        const std::vector<std::size_t>& n_grid, double epsilon, std::uint64_t seed,
                                        const DepthFunctionUnderTest& fn) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw ValidationError("consistency: epsilon must be > 0");
    }
    if (n_grid.empty()) {
        throw ValidationError("consistency: empty n grid");
    }
    if (bodies.empty()) {
        throw ValidationError("consistency: no test bodies");
    }
    const int p = dist.dimension();
    if (p > 2 || (p == 2 && !dist.all_polytopal())) {
        throw NeedsSampling("consistency: exact engine unavailable for this distribution");
    }
    std::vector<double> population;
    for (const auto& k : bodies) {
        if (k.dimension() != p) throw ValidationError("consistency: test body dimension mismatch");
        population.push_back(fn.evaluate(k, dist));
    }
    auto grid = n_grid;
    std::stable_sort(grid.begin(), grid.end());
    ConvergenceTable table;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] == 0) throw ValidationError("consistency: n must be >= 1");
        const std::uint64_t row_seed = seed + i;
        const auto empirical = aggregated(sample(dist, grid[i], row_seed));
        double sup = 0.0;
        for (std::size_t j = 0; j < bodies.size(); ++j) {
            sup = std::max(sup, std::abs(population[j] - fn.evaluate(bodies[j], empirical)));
        }
        table.push_back({grid[i], sup, dkw_bound(epsilon, grid[i]), row_seed});
    }
    return table;
}

PropertyReport run_p6(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios,
                      const std::vector<std::size_t>& n_grid, double epsilon, std::size_t replicates,
                      std::uint64_t seed) {
    auto report = make_report(PropertyId::kP6, seed);
    std::size_t informative = 0;
    std::size_t violations = 0;
    double expected = 0.0;
    std::size_t salt = 0;
    for (const auto& s : scenarios) {
        const int p = s.dist.dimension();
        if (p > 2 || (p == 2 && !s.dist.all_polytopal())) continue;
        std::vector<ConvexBody> bodies = s.dist.bodies();
        if (s.center) bodies.push_back(*s.center);
        for (std::size_t i = 0; i < s.candidates.size() && bodies.size() < 10; ++i) bodies.push_back(s.candidates[i]);
        for (std::size_t r = 0; r < replicates; ++r) {
            const auto table = consistency_experiment(s.dist, bodies, n_grid, epsilon, mix_seed(seed, salt++), fn);
            for (const auto& row : table) {
                ++report.trials;
                if (row.dkw_bound >= 1.0) continue;
                ++informative;
                expected += row.dkw_bound;
                if (row.sup_error <= epsilon) continue;
                ++violations;
                // locate the offending body for a self-certifying payload
                const auto empirical = aggregated(sample(s.dist, row.n, row.seed));
                for (const auto& k : bodies) {
                    const double a = fn.evaluate(k, s.dist);
                    const double b = fn.evaluate(k, empirical);
                    if (std::abs(a - b) > epsilon) {
                        Counterexample cex;
                        cex.relation = Relation::kClose;
                        cex.lhs = 0;
                        cex.rhs = 1;
                        cex.bound = epsilon;
                        cex.evaluations.push_back({"K;Gamma", k, s.dist, a});
                        cex.evaluations.push_back({"K;Gamma_n", k, empirical, b});
                        cex.note = s.id + ": n = " + std::to_string(row.n) + ", seed = " + std::to_string(row.seed);
                        if (!report.counterexample) report.counterexample = std::move(cex);
                        break;
                    }
                }
            }
        }
    }
    const auto allowed = static_cast<std::size_t>(std::ceil(expected));
    std::ostringstream detail;
    detail << "epsilon = " << epsilon << ", informative rows = " << informative << ", violations = " << violations
           << ", envelope allows " << allowed;
    report.detail = detail.str();
    if (violations > allowed) {
        report.verdict = Verdict::kFail;
    } else {
        report.counterexample.reset();
    }
    finish(report);
    return report;
}

// ---------------------------------------------------------------------------
// P7 convexity of contours

PropertyReport run_p7(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios, std::size_t trials,
                      std::uint64_t seed) {
    auto report = make_report(PropertyId::kP7, seed);
    if (scenarios.empty()) {
        finish(report);
        return report;
    }
    std::mt19937_64 rng(seed);
    // candidate pools with cached depths, built lazily per scenario
    std::map<std::size_t, std::vector<std::pair<ConvexBody, double>>> pools;
    auto pool_for = [&](std::size_t idx) -> const std::vector<std::pair<ConvexBody, double>>& {
        auto it = pools.find(idx);
        if (it != pools.end()) return it->second;
        const auto& s = scenarios[idx];
        std::vector<ConvexBody> bodies = s.dist.bodies();
        if (s.center) {
            bodies.push_back(*s.center);
            for (int i = 0; i < 4; ++i) {
                bodies.push_back(minkowski_sum(*s.center, scale(random_small_body(rng, s.dist.dimension()), 0.25)));
            }
        }
        for (std::size_t i = 0; i + 1 < s.dist.size(); ++i) {
            bodies.push_back(convex_combination(s.dist.body(i), s.dist.body(i + 1), 0.5));
        }
        bodies.insert(bodies.end(), s.candidates.begin(), s.candidates.end());
        bodies.push_back(outlier_body(s.dist.dimension()));
        std::vector<std::pair<ConvexBody, double>> pool;
        for (auto& b : bodies) {
            const double v = fn.evaluate(b, s.dist);
            pool.emplace_back(std::move(b), v);
        }
        return pools.emplace(idx, std::move(pool)).first->second;
    };

    std::size_t vacuous = 0;
    // alpha is a fraction of min(D(K), D(L)), so K and L always lie in the
    // contour; a fraction of 1 puts both on its boundary
    std::uniform_int_distribution<int> alpha_pick(1, 10);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t idx = t % scenarios.size();
        const auto& s = scenarios[idx];
        const auto& pool = pool_for(idx);
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (pool[i].second > kValueTolerance) members.push_back(i);
        }
        ++report.trials;
        if (members.empty()) {
            ++vacuous;
            continue;
        }
        std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
        const auto& [k, vk] = pool[members[pick(rng)]];
        const auto& [l, vl] = pool[members[pick(rng)]];
        const double alpha = std::min(vk, vl) * alpha_pick(rng) / 10.0;
        for (double lambda : lambda_grid()) {
            const auto c = convex_combination(k, l, lambda);
            const double v = fn.evaluate(c, s.dist);
            if (v < alpha - kValueTolerance) {
                Counterexample cex;
                cex.relation = Relation::kAtLeastBound;
                cex.lhs = 0;
                cex.bound = alpha;
                cex.tolerance = kValueTolerance;
                cex.evaluations.push_back({"(1-lambda)*K+lambda*L", c, s.dist, v});
                cex.evaluations.push_back({"K", k, s.dist, vk});
                cex.evaluations.push_back({"L", l, s.dist, vl});
                cex.note = s.id + ": alpha = " + std::to_string(alpha) + ", lambda = " + std::to_string(lambda);
                record_failure(report, std::move(cex));
                break;
            }
        }
    }
    report.detail = "vacuous trials (no positive-depth body) = " + std::to_string(vacuous);
    finish(report);
    return report;
}

// ---------------------------------------------------------------------------
// Taxonomy and suite

std::vector<std::string> classify(const std::vector<PropertyReport>& reports) {
    std::set<PropertyId> passed;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::kPass) passed.insert(r.id);
    }
    auto all = [&](std::initializer_list<PropertyId> ids) {
        return std::all_of(ids.begin(), ids.end(), [&](PropertyId id) { return passed.count(id) > 0; });
    };
    using P = PropertyId;
    std::vector<std::string> labels;
    const bool algebraic = all({P::kP1, P::kP2, P::kP3a, P::kP4a});
    const bool geometric = all({P::kP1, P::kP2, P::kP3b, P::kP4b});
    const bool restricted = all({P::kP5, P::kP6, P::kP7});
    if (algebraic) labels.emplace_back("algebraic");
    if (algebraic && restricted) labels.emplace_back("restricted algebraic");
    if (geometric) labels.emplace_back("geometric");
    if (geometric && restricted) labels.emplace_back("restricted geometric");
    return labels;
}

SuiteReport run_suite(const DepthFunctionUnderTest& fn, const SuiteConfig& config) {
    const auto scenarios = config.scenarios.empty() ? default_scenarios(config.seed) : config.scenarios;
    SuiteReport out;
    out.depth_function = fn.name;
    out.seed = config.seed;
    auto seed_for = [&](PropertyId id) { return mix_seed(config.seed, static_cast<std::uint64_t>(id)); };
    out.reports.push_back(run_p1(fn, scenarios, config.trials, seed_for(PropertyId::kP1)));
    out.reports.push_back(run_p2(fn, scenarios, config.p2_probes, seed_for(PropertyId::kP2)));
    out.reports.push_back(run_p3a(fn, scenarios, config.p3a_trials, seed_for(PropertyId::kP3a)));
    out.reports.push_back(run_p3b(fn, scenarios, seed_for(PropertyId::kP3b)));
    out.reports.push_back(
        run_p4(fn, scenarios, VanishingVariant::kAlgebraic, config.trials, seed_for(PropertyId::kP4a)));
    out.reports.push_back(
        run_p4(fn, scenarios, VanishingVariant::kGeometric, config.trials, seed_for(PropertyId::kP4b)));
    out.reports.push_back(run_p5(fn, scenarios, config.trials, seed_for(PropertyId::kP5)));
    out.reports.push_back(
        run_p6(fn, scenarios, config.n_grid, config.epsilon, config.p6_replicates, seed_for(PropertyId::kP6)));
    out.reports.push_back(run_p7(fn, scenarios, config.p7_trials, seed_for(PropertyId::kP7)));
    out.labels = classify(out.reports);
    return out;
}

}  // namespace setdepth
