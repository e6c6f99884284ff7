#include "setdepth/depth.hpp"

#include "setdepth/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace setdepth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleDedup = 1e-12;

struct TailMasses {
    std::int64_t le = 0;
    std::int64_t ge = 0;

    std::int64_t min() const { return std::min(le, ge); }
    Side side() const { return le <= ge ? Side::kLe : Side::kGe; }
};

TailMasses tail_masses(const ConvexBody& body, const DiscreteSetDistribution& dist, const UnitDirection& u,
                       double tolerance) {
    const double threshold = body.support(u);
    TailMasses t;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const double v = dist.body(i).support(u);
        if (v <= threshold + tolerance) t.le += dist.mass(i);
        if (v >= threshold - tolerance) t.ge += dist.mass(i);
    }
    return t;
}

void require_dimension_match(const ConvexBody& body, const DiscreteSetDistribution& dist, const char* what) {
    if (body.dimension() != dist.dimension()) {
        throw ValidationError(std::string(what) + ": body dimension " + std::to_string(body.dimension()) +
                              " != distribution dimension " + std::to_string(dist.dimension()));
    }
}

double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    if (t < 0) t += kTwoPi;
    if (t >= kTwoPi) t -= kTwoPi;
    return t;
}

// Angles at which the maximizing vertex of a planar hull changes.
void hull_breakpoints(const std::vector<Vector>& hull, std::vector<double>& out) {
    if (hull.size() < 2) {
        return;
    }
    const std::size_t k = hull.size() == 2 ? 1 : hull.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Vector& a = hull[i];
        const Vector& b = hull[(i + 1) % hull.size()];
        const double dx = b[0] - a[0];
        const double dy = b[1] - a[1];
        out.push_back(wrap_angle(std::atan2(-dx, dy)));  // outward normal (dy, -dx) for CCW order
        if (hull.size() == 2) {
            out.push_back(wrap_angle(std::atan2(dx, -dy)));
        }
    }
}

const Vector& active_vertex(const std::vector<Vector>& hull, const Vector& u) {
    std::size_t best = 0;
    double value = hull[0].dot(u);
    for (std::size_t i = 1; i < hull.size(); ++i) {
        const double d = hull[i].dot(u);
        if (d > value) {
            value = d;
            best = i;
        }
    }
    return hull[best];
}

std::vector<Vector> planar_hull(const ConvexBody& body) {
    if (!body.is_polytopal()) {
        throw NeedsSampling("exact 2-d depth needs polytopal bodies, got " + to_string(body.kind()));
    }
    return convex_hull_2d(body.points());
}

DepthReport minimize_over(const ConvexBody& body, const DiscreteSetDistribution& dist,
                          const std::vector<UnitDirection>& directions, double tolerance, EngineTag tag) {
    if (directions.empty()) {
        throw ValidationError("depth: empty direction set");
    }
    std::size_t best = 0;
    TailMasses best_masses = tail_masses(body, dist, directions[0], tolerance);
    for (std::size_t i = 1; i < directions.size() && best_masses.min() > 0; ++i) {
        const auto t = tail_masses(body, dist, directions[i], tolerance);
        if (t.min() < best_masses.min()) {
            best_masses = t;
            best = i;
        }
    }
    return DepthReport{Probability(best_masses.min(), dist.total_mass()), directions[best], best_masses.side(), tag,
                       directions.size()};
}

}  // namespace

DepthMethod parse_depth_method(const std::string& name) {
    if (name == "auto") return DepthMethod::kAuto;
    if (name == "exact") return DepthMethod::kExact;
    if (name == "sampled") return DepthMethod::kSampled;
    throw ValidationError("unknown depth method '" + name + "'");
}

std::string to_string(DepthMethod method) {
    switch (method) {
        case DepthMethod::kAuto: return "auto";
        case DepthMethod::kExact: return "exact";
        case DepthMethod::kSampled: return "sampled";
    }
    return "unknown";
}

std::string to_string(Side side) { return side == Side::kLe ? "le" : "ge"; }

std::string to_string(EngineTag tag) {
    switch (tag) {
        case EngineTag::kExact1d: return "exact1d";
        case EngineTag::kExact2d: return "exact2d";
        case EngineTag::kSampled: return "sampled";
    }
    return "unknown";
}

Probability halfspace_depth_1d(double x, const DirectionalLaw& law, double tolerance) {
    return {std::min(law.mass_le(x, tolerance), law.mass_ge(x, tolerance)), law.total_mass()};
}

DepthReport depth_interval_exact(const ConvexBody& body, const DiscreteSetDistribution& dist, double tolerance) {
    require_dimension_match(body, dist, "depth_interval_exact");
    if (body.dimension() != 1) {
        throw ValidationError("depth_interval_exact: needs p = 1");
    }
    const std::vector<UnitDirection> sphere{UnitDirection::axis(1, 0), UnitDirection::axis(1, 0, true)};
    return minimize_over(body, dist, sphere, tolerance, EngineTag::kExact1d);
}

std::vector<double> exact2d_evaluation_angles(const ConvexBody& body, const DiscreteSetDistribution& dist) {
    require_dimension_match(body, dist, "depth_poly2d_exact");
    if (body.dimension() != 2) {
        throw ValidationError("depth_poly2d_exact: needs p = 2");
    }
    const auto body_hull = planar_hull(body);
    std::vector<double> body_breaks;
    hull_breakpoints(body_hull, body_breaks);

    std::vector<double> events = body_breaks;
    for (const auto& atom : dist.bodies()) {
        const auto atom_hull = planar_hull(atom);
        std::vector<double> breaks = body_breaks;
        hull_breakpoints(atom_hull, breaks);
        events.insert(events.end(), breaks.begin() + static_cast<std::ptrdiff_t>(body_breaks.size()), breaks.end());

        std::sort(breaks.begin(), breaks.end());
        if (breaks.empty()) {
            breaks.push_back(0.0);
        }
        // On each breakpoint arc the difference of supports is <v - w, u>.
        for (std::size_t i = 0; i < breaks.size(); ++i) {
            const double start = breaks[i];
            double length = (i + 1 < breaks.size() ? breaks[i + 1] : breaks[0] + kTwoPi) - start;
            if (breaks.size() == 1) {
                length = kTwoPi;
            }
            if (length <= 0.0) {
                continue;
            }
            const auto mid = UnitDirection::from_angle(start + 0.5 * length);
            const Vector d = active_vertex(atom_hull, mid.coords()) - active_vertex(body_hull, mid.coords());
            if (d.norm() == 0.0) {
                continue;
            }
            const double base = std::atan2(d[1], d[0]);
            for (double root : {base + 0.5 * std::numbers::pi, base - 0.5 * std::numbers::pi}) {
                const double offset = wrap_angle(root - start);
                if (offset > 0.0 && offset < length) {
                    events.push_back(wrap_angle(root));
                }
            }
        }
    }

    if (events.empty()) {
        events.push_back(0.0);
    }
    std::sort(events.begin(), events.end());
    std::vector<double> unique;
    for (double e : events) {
        if (unique.empty() || e - unique.back() > kAngleDedup) {
            unique.push_back(e);
        }
    }
    if (unique.size() > 1 && unique.front() + kTwoPi - unique.back() <= kAngleDedup) {
        unique.pop_back();
    }

    std::vector<double> angles;
    angles.reserve(2 * unique.size());
    for (std::size_t i = 0; i < unique.size(); ++i) {
        const double next = i + 1 < unique.size() ? unique[i + 1] : unique[0] + kTwoPi;
        angles.push_back(unique[i]);
        angles.push_back(wrap_angle(0.5 * (unique[i] + next)));
    }
    return angles;
}

DepthReport depth_poly2d_exact(const ConvexBody& body, const DiscreteSetDistribution& dist, double tolerance) {
    if (!body.is_polytopal() || !dist.all_polytopal()) {
        throw NeedsSampling("depth_poly2d_exact: non-polytopal body or atom");
    }
    const auto angles = exact2d_evaluation_angles(body, dist);
    std::vector<UnitDirection> directions;
    directions.reserve(angles.size());
    for (double a : angles) {
        directions.push_back(UnitDirection::from_angle(a));
    }
    return minimize_over(body, dist, directions, tolerance, EngineTag::kExact2d);
}

DepthReport depth_sampled(const ConvexBody& body, const DiscreteSetDistribution& dist,
                          const std::vector<UnitDirection>& directions, double tolerance) {
    require_dimension_match(body, dist, "depth_sampled");
    for (const auto& u : directions) {
        if (u.dimension() != body.dimension()) {
            throw ValidationError("depth_sampled: direction dimension mismatch");
        }
    }
    return minimize_over(body, dist, directions, tolerance, EngineTag::kSampled);
}

std::vector<UnitDirection> sampling_directions(int dimension, const DepthConfig& config) {
    if (!config.direction_budget) {
        return default_directions(dimension, config.seed);
    }
    const std::size_t m = *config.direction_budget;
    if (m < 1) {
        throw ValidationError("depth: direction budget must be >= 1");
    }
    switch (dimension) {
        case 1: return direction_set(1, DirectionStrategy::kAxes, 2, config.seed);
        case 2: return direction_set(2, DirectionStrategy::kGrid2d, m, config.seed);
        case 3: return direction_set(3, DirectionStrategy::kLowDiscrepancy, m, config.seed);
        default: return direction_set(dimension, DirectionStrategy::kRandom, m, config.seed);
    }
}

DepthReport depth(const ConvexBody& body, const DiscreteSetDistribution& dist, const DepthConfig& config) {
    require_dimension_match(body, dist, "depth");
    const int p = body.dimension();
    const bool exact_available = p == 1 || (p == 2 && body.is_polytopal() && dist.all_polytopal());
    switch (config.method) {
        case DepthMethod::kExact:
            if (!exact_available) {
                throw NeedsSampling("depth: no exact engine for this input (p = " + std::to_string(p) + ")");
            }
            break;
        case DepthMethod::kSampled:
            return depth_sampled(body, dist, sampling_directions(p, config), config.tolerance);
        case DepthMethod::kAuto:
            if (!exact_available) {
                return depth_sampled(body, dist, sampling_directions(p, config), config.tolerance);
            }
            break;
    }
    return p == 1 ? depth_interval_exact(body, dist, config.tolerance)
                  : depth_poly2d_exact(body, dist, config.tolerance);
}

Probability depth_by_halfspace_enumeration(const ConvexBody& body, const DiscreteSetDistribution& dist,
                                           const std::vector<UnitDirection>& directions, double tolerance) {
    require_dimension_match(body, dist, "depth_by_halfspace_enumeration");
    if (directions.empty()) {
        throw ValidationError("depth_by_halfspace_enumeration: empty direction set");
    }
    std::int64_t inf_lower = dist.total_mass();
    std::int64_t inf_upper = dist.total_mass();
    for (const auto& u : directions) {
        const double sk = body.support(u);
        std::vector<double> values;
        for (const auto& atom : dist.bodies()) {
            values.push_back(atom.support(u));
        }
        // thresholds t with K in S^-_{u,t}: t >= s_K(u); the count only
        // changes at atom values, so those plus s_K(u) cover every case
        std::vector<double> lower_ts{sk}, upper_ts{sk};
        for (double v : values) {
            if (v >= sk) lower_ts.push_back(v);
            if (v <= sk) upper_ts.push_back(v);
        }
        for (double t : lower_ts) {
            std::int64_t m = 0;
            for (std::size_t i = 0; i < values.size(); ++i) {
                if (values[i] <= t + tolerance) m += dist.mass(i);
            }
            inf_lower = std::min(inf_lower, m);
        }
        for (double t : upper_ts) {
            std::int64_t m = 0;
            for (std::size_t i = 0; i < values.size(); ++i) {
                if (values[i] >= t - tolerance) m += dist.mass(i);
            }
            inf_upper = std::min(inf_upper, m);
        }
    }
    return {std::min(inf_lower, inf_upper), dist.total_mass()};
}

ConvexBody tukey_median_1d(const DiscreteSetDistribution& dist) {
    if (dist.dimension() != 1) {
        throw ValidationError("tukey_median_1d: needs p = 1");
    }
    const auto plus = UnitDirection::axis(1, 0);
    const auto minus = UnitDirection::axis(1, 0, true);
    auto lower_median = [&](auto endpoint) {
        std::vector<std::pair<double, std::int64_t>> law;
        for (std::size_t i = 0; i < dist.size(); ++i) {
            law.emplace_back(endpoint(dist.body(i)), dist.mass(i));
        }
        std::sort(law.begin(), law.end());
        std::int64_t cumulative = 0;
        for (const auto& [v, m] : law) {
            cumulative += m;
            if (2 * cumulative >= dist.total_mass()) {
                return v;
            }
        }
        return law.back().first;
    };
    const double a = lower_median([&](const ConvexBody& b) { return -b.support(minus); });
    const double b = lower_median([&](const ConvexBody& k) { return k.support(plus); });
    return ConvexBody::interval(a, b);
}

std::vector<RankedBody> rank(const std::vector<ConvexBody>& bodies, const DiscreteSetDistribution& dist,
                             const DepthConfig& config) {
    if (bodies.empty()) {
        throw ValidationError("rank: no bodies");
    }
    std::vector<RankedBody> out;
    out.reserve(bodies.size());
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        out.push_back({i, bodies[i], depth(bodies[i], dist, config)});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const RankedBody& x, const RankedBody& y) { return x.report.value > y.report.value; });
    return out;
}

bool contour_membership(const ConvexBody& body, const DiscreteSetDistribution& dist, double alpha,
                        const DepthConfig& config) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ValidationError("contour_membership: alpha must lie in [0, 1]");
    }
    return depth(body, dist, config).value.to_double() >= alpha - config.tolerance;
}

}  // namespace setdepth
