#include "setdepth/properties.hpp"

#include "setdepth/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace setdepth {

namespace {

// Endpoints on a half-integer grid keep ties and gaps well away from the
// geometry tolerance.
double half_grid(std::mt19937_64& rng, double lo, double hi) {
    const auto steps = static_cast<int>(std::floor(2.0 * (hi - lo)));
    std::uniform_int_distribution<int> pick(0, std::max(steps, 0));
    return lo + 0.5 * pick(rng);
}

std::vector<ConvexBody> with_extra_probes(std::mt19937_64& rng, std::vector<ConvexBody> base, const Scenario& s,
                                          int count) {
    for (int i = 0; i < count; ++i) {
        base.push_back(random_probe(rng, s));
    }
    return base;
}

std::vector<UnitDirection> symmetry_directions(int p) {
    auto dirs = default_directions(p);
    if (p > 1) {
        const auto axes = direction_set(p, DirectionStrategy::kAxes, 1, 0);
        dirs.insert(dirs.end(), axes.begin(), axes.end());
    }
    return dirs;
}

}  // namespace

ConvexBody random_interval(std::mt19937_64& rng, double lo, double hi) {
    const double a = half_grid(rng, lo, hi);
    const double b = half_grid(rng, a, hi);
    return ConvexBody::interval(a, b);
}

ConvexBody random_polygon(std::mt19937_64& rng, const Vector& center, double radius) {
    std::uniform_int_distribution<int> count(3, 6);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> rad(0.3, 1.0);
    const int k = count(rng);
    std::vector<Vector> pts;
    for (int i = 0; i < k; ++i) {
        const double t = angle(rng);
        const double r = radius * rad(rng);
        Vector v(2);
        v << center[0] + r * std::cos(t), center[1] + r * std::sin(t);
        pts.push_back(std::move(v));
    }
    return ConvexBody::polytope(convex_hull_2d(std::move(pts)));
}

ConvexBody random_probe(std::mt19937_64& rng, const Scenario& scenario) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (!scenario.candidates.empty() && unit(rng) < 0.25) {
        std::uniform_int_distribution<std::size_t> pick(0, scenario.candidates.size() - 1);
        return scenario.candidates[pick(rng)];
    }
    const int p = scenario.dist.dimension();
    if (p == 1) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        const auto plus = UnitDirection::axis(1, 0);
        for (const auto& b : scenario.dist.bodies()) {
            lo = std::min(lo, -b.support(-plus));
            hi = std::max(hi, b.support(plus));
        }
        return random_interval(rng, std::floor(lo) - 3.0, std::ceil(hi) + 3.0);
    }
    if (p == 2) {
        Vector lo = Vector::Constant(2, std::numeric_limits<double>::infinity());
        Vector hi = -lo;
        for (int i = 0; i < 2; ++i) {
            const auto e = UnitDirection::axis(2, i);
            for (const auto& b : scenario.dist.bodies()) {
                lo[i] = std::min(lo[i], -b.support(-e));
                hi[i] = std::max(hi[i], b.support(e));
            }
        }
        Vector c(2);
        for (int i = 0; i < 2; ++i) {
            std::uniform_real_distribution<double> coord(lo[i] - 2.0, hi[i] + 2.0);
            c[i] = coord(rng);
        }
        std::uniform_real_distribution<double> radius(0.2, 2.5);
        return random_polygon(rng, c, radius(rng));
    }
    std::normal_distribution<double> normal(0.0, 2.0);
    Vector lo(p), hi(p);
    for (int i = 0; i < p; ++i) {
        const double a = normal(rng);
        lo[i] = a;
        hi[i] = a + std::abs(normal(rng));
    }
    return ConvexBody::box(lo, hi);
}

Matrix random_nonsingular(std::mt19937_64& rng, int dimension, double max_condition) {
    if (dimension == 1) {
        std::uniform_real_distribution<double> mag(0.2, 5.0);
        std::bernoulli_distribution flip(0.5);
        Matrix m(1, 1);
        m(0, 0) = (flip(rng) ? -1.0 : 1.0) * mag(rng);
        return m;
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    for (;;) {
        Matrix m(dimension, dimension);
        for (int i = 0; i < dimension; ++i) {
            for (int j = 0; j < dimension; ++j) {
                m(i, j) = normal(rng);
            }
        }
        Eigen::JacobiSVD<Matrix> svd(m);
        const auto& s = svd.singularValues();
        if (s[dimension - 1] > 0 && s[0] / s[dimension - 1] <= max_condition) {
            return m;
        }
    }
}

Scenario counterexample_scenario() {
    auto dist = make_discrete({ConvexBody::interval(1, 2), ConvexBody::interval(2, 7)},
                              std::vector<Probability>{Probability(3, 4), Probability(1, 4)});
    Scenario s{"counterexample", dist, tukey_median_1d(dist), false,
               {ConvexBody::interval(1, 2), ConvexBody::interval(2, 7), ConvexBody::interval(3, 5)}};
    return s;
}

Scenario degenerate_scenario(const ConvexBody& body) {
    auto dist = make_empirical({body});
    std::vector<ConvexBody> candidates{body};
    const int p = body.dimension();
    for (double shift : {0.5, 1.0, 2.0}) {
        candidates.push_back(minkowski_sum(body, ConvexBody::singleton(Vector::Constant(p, shift))));
        candidates.push_back(minkowski_sum(body, scale(body, shift)));
    }
    return {"degenerate-p" + std::to_string(p), dist, body, true, candidates};
}

Scenario translates_scenario() {
    auto dist = make_empirical({ConvexBody::interval(0, 1), ConvexBody::interval(1, 2), ConvexBody::interval(2, 3)});
    std::vector<ConvexBody> candidates;
    for (int k = -4; k <= 10; ++k) {
        candidates.push_back(ConvexBody::interval(0.5 * k, 0.5 * k + 1.0));
    }
    return {"translates", dist, tukey_median_1d(dist), false, candidates};
}

Scenario random_interval_scenario(std::mt19937_64& rng, const std::string& id) {
    std::uniform_int_distribution<int> count(2, 7);
    std::uniform_int_distribution<std::int64_t> mass(1, 5);
    const int k = count(rng);
    std::vector<ConvexBody> atoms;
    std::vector<std::int64_t> masses;
    for (int i = 0; i < k; ++i) {
        atoms.push_back(random_interval(rng, 0.0, 10.0));
        masses.push_back(mass(rng));
    }
    DiscreteSetDistribution dist(atoms, masses);
    auto center = tukey_median_1d(dist);
    const bool symmetric = is_compact_symmetric(dist, center, symmetry_directions(1));
    Scenario s{id, dist, center, symmetric, {}};
    std::vector<ConvexBody> base = atoms;
    base.push_back(center);
    s.candidates = with_extra_probes(rng, base, s, 6);
    return s;
}

Scenario symmetric_interval_scenario(std::mt19937_64& rng, const std::string& id) {
    auto k1 = random_interval(rng, 0.0, 10.0);
    auto k2 = random_interval(rng, 0.0, 10.0);
    auto dist = make_empirical({k1, k2});
    auto center = two_atom_symmetric_center(k1, k2);
    if (!is_compact_symmetric(dist, center, symmetry_directions(1))) {
        throw ComputationError("symmetric_interval_scenario: center failed symmetry certification");
    }
    Scenario s{id, dist, center, true, {}};
    s.candidates = with_extra_probes(rng, {k1, k2, center}, s, 6);
    return s;
}

Scenario random_polygon_scenario(std::mt19937_64& rng, const std::string& id) {
    std::uniform_int_distribution<int> count(2, 5);
    std::uniform_int_distribution<std::int64_t> mass(1, 4);
    std::uniform_real_distribution<double> coord(0.0, 6.0);
    std::uniform_real_distribution<double> radius(0.5, 2.0);
    const int k = count(rng);
    std::vector<ConvexBody> atoms;
    std::vector<std::int64_t> masses;
    for (int i = 0; i < k; ++i) {
        Vector c(2);
        c << coord(rng), coord(rng);
        atoms.push_back(random_polygon(rng, c, radius(rng)));
        masses.push_back(mass(rng));
    }
    Scenario s{id, DiscreteSetDistribution(atoms, masses), std::nullopt, false, {}};
    s.candidates = with_extra_probes(rng, atoms, s, 4);
    return s;
}

Scenario symmetric_polygon_scenario(std::mt19937_64& rng, const std::string& id) {
    std::uniform_real_distribution<double> coord(0.0, 6.0);
    std::uniform_real_distribution<double> radius(0.5, 2.0);
    Vector c1(2), c2(2);
    c1 << coord(rng), coord(rng);
    c2 << coord(rng), coord(rng);
    auto k1 = random_polygon(rng, c1, radius(rng));
    auto k2 = random_polygon(rng, c2, radius(rng));
    auto dist = make_empirical({k1, k2});
    auto center = two_atom_symmetric_center(k1, k2);
    if (!is_compact_symmetric(dist, center, symmetry_directions(2))) {
        throw ComputationError("symmetric_polygon_scenario: center failed symmetry certification");
    }
    Scenario s{id, dist, center, true, {}};
    s.candidates = with_extra_probes(rng, {k1, k2, center}, s, 4);
    return s;
}

std::vector<Scenario> default_scenarios(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Scenario> out;
    out.push_back(counterexample_scenario());
    out.push_back(degenerate_scenario(ConvexBody::interval(1, 2)));
    out.push_back(degenerate_scenario(ConvexBody::box(Vector::Zero(2), Vector::Ones(2))));
    out.push_back(translates_scenario());
    for (int i = 0; i < 12; ++i) out.push_back(random_interval_scenario(rng, "interval-" + std::to_string(i)));
    for (int i = 0; i < 6; ++i) out.push_back(symmetric_interval_scenario(rng, "sym-interval-" + std::to_string(i)));
    for (int i = 0; i < 8; ++i) out.push_back(random_polygon_scenario(rng, "polygon-" + std::to_string(i)));
    for (int i = 0; i < 6; ++i) out.push_back(symmetric_polygon_scenario(rng, "sym-polygon-" + std::to_string(i)));
    return out;
}

}  // namespace setdepth
