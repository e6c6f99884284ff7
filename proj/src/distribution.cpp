#include "setdepth/distribution.hpp"

#include "setdepth/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>

namespace setdepth {

namespace {

constexpr std::int64_t kMaxDenominator = 1'000'000'000;
constexpr std::int64_t kMaxTotalMass = std::int64_t{1} << 53;

// Best rational approximation of x in [0, 1] by continued fractions.
std::pair<std::int64_t, std::int64_t> to_rational(double x) {
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(r);
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t p2 = ai * p1 + p0;
        const std::int64_t q2 = ai * q1 + q0;
        if (q2 > kMaxDenominator) {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if (std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) <= 1e-15) {
            break;
        }
        const double frac = r - a;
        if (frac < 1e-18) {
            break;
        }
        r = 1.0 / frac;
    }
    return {p1, q1};
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
    const auto l = static_cast<__int128>(a / std::gcd(a, b)) * b;
    if (l > kMaxTotalMass) {
        throw ValidationError("weights: common denominator too large for exact arithmetic");
    }
    return static_cast<std::int64_t>(l);
}

}  // namespace

DiscreteSetDistribution::DiscreteSetDistribution(std::vector<ConvexBody> bodies, std::vector<std::int64_t> masses)
    : bodies_(std::move(bodies)), masses_(std::move(masses)) {
    if (bodies_.empty()) {
        throw ValidationError("distribution: no atoms");
    }
    if (bodies_.size() != masses_.size()) {
        throw ValidationError("distribution: atom/weight count mismatch");
    }
    dimension_ = bodies_.front().dimension();
    __int128 total = 0;
    for (std::size_t i = 0; i < bodies_.size(); ++i) {
        if (bodies_[i].dimension() != dimension_) {
            throw ValidationError("distribution: atoms of mixed dimension");
        }
        if (masses_[i] <= 0) {
            throw ValidationError("distribution: nonpositive weight");
        }
        total += masses_[i];
    }
    if (total > kMaxTotalMass) {
        throw ValidationError("distribution: total mass overflow");
    }
    total_ = static_cast<std::int64_t>(total);
}

bool DiscreteSetDistribution::all_polytopal() const {
    return std::all_of(bodies_.begin(), bodies_.end(), [](const ConvexBody& b) { return b.is_polytopal(); });
}

DiscreteSetDistribution make_discrete(std::vector<ConvexBody> atoms, const std::vector<double>& weights) {
    if (atoms.empty()) {
        throw ValidationError("distribution: no atoms");
    }
    if (atoms.size() != weights.size()) {
        throw ValidationError("distribution: atom/weight count mismatch");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w <= 0.0) {
            throw ValidationError("distribution: weights must be positive and finite");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
        throw ValidationError("distribution: weights sum to " + std::to_string(sum) + ", expected 1");
    }
    std::vector<Probability> exact;
    exact.reserve(weights.size());
    for (double w : weights) {
        auto [num, den] = to_rational(std::min(w, 1.0));
        if (num == 0) {
            throw ValidationError("distribution: weight too small to represent exactly");
        }
        exact.emplace_back(num, den);
    }
    return make_discrete(std::move(atoms), exact);
}

DiscreteSetDistribution make_discrete(std::vector<ConvexBody> atoms, const std::vector<Probability>& weights) {
    if (atoms.size() != weights.size()) {
        throw ValidationError("distribution: atom/weight count mismatch");
    }
    std::int64_t common = 1;
    for (const auto& w : weights) {
        if (w.numerator() == 0) {
            throw ValidationError("distribution: nonpositive weight");
        }
        common = checked_lcm(common, w.denominator());
    }
    std::vector<std::int64_t> masses;
    masses.reserve(weights.size());
    for (const auto& w : weights) {
        masses.push_back(w.numerator() * (common / w.denominator()));
    }
    // Renormalization is implicit: probabilities are mass / sum(masses).
    return {std::move(atoms), std::move(masses)};
}

DiscreteSetDistribution make_empirical(std::vector<ConvexBody> bodies) {
    std::vector<std::int64_t> masses(bodies.size(), 1);
    return {std::move(bodies), std::move(masses)};
}

DiscreteSetDistribution sample(const DiscreteSetDistribution& dist, std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw ValidationError("sample: n must be >= 1");
    }
    std::vector<std::int64_t> cumulative(dist.size());
    std::partial_sum(dist.masses().begin(), dist.masses().end(), cumulative.begin());
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> pick(0, dist.total_mass() - 1);
    std::vector<ConvexBody> draws;
    draws.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto r = pick(rng);
        const auto idx = static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin());
        draws.push_back(dist.body(idx));
    }
    return make_empirical(std::move(draws));
}

DiscreteSetDistribution aggregated(const DiscreteSetDistribution& dist) {
    std::vector<ConvexBody> bodies;
    std::vector<std::int64_t> masses;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        bool merged = false;
        // TODO: hash atoms instead of the quadratic scan once supports grow past a few hundred atoms
        for (std::size_t j = 0; j < bodies.size(); ++j) {
            if (identical(bodies[j], dist.body(i))) {
                masses[j] += dist.mass(i);
                merged = true;
                break;
            }
        }
        if (!merged) {
            bodies.push_back(dist.body(i));
            masses.push_back(dist.mass(i));
        }
    }
    return {std::move(bodies), std::move(masses)};
}

DiscreteSetDistribution affine_image(const AffineMap& map, const DiscreteSetDistribution& dist) {
    std::vector<ConvexBody> bodies;
    bodies.reserve(dist.size());
    for (const auto& b : dist.bodies()) {
        bodies.push_back(affine_image(map, b));
    }
    return {std::move(bodies), dist.masses()};
}

// ---------------------------------------------------------------------------

DirectionalLaw::DirectionalLaw(UnitDirection direction, std::vector<double> values, std::vector<std::int64_t> masses,
                               std::int64_t total)
    : direction_(std::move(direction)), values_(std::move(values)), masses_(std::move(masses)), total_(total) {
    if (values_.empty() || values_.size() != masses_.size()) {
        throw ValidationError("DirectionalLaw: values/masses mismatch");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw ComputationError("DirectionalLaw: non-finite support value");
        }
    }
}

std::int64_t DirectionalLaw::mass_le(double x, double tolerance) const {
    std::int64_t m = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] <= x + tolerance) {
            m += masses_[i];
        }
    }
    return m;
}

std::int64_t DirectionalLaw::mass_ge(double x, double tolerance) const {
    std::int64_t m = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] >= x - tolerance) {
            m += masses_[i];
        }
    }
    return m;
}

Probability DirectionalLaw::cdf_le(double x, double tolerance) const { return {mass_le(x, tolerance), total_}; }

Probability DirectionalLaw::cdf_ge(double x, double tolerance) const { return {mass_ge(x, tolerance), total_}; }

DirectionalLaw support_law(const DiscreteSetDistribution& dist, const UnitDirection& u) {
    if (u.dimension() != dist.dimension()) {
        throw ValidationError("support_law: direction dimension does not match distribution");
    }
    std::vector<double> values;
    values.reserve(dist.size());
    for (const auto& b : dist.bodies()) {
        values.push_back(b.support(u));
    }
    return {u, std::move(values), dist.masses(), dist.total_mass()};
}

ConvexBody two_atom_symmetric_center(const ConvexBody& k1, const ConvexBody& k2) {
    if (k1.dimension() != k2.dimension()) {
        throw ValidationError("two_atom_symmetric_center: dimension mismatch");
    }
    return scale(minkowski_sum(k1, k2), 0.5);
}

bool is_compact_symmetric(const DiscreteSetDistribution& dist, const ConvexBody& center,
                          const std::vector<UnitDirection>& directions, double tolerance) {
    if (directions.empty()) {
        throw ValidationError("is_compact_symmetric: empty direction set");
    }
    if (center.dimension() != dist.dimension()) {
        throw ValidationError("is_compact_symmetric: dimension mismatch");
    }
    for (const auto& u : directions) {
        const double c = center.support(u);
        std::vector<std::pair<double, std::int64_t>> dev;
        dev.reserve(dist.size());
        for (std::size_t i = 0; i < dist.size(); ++i) {
            dev.emplace_back(dist.body(i).support(u) - c, dist.mass(i));
        }
        std::sort(dev.begin(), dev.end());
        // aggregate values that agree within tolerance
        std::vector<std::pair<double, std::int64_t>> clusters;
        for (const auto& [d, m] : dev) {
            if (!clusters.empty() && d - clusters.back().first <= tolerance) {
                clusters.back().second += m;
            } else {
                clusters.emplace_back(d, m);
            }
        }
        for (std::size_t i = 0, j = clusters.size() - 1; i <= j; ++i, --j) {
            if (std::abs(clusters[i].first + clusters[j].first) > tolerance ||
                clusters[i].second != clusters[j].second) {
                return false;
            }
            if (j == 0) {
                break;
            }
        }
    }
    return true;
}

}  // namespace setdepth
