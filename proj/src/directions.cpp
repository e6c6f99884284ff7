#include "setdepth/directions.hpp"

#include "setdepth/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace setdepth {

DirectionStrategy parse_direction_strategy(const std::string& name) {
    if (name == "axes") return DirectionStrategy::kAxes;
    if (name == "grid2d") return DirectionStrategy::kGrid2d;
    if (name == "lowdisc") return DirectionStrategy::kLowDiscrepancy;
    if (name == "random") return DirectionStrategy::kRandom;
    throw ValidationError("unknown direction strategy '" + name + "'");
}

std::string to_string(DirectionStrategy strategy) {
    switch (strategy) {
        case DirectionStrategy::kAxes: return "axes";
        case DirectionStrategy::kGrid2d: return "grid2d";
        case DirectionStrategy::kLowDiscrepancy: return "lowdisc";
        case DirectionStrategy::kRandom: return "random";
    }
    return "unknown";
}

std::vector<UnitDirection> direction_set(int dimension, DirectionStrategy strategy, std::size_t count,
                                         std::uint64_t seed) {
    if (dimension < 1) {
        throw ValidationError("direction_set: dimension must be >= 1");
    }
    if (count < 1) {
        throw ValidationError("direction_set: need at least one direction");
    }
    if (dimension == 1) {
        return {UnitDirection::axis(1, 0), UnitDirection::axis(1, 0, true)};
    }

    std::vector<UnitDirection> out;
    switch (strategy) {
        case DirectionStrategy::kAxes:
            for (int i = 0; i < dimension; ++i) {
                out.push_back(UnitDirection::axis(dimension, i));
                out.push_back(UnitDirection::axis(dimension, i, true));
            }
            return out;

        case DirectionStrategy::kGrid2d:
            if (dimension != 2) {
                throw ValidationError("direction_set: grid2d requires p = 2");
            }
            out.reserve(count);
            for (std::size_t k = 0; k < count; ++k) {
                out.push_back(UnitDirection::from_angle(2.0 * std::numbers::pi * static_cast<double>(k) /
                                                        static_cast<double>(count)));
            }
            return out;

        case DirectionStrategy::kLowDiscrepancy: {
            if (dimension != 3) {
                throw ValidationError("direction_set: lowdisc requires p = 3");
            }
            // Fibonacci sphere
            const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
            out.reserve(count);
            for (std::size_t k = 0; k < count; ++k) {
                const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(count);
                const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
                const double phi = golden * static_cast<double>(k);
                Vector v(3);
                v << r * std::cos(phi), r * std::sin(phi), z;
                out.emplace_back(std::move(v));
            }
            return out;
        }

        case DirectionStrategy::kRandom: {
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> normal(0.0, 1.0);
            out.reserve(count);
            while (out.size() < count) {
                Vector v(dimension);
                for (int i = 0; i < dimension; ++i) {
                    v[i] = normal(rng);
                }
                if (v.norm() > 1e-12) {
                    out.emplace_back(std::move(v));
                }
            }
            return out;
        }
    }
    throw ValidationError("direction_set: invalid strategy");
}

std::vector<UnitDirection> default_directions(int dimension, std::uint64_t seed, std::size_t random_count) {
    switch (dimension) {
        case 1: return direction_set(1, DirectionStrategy::kAxes, 2, seed);
        case 2: return direction_set(2, DirectionStrategy::kGrid2d, 1024, seed);
        case 3: return direction_set(3, DirectionStrategy::kLowDiscrepancy, 2048, seed);
        default: return direction_set(dimension, DirectionStrategy::kRandom, random_count, seed);
    }
}

}  // namespace setdepth
