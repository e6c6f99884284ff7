#pragma once

#include "setdepth/geometry.hpp"
#include "setdepth/probability.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace setdepth {

/// Finitely supported law of a compact convex random set. Atom i carries
/// probability mass(i) / total_mass(), so every event probability is an exact
/// rational. i.i.d. samples are the case mass = 1, total = n.
class DiscreteSetDistribution {
public:
    // Masses must be positive; all bodies must share one dimension.
    DiscreteSetDistribution(std::vector<ConvexBody> bodies, std::vector<std::int64_t> masses);

    int dimension() const { return dimension_; }
    std::size_t size() const { return bodies_.size(); }
    const ConvexBody& body(std::size_t i) const { return bodies_.at(i); }
    const std::vector<ConvexBody>& bodies() const { return bodies_; }
    std::int64_t mass(std::size_t i) const { return masses_.at(i); }
    const std::vector<std::int64_t>& masses() const { return masses_; }
    std::int64_t total_mass() const { return total_; }
    Probability weight(std::size_t i) const { return {masses_.at(i), total_}; }

    bool all_polytopal() const;

private:
    std::vector<ConvexBody> bodies_;
    std::vector<std::int64_t> masses_;
    std::int64_t total_ = 0;
    int dimension_ = 0;
};

/// Validates atoms and floating weights (positive, sum within 1e-6 of 1) and
/// converts them to exact rationals renormalized to sum exactly 1.
DiscreteSetDistribution make_discrete(std::vector<ConvexBody> atoms, const std::vector<double>& weights);

DiscreteSetDistribution make_discrete(std::vector<ConvexBody> atoms, const std::vector<Probability>& weights);

// Equal weight 1/n on each body (duplicates kept as separate atoms).
DiscreteSetDistribution make_empirical(std::vector<ConvexBody> bodies);

/// n i.i.d. draws as an equal-weight empirical distribution; deterministic for
/// a fixed seed.
DiscreteSetDistribution sample(const DiscreteSetDistribution& dist, std::size_t n, std::uint64_t seed);

// Same law with bit-identical atoms merged (masses summed), first
// occurrence order kept. Used to evaluate large samples quickly.
DiscreteSetDistribution aggregated(const DiscreteSetDistribution& dist);

// Law of M * Gamma + L (masses unchanged).
DiscreteSetDistribution affine_image(const AffineMap& map, const DiscreteSetDistribution& dist);

/// The real random variable s_Gamma(u): one support value per atom.
class DirectionalLaw {
public:
    DirectionalLaw(UnitDirection direction, std::vector<double> values, std::vector<std::int64_t> masses,
                   std::int64_t total);

    const UnitDirection& direction() const { return direction_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<std::int64_t>& masses() const { return masses_; }
    std::int64_t total_mass() const { return total_; }

    // P(s_Gamma(u) <= x) and P(s_Gamma(u) >= x); a value within `tolerance`
    // of x counts as equal.
    Probability cdf_le(double x, double tolerance = 0.0) const;
    Probability cdf_ge(double x, double tolerance = 0.0) const;

    std::int64_t mass_le(double x, double tolerance = 0.0) const;
    std::int64_t mass_ge(double x, double tolerance = 0.0) const;

private:
    UnitDirection direction_;
    std::vector<double> values_;
    std::vector<std::int64_t> masses_;
    std::int64_t total_ = 0;
};

DirectionalLaw support_law(const DiscreteSetDistribution& dist, const UnitDirection& u);

/// Minkowski midpoint (K1 + K2) / 2: the uniform law on {K1, K2} is
/// compact-symmetric about it in every direction.
ConvexBody two_atom_symmetric_center(const ConvexBody& k1, const ConvexBody& k2);

/// True iff for every supplied direction the weighted multiset
/// {s_X(u) - s_K(u)} equals its negation (values matched within tolerance,
/// masses aggregated and compared exactly). Only certifies the given
/// directions; for p = 1 the set {+1, -1} is the whole sphere.
bool is_compact_symmetric(const DiscreteSetDistribution& dist, const ConvexBody& center,
                          const std::vector<UnitDirection>& directions, double tolerance = kGeometryTolerance);

}  // namespace setdepth
