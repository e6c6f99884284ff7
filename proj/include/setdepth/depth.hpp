#pragma once

#include "setdepth/directions.hpp"
#include "setdepth/distribution.hpp"
#include "setdepth/geometry.hpp"
#include "setdepth/probability.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace setdepth {

enum class DepthMethod { kAuto, kExact, kSampled };
enum class Side { kLe, kGe };
enum class EngineTag { kExact1d, kExact2d, kSampled };

DepthMethod parse_depth_method(const std::string& name);
std::string to_string(DepthMethod method);
std::string to_string(Side side);
std::string to_string(EngineTag tag);

struct DepthConfig {
    DepthMethod method = DepthMethod::kAuto;
    // m for the sampled engine; unset uses default_directions (1024 angles in
    // the plane, 2048 sphere points in R^3, 4096 random directions above)
    std::optional<std::size_t> direction_budget;
    std::uint64_t seed = 0;
    double tolerance = kGeometryTolerance;
};

/// Depth value plus the certificate that reproduces it: the minimizing
/// direction and which tail probability attained the minimum.
struct DepthReport {
    Probability value;
    UnitDirection witness_direction;
    Side witness_side = Side::kLe;
    EngineTag method = EngineTag::kExact1d;
    std::size_t directions_used = 0;
};

/// Univariate halfspace depth min(P(X <= x), P(X >= x)), both inclusive.
Probability halfspace_depth_1d(double x, const DirectionalLaw& law, double tolerance = 0.0);

// Exact depth for p = 1, where the sphere is {+1, -1}.
DepthReport depth_interval_exact(const ConvexBody& body, const DiscreteSetDistribution& dist,
                                 double tolerance = kGeometryTolerance);

/// Exact depth for p = 2 with polytopal body and atoms.
///
/// The circle is cut at the support breakpoints of every body (outward edge
/// normals) and at the zeros of s_X(t) - s_K(t) inside each breakpoint arc,
/// where the active vertices are fixed and the difference is a single
/// sinusoid. Both tail counts are constant on the open arcs between cuts, so
/// evaluating every cut angle and every arc midpoint attains the infimum.
/// Throws NeedsSampling for non-polytopal input.
DepthReport depth_poly2d_exact(const ConvexBody& body, const DiscreteSetDistribution& dist,
                               double tolerance = kGeometryTolerance);

// Angles (sorted, deduplicated) at which depth_poly2d_exact evaluates.
std::vector<double> exact2d_evaluation_angles(const ConvexBody& body, const DiscreteSetDistribution& dist);

/// Minimum of the directional halfspace depth over a finite direction set.
/// An upper bound on the true depth; lowest index wins ties.
DepthReport depth_sampled(const ConvexBody& body, const DiscreteSetDistribution& dist,
                          const std::vector<UnitDirection>& directions, double tolerance = kGeometryTolerance);

/// Tukey depth of `body` with respect to `dist`. Auto dispatch: exact for
/// p = 1 and for planar polytopal input, sampled otherwise.
DepthReport depth(const ConvexBody& body, const DiscreteSetDistribution& dist, const DepthConfig& config = {});

// Direction set the sampled engine uses for this config and dimension.
std::vector<UnitDirection> sampling_directions(int dimension, const DepthConfig& config);

/// Min over halfspace probabilities P(Gamma in S^-_{u,t}) with K in S^-_{u,t},
/// and the same for S^+, enumerating every threshold t that changes the count.
/// Independent of halfspace_depth_1d; used to cross-check the collapsed form.
Probability depth_by_halfspace_enumeration(const ConvexBody& body, const DiscreteSetDistribution& dist,
                                           const std::vector<UnitDirection>& directions,
                                           double tolerance = kGeometryTolerance);

/// [lower median of left endpoints, lower median of right endpoints]; a
/// deepest interval for a distribution on intervals.
ConvexBody tukey_median_1d(const DiscreteSetDistribution& dist);

struct RankedBody {
    std::size_t index = 0;  // position in the input sequence
    ConvexBody body;
    DepthReport report;
};

// Sorted by depth, deepest first; ties keep input order.
std::vector<RankedBody> rank(const std::vector<ConvexBody>& bodies, const DiscreteSetDistribution& dist,
                             const DepthConfig& config = {});

// depth(K) >= alpha - tolerance.
bool contour_membership(const ConvexBody& body, const DiscreteSetDistribution& dist, double alpha,
                        const DepthConfig& config = {});

}  // namespace setdepth
