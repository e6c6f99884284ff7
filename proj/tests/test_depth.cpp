#include "setdepth/depth.hpp"
#include "setdepth/errors.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace setdepth;

namespace {

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

DiscreteSetDistribution two_atom_law() {
    return make_discrete({ConvexBody::interval(1, 2), ConvexBody::interval(2, 7)},
                         std::vector<Probability>{Probability(3, 4), Probability(1, 4)});
}

ConvexBody square_at(double cx, double cy) {
    return ConvexBody::box(vec({cx - 0.5, cy - 0.5}), vec({cx + 0.5, cy + 0.5}));
}

DiscreteSetDistribution three_squares() {
    return make_empirical({square_at(0, 0), square_at(1, 0), square_at(2, 0)});
}

DirectionalLaw law_of(std::vector<double> values) {
    std::vector<std::int64_t> masses(values.size(), 1);
    const auto total = static_cast<std::int64_t>(values.size());
    return {UnitDirection::axis(1, 0), std::move(values), std::move(masses), total};
}

ConvexBody random_polygon(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> x(-2, 4);
    std::vector<Vector> pts;
    for (int i = 0; i < 5; ++i) pts.push_back(vec({x(rng), x(rng)}));
    return ConvexBody::polytope(convex_hull_2d(pts));
}

}  // namespace

TEST(HalfspaceDepth1d, Examples) {
    EXPECT_EQ(halfspace_depth_1d(2, support_law(two_atom_law(), UnitDirection::axis(1, 0))), Probability(3, 4));
    EXPECT_EQ(halfspace_depth_1d(3, law_of({1, 2, 3, 4, 5})), Probability(3, 5));
    EXPECT_EQ(halfspace_depth_1d(0, law_of({1, 2, 3})), Probability::zero());
}

TEST(DepthInterval, TwoAtomLawValues) {
    const auto d = two_atom_law();
    EXPECT_EQ(depth_interval_exact(ConvexBody::interval(1, 2), d).value, Probability(3, 4));
    EXPECT_EQ(depth_interval_exact(ConvexBody::interval(2, 7), d).value, Probability(1, 4));
    EXPECT_EQ(depth_interval_exact(ConvexBody::interval(3, 5), d).value, Probability::zero());
}

TEST(DepthInterval, WitnessReproducesValue) {
    const auto d = two_atom_law();
    const auto k = ConvexBody::interval(3, 5);
    const auto r = depth_interval_exact(k, d);
    const auto law = support_law(d, r.witness_direction);
    const auto tail = r.witness_side == Side::kLe ? law.cdf_le(k.support(r.witness_direction), 1e-9)
                                                  : law.cdf_ge(k.support(r.witness_direction), 1e-9);
    EXPECT_EQ(tail, r.value);
    EXPECT_EQ(r.method, EngineTag::kExact1d);
    EXPECT_EQ(r.directions_used, 2u);
}

TEST(DepthPoly2d, DegenerateLawGivesOne) {
    const auto k = ConvexBody::polytope({vec({0, 0}), vec({2, 1}), vec({1, 3})});
    EXPECT_EQ(depth_poly2d_exact(k, make_empirical({k})).value, Probability::one());
}

TEST(DepthPoly2d, ThreeSquares) {
    const auto r = depth_poly2d_exact(square_at(1, 0), three_squares());
    EXPECT_EQ(r.value, Probability(2, 3));
    EXPECT_EQ(r.method, EngineTag::kExact2d);
}

TEST(DepthPoly2d, DisjointBodyToTheRight) {
    EXPECT_EQ(depth_poly2d_exact(square_at(10, 0), three_squares()).value, Probability::zero());
}

TEST(DepthPoly2d, RejectsNonPolytopal) {
    EXPECT_THROW(depth_poly2d_exact(ConvexBody::ball(vec({0, 0}), 1), three_squares()), NeedsSampling);
}

TEST(DepthPoly2d, NeverAboveFineGridAndMatchesEnumeration) {
    std::mt19937_64 rng(17);
    std::vector<UnitDirection> grid;
    for (int i = 0; i < 20000; ++i) grid.push_back(UnitDirection::from_angle(2 * std::numbers::pi * i / 20000));
    for (int t = 0; t < 30; ++t) {
        std::vector<ConvexBody> atoms;
        for (int i = 0; i < 4; ++i) atoms.push_back(random_polygon(rng));
        const auto d = make_empirical(atoms);
        const auto k = t % 3 == 0 ? atoms[0] : random_polygon(rng);
        const auto exact = depth_poly2d_exact(k, d);
        EXPECT_LE(exact.value, depth_sampled(k, d, grid).value);
        // the enumeration oracle on the engine's own angle set must agree
        std::vector<UnitDirection> events;
        for (double a : exact2d_evaluation_angles(k, d)) events.push_back(UnitDirection::from_angle(a));
        EXPECT_EQ(exact.value, depth_by_halfspace_enumeration(k, d, events));
    }
}

TEST(DepthSampled, OneDimensionMatchesExact) {
    const auto d = two_atom_law();
    const std::vector<UnitDirection> pm{UnitDirection::axis(1, 0), UnitDirection::axis(1, 0, true)};
    for (const auto& k : {ConvexBody::interval(1, 2), ConvexBody::interval(2, 7), ConvexBody::interval(3, 5)}) {
        EXPECT_EQ(depth_sampled(k, d, pm).value, depth_interval_exact(k, d).value);
    }
}

TEST(DepthSampled, GridHitsSquaresMinimum) {
    const auto grid = direction_set(2, DirectionStrategy::kGrid2d, 1024, 0);
    const auto r = depth_sampled(square_at(1, 0), three_squares(), grid);
    EXPECT_NEAR(r.value.to_double(), 2.0 / 3.0, 1e-12);
    EXPECT_EQ(r.method, EngineTag::kSampled);
    EXPECT_EQ(r.directions_used, 1024u);
}

TEST(DepthSampled, MoreDirectionsNeverIncrease) {
    std::mt19937_64 rng(5);
    const auto d = make_empirical({random_polygon(rng), random_polygon(rng), random_polygon(rng)});
    const auto k = random_polygon(rng);
    const auto small = direction_set(2, DirectionStrategy::kRandom, 64, 1);
    auto big = small;
    const auto extra = direction_set(2, DirectionStrategy::kRandom, 512, 2);
    big.insert(big.end(), extra.begin(), extra.end());
    EXPECT_LE(depth_sampled(k, d, big).value, depth_sampled(k, d, small).value);
}

TEST(Directions, Sets) {
    EXPECT_EQ(direction_set(1, DirectionStrategy::kRandom, 50, 3).size(), 2u);
    const auto g = direction_set(2, DirectionStrategy::kGrid2d, 4, 0);
    ASSERT_EQ(g.size(), 4u);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(g[i].angle(), i * std::numbers::pi / 2, 1e-12);
    const auto a = direction_set(3, DirectionStrategy::kRandom, 10, 42);
    const auto b = direction_set(3, DirectionStrategy::kRandom, 10, 42);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(a[i].coords(), b[i].coords());
    EXPECT_THROW(direction_set(3, DirectionStrategy::kGrid2d, 8, 0), ValidationError);
}

TEST(Depth, AutoDispatch) {
    const auto r = depth(ConvexBody::interval(1, 2), two_atom_law());
    EXPECT_EQ(r.value, Probability(3, 4));
    EXPECT_EQ(r.method, EngineTag::kExact1d);
    EXPECT_EQ(depth(square_at(1, 0), three_squares()).method, EngineTag::kExact2d);

    const auto b1 = ConvexBody::box(vec({0, 0, 0}), vec({1, 1, 1}));
    const auto b2 = ConvexBody::box(vec({1, 0, 0}), vec({2, 1, 1}));
    DepthConfig cfg;
    cfg.direction_budget = 300;
    const auto s = depth(b1, make_empirical({b1, b2}), cfg);
    EXPECT_EQ(s.method, EngineTag::kSampled);
    EXPECT_EQ(s.directions_used, 300u);
    EXPECT_EQ(depth(b1, make_empirical({b1, b2})).directions_used, 2048u);
    const auto b3 = ConvexBody::box(vec({0, 0, 0, 0}), vec({1, 1, 1, 1}));
    EXPECT_EQ(depth(b3, make_empirical({b3})).directions_used, 4096u);
}

TEST(Depth, DegenerateLawAnyDimension) {
    for (const auto& k : {ConvexBody::interval(0, 1), square_at(0, 0), ConvexBody::ball(vec({0, 0, 0}), 1)}) {
        EXPECT_EQ(depth(k, make_empirical({k})).value, Probability::one());
    }
}

TEST(Depth, ExactMethodRefusesUnsupportedInput) {
    DepthConfig cfg;
    cfg.method = DepthMethod::kExact;
    EXPECT_THROW(depth(ConvexBody::ball(vec({0, 0}), 1), three_squares(), cfg), NeedsSampling);
}

TEST(Depth, DimensionMismatch) {
    EXPECT_THROW(depth(ConvexBody::interval(0, 1), three_squares()), ValidationError);
}

TEST(Depth, SampledIsDeterministicPerSeed) {
    const auto b1 = ConvexBody::box(vec({0, 0, 0, 0}), vec({1, 1, 1, 1}));
    const auto b2 = ConvexBody::box(vec({1, 0, 0, 0}), vec({2, 1, 2, 1}));
    DepthConfig cfg;
    cfg.method = DepthMethod::kSampled;
    cfg.seed = 7;
    cfg.direction_budget = 500;
    const auto a = depth(b1, make_empirical({b1, b2}), cfg);
    const auto b = depth(b1, make_empirical({b1, b2}), cfg);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.witness_direction.coords(), b.witness_direction.coords());
    EXPECT_EQ(a.directions_used, 500u);
}

TEST(Median1d, Examples) {
    const auto m = tukey_median_1d(two_atom_law());
    EXPECT_EQ(hausdorff(m, ConvexBody::interval(1, 2)).value, 0.0);
    EXPECT_EQ(depth(m, two_atom_law()).value, Probability(3, 4));

    const auto k = ConvexBody::interval(3, 8);
    EXPECT_EQ(hausdorff(tukey_median_1d(make_empirical({k})), k).value, 0.0);

    const auto eq = make_empirical({ConvexBody::interval(0, 1), ConvexBody::interval(2, 3), ConvexBody::interval(4, 5)});
    const auto med = tukey_median_1d(eq);
    EXPECT_EQ(hausdorff(med, ConvexBody::interval(2, 3)).value, 0.0);
    EXPECT_EQ(depth(med, eq).value, Probability(2, 3));
}

TEST(Median1d, MaximizesDepthOverEndpointGrid) {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> e(0, 12);
    for (int t = 0; t < 20; ++t) {
        std::vector<ConvexBody> atoms;
        for (int i = 0; i < 5; ++i) {
            const int a = e(rng), b = e(rng);
            atoms.push_back(ConvexBody::interval(std::min(a, b), std::max(a, b)));
        }
        const auto d = make_empirical(atoms);
        const auto best = depth(tukey_median_1d(d), d).value;
        for (int a = 0; a <= 12; ++a) {
            for (int b = a; b <= 12; ++b) EXPECT_LE(depth(ConvexBody::interval(a, b), d).value, best);
        }
    }
}

TEST(Rank, TwoAtomLawOrder) {
    const std::vector<ConvexBody> bodies{ConvexBody::interval(3, 5), ConvexBody::interval(2, 7),
                                         ConvexBody::interval(1, 2)};
    const auto r = rank(bodies, two_atom_law());
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[0].index, 2u);
    EXPECT_EQ(r[1].index, 1u);
    EXPECT_EQ(r[2].index, 0u);
    EXPECT_EQ(r[0].report.value, Probability(3, 4));
    EXPECT_EQ(r[2].report.value, Probability::zero());
}

TEST(Rank, TiesKeepInputOrder) {
    const auto k = ConvexBody::interval(1, 2);
    const auto r = rank({k, k, k}, two_atom_law());
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(r[i].index, i);
}

TEST(Rank, MiddleSquareFirst) {
    const auto r = rank({square_at(0, 0), square_at(1, 0), square_at(2, 0)}, three_squares());
    EXPECT_EQ(r[0].index, 1u);
}

TEST(Contour, Membership) {
    const auto d = two_atom_law();
    EXPECT_TRUE(contour_membership(ConvexBody::interval(3, 5), d, 0.0));
    EXPECT_TRUE(contour_membership(ConvexBody::interval(1, 2), d, 0.5));
    EXPECT_FALSE(contour_membership(ConvexBody::interval(2, 7), d, 0.5));
    const auto k = ConvexBody::interval(1, 2);
    const auto delta = make_empirical({k});
    EXPECT_TRUE(contour_membership(k, delta, 1.0));
    EXPECT_FALSE(contour_membership(ConvexBody::interval(1, 2.5), delta, 1.0));
}
