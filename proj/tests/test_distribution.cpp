#include "setdepth/distribution.hpp"
#include "setdepth/errors.hpp"

#include <gtest/gtest.h>

using namespace setdepth;

namespace {

DiscreteSetDistribution two_atom_law() {
    return make_discrete({ConvexBody::interval(1, 2), ConvexBody::interval(2, 7)}, std::vector<double>{0.75, 0.25});
}

Vector vec2(double x, double y) {
    Vector v(2);
    v << x, y;
    return v;
}

const UnitDirection kPlus = UnitDirection::axis(1, 0);
const UnitDirection kMinus = UnitDirection::axis(1, 0, true);

}  // namespace

TEST(Probability, ReducesAndCompares) {
    const Probability a(6, 8);
    EXPECT_EQ(a.numerator(), 3);
    EXPECT_EQ(a.denominator(), 4);
    EXPECT_EQ(a.to_string(), "3/4");
    EXPECT_LT(Probability(1, 3), Probability(1, 2));
    EXPECT_EQ(min(Probability(2, 3), Probability(3, 5)), Probability(3, 5));
    EXPECT_THROW(Probability(3, 2), ValidationError);
    EXPECT_THROW(Probability(1, 0), ValidationError);
}

TEST(MakeDiscrete, TwoAtomLawIsExact) {
    const auto d = two_atom_law();
    EXPECT_EQ(d.size(), 2u);
    EXPECT_EQ(d.weight(0), Probability(3, 4));
    EXPECT_EQ(d.weight(1), Probability(1, 4));
    EXPECT_EQ(d.dimension(), 1);
}

TEST(MakeDiscrete, Degenerate) {
    const auto d = make_discrete({ConvexBody::interval(0, 1)}, std::vector<double>{1.0});
    EXPECT_EQ(d.weight(0), Probability::one());
}

TEST(MakeDiscrete, Validation) {
    const std::vector<ConvexBody> two{ConvexBody::interval(0, 1), ConvexBody::interval(1, 2)};
    EXPECT_THROW(make_discrete(two, std::vector<double>{0.5, 0.5001}), ValidationError);
    EXPECT_THROW(make_discrete(two, std::vector<double>{1.5, -0.5}), ValidationError);
    EXPECT_THROW(make_discrete(two, std::vector<double>{1.0}), ValidationError);
    EXPECT_THROW(make_discrete({}, std::vector<double>{}), ValidationError);
    EXPECT_THROW(make_empirical({ConvexBody::interval(0, 1), ConvexBody::box(vec2(0, 0), vec2(1, 1))}),
                 ValidationError);
}

TEST(MakeDiscrete, ThirdsBecomeExactRationals) {
    const auto d = make_discrete(
        {ConvexBody::interval(0, 1), ConvexBody::interval(1, 2), ConvexBody::interval(2, 3)},
        std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
    EXPECT_EQ(d.weight(0), Probability(1, 3));
}

TEST(Sample, DegenerateAndDeterministic) {
    const auto delta = make_empirical({ConvexBody::interval(1, 2)});
    const auto one = sample(delta, 1, 5);
    EXPECT_EQ(one.size(), 1u);
    EXPECT_TRUE(identical(one.body(0), delta.body(0)));

    const auto a = sample(two_atom_law(), 100, 9);
    const auto b = sample(two_atom_law(), 100, 9);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(identical(a.body(i), b.body(i)));
    EXPECT_THROW(sample(two_atom_law(), 0, 1), ValidationError);
}

TEST(Sample, FrequenciesApproachWeights) {
    for (auto [n, tol] : {std::pair<std::size_t, double>{10000, 0.02}, {100000, 0.01}}) {
        const auto agg = aggregated(sample(two_atom_law(), n, 11));
        double freq = 0;
        for (std::size_t i = 0; i < agg.size(); ++i) {
            if (identical(agg.body(i), ConvexBody::interval(1, 2))) freq = agg.weight(i).to_double();
        }
        EXPECT_NEAR(freq, 0.75, tol) << "n = " << n;
    }
}

TEST(Aggregated, MergesIdenticalAtoms) {
    const auto d = make_empirical({ConvexBody::interval(0, 1), ConvexBody::interval(2, 3), ConvexBody::interval(0, 1)});
    const auto a = aggregated(d);
    EXPECT_EQ(a.size(), 2u);
    EXPECT_EQ(a.weight(0), Probability(2, 3));
}

TEST(SupportLaw, TwoAtomLawPlus) {
    const auto law = support_law(two_atom_law(), kPlus);
    EXPECT_EQ(law.values(), (std::vector<double>{2, 7}));
    EXPECT_EQ(law.cdf_le(2), Probability(3, 4));
    EXPECT_EQ(law.cdf_ge(2), Probability::one());
}

TEST(SupportLaw, TwoAtomLawMinus) {
    const auto law = support_law(two_atom_law(), kMinus);
    EXPECT_EQ(law.values(), (std::vector<double>{-1, -2}));
    EXPECT_EQ(law.cdf_le(-1), Probability::one());
}

TEST(SupportLaw, DegenerateLaw) {
    const auto d = make_empirical({ConvexBody::box(vec2(0, 0), vec2(1, 2))});
    const auto u = UnitDirection(vec2(1, 1));
    const auto law = support_law(d, u);
    const double v = law.values()[0];
    EXPECT_EQ(law.cdf_le(v), Probability::one());
    EXPECT_EQ(law.cdf_ge(v), Probability::one());
}

TEST(SupportLaw, TailsCoverEverything) {
    const auto law = support_law(two_atom_law(), kPlus);
    for (double x : {0.0, 2.0, 3.0, 7.0, 9.0}) {
        const auto total = law.mass_le(x) + law.mass_ge(x);
        const bool hits = x == 2.0 || x == 7.0;
        EXPECT_GE(total, law.total_mass());
        EXPECT_EQ(total > law.total_mass(), hits) << x;
    }
}

TEST(SupportLaw, CommutesWithAffineMaps) {
    Matrix m(2, 2);
    m << 2, 1, -1, 3;
    const auto l = ConvexBody::box(vec2(0.5, -1), vec2(1, 0));
    const AffineMap map(m, l);
    const auto d = make_empirical({ConvexBody::box(vec2(0, 0), vec2(1, 1)),
                                   ConvexBody::polytope({vec2(2, 0), vec2(3, 1), vec2(2, 2)})});
    const UnitDirection u(vec2(0.6, -0.8));
    const auto img = support_law(affine_image(map, d), u);
    const auto base = support_law(d, sphere_map(m, u));
    const double scale = (m.transpose() * u.coords()).norm();
    for (std::size_t i = 0; i < d.size(); ++i) {
        EXPECT_NEAR(img.values()[i], scale * base.values()[i] + l.support(u), 1e-12);
    }
    EXPECT_EQ(img.masses(), base.masses());
}

TEST(Symmetry, TwoAtomCenter) {
    const auto c = two_atom_symmetric_center(ConvexBody::interval(0, 2), ConvexBody::interval(4, 6));
    const auto& iv = std::get<Interval>(c.shape());
    EXPECT_DOUBLE_EQ(iv.a, 2.0);
    EXPECT_DOUBLE_EQ(iv.b, 4.0);

    const auto k = ConvexBody::interval(1, 3);
    EXPECT_EQ(hausdorff(two_atom_symmetric_center(k, k), k).value, 0.0);

    const auto sq = two_atom_symmetric_center(ConvexBody::box(vec2(-0.5, -0.5), vec2(0.5, 0.5)),
                                              ConvexBody::box(vec2(9.5, -0.5), vec2(10.5, 0.5)));
    EXPECT_NEAR(hausdorff(sq, ConvexBody::box(vec2(4.5, -0.5), vec2(5.5, 0.5))).value, 0.0, 1e-12);
}

TEST(Symmetry, Certification) {
    const auto k1 = ConvexBody::box(vec2(0, 0), vec2(1, 2));
    const auto k2 = ConvexBody::polytope({vec2(4, 0), vec2(6, 1), vec2(5, 3)});
    const auto d = make_empirical({k1, k2});
    std::vector<UnitDirection> dirs;
    for (int i = 0; i < 360; ++i) dirs.push_back(UnitDirection::from_angle(i * 0.0174533));
    EXPECT_TRUE(is_compact_symmetric(d, two_atom_symmetric_center(k1, k2), dirs));

    const auto asymmetric = two_atom_law();
    const std::vector<UnitDirection> pm{kPlus, kMinus};
    for (double a = 0; a <= 7; a += 0.5) {
        for (double b = a; b <= 7; b += 0.5) {
            EXPECT_FALSE(is_compact_symmetric(asymmetric, ConvexBody::interval(a, b), pm));
        }
    }
    const auto delta = make_empirical({k1});
    EXPECT_TRUE(is_compact_symmetric(delta, k1, dirs));
}
