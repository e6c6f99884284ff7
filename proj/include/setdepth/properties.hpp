#pragma once

#include "setdepth/depth.hpp"
#include "setdepth/distribution.hpp"
#include "setdepth/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace setdepth {

// ---------------------------------------------------------------------------
// Depth functions under test

using DepthEvaluator = std::function<double(const ConvexBody&, const DiscreteSetDistribution&)>;

struct DepthFunctionUnderTest {
    std::string name;
    DepthEvaluator evaluate;
};

DepthFunctionUnderTest tukey_depth_function(const DepthConfig& config = {});

// Deliberately broken evaluators. Each violates at least one property so that
// pass verdicts of the harness are falsifiable.
DepthFunctionUnderTest mutant_constant(double value = 1.0);
DepthFunctionUnderTest mutant_first_axis_only();       // ignores every direction but +e_1
DepthFunctionUnderTest mutant_strict_inequalities();   // P(<) and P(>) instead of P(<=), P(>=)
DepthFunctionUnderTest mutant_favor_large();           // grows with mean width
DepthFunctionUnderTest mutant_outlier_bump();          // depth 1 near outlier_body(p)

// Far-away body used by mutant_outlier_bump and added to P7 candidate pools.
ConvexBody outlier_body(int dimension);

DepthFunctionUnderTest depth_function_by_name(const std::string& name, const DepthConfig& config = {});
std::vector<std::string> depth_function_names();

// ---------------------------------------------------------------------------
// Scenarios

struct Scenario {
    std::string id;
    DiscreteSetDistribution dist;
    // Certified maximizer of the Tukey depth (1-d median interval or
    // compact-symmetric center), when one is known.
    std::optional<ConvexBody> center;
    bool symmetric = false;  // center is a verified compact-symmetric center
    std::vector<ConvexBody> candidates;  // bodies searched by P3b and sampled as probes
};

Scenario counterexample_scenario();
Scenario degenerate_scenario(const ConvexBody& body);
Scenario translates_scenario();
Scenario random_interval_scenario(std::mt19937_64& rng, const std::string& id);
Scenario symmetric_interval_scenario(std::mt19937_64& rng, const std::string& id);
Scenario random_polygon_scenario(std::mt19937_64& rng, const std::string& id);
Scenario symmetric_polygon_scenario(std::mt19937_64& rng, const std::string& id);

// Counterexample scenario first, then degenerate, translates, and seeded random
// families in p = 1 and p = 2.
std::vector<Scenario> default_scenarios(std::uint64_t seed);

ConvexBody random_interval(std::mt19937_64& rng, double lo, double hi);
ConvexBody random_polygon(std::mt19937_64& rng, const Vector& center, double radius);
ConvexBody random_probe(std::mt19937_64& rng, const Scenario& scenario);

// Nonsingular matrix with condition number <= max_condition.
Matrix random_nonsingular(std::mt19937_64& rng, int dimension, double max_condition = 1e3);

// ---------------------------------------------------------------------------
// Reports

enum class PropertyId { kP1, kP2, kP3a, kP3b, kP4a, kP4b, kP5, kP6, kP7 };
enum class Verdict { kPass, kFail, kNotApplicable };

std::string to_string(PropertyId id);
std::string to_string(Verdict verdict);
PropertyId parse_property_id(const std::string& name);

// The inequality a counterexample violates, over recorded evaluations.
enum class Relation {
    kEqual,       // value[lhs] == value[rhs]
    kAtLeast,     // value[lhs] >= value[rhs]
    kAtMost,      // value[lhs] <= value[rhs]
    kZero,        // value[lhs] == 0
    kAtLeastBound, // value[lhs] >= bound
    kClose         // |value[lhs] - value[rhs]| <= bound
};

std::string to_string(Relation relation);

struct Evaluation {
    std::string label;
    ConvexBody body;
    DiscreteSetDistribution dist;
    double value = 0.0;
};

/// Self-certifying counterexample: re-evaluating the depth function on the
/// stored (body, distribution) pairs must reproduce the violation.
struct Counterexample {
    Relation relation = Relation::kEqual;
    std::size_t lhs = 0;
    std::size_t rhs = 0;
    double bound = 0.0;
    double tolerance = 0.0;
    std::vector<Evaluation> evaluations;
    std::string note;
};

bool violates(const Counterexample& cex, const std::vector<double>& values);
bool recheck(const DepthFunctionUnderTest& fn, const Counterexample& cex);

struct PropertyReport {
    PropertyId id = PropertyId::kP1;
    Verdict verdict = Verdict::kNotApplicable;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::optional<Counterexample> counterexample;
    std::string detail;
    std::optional<std::size_t> horizon;  // P5: largest N0 observed
};

struct ConvergenceRow {
    std::size_t n = 0;
    double sup_error = 0.0;
    double dkw_bound = 0.0;
    std::uint64_t seed = 0;
};

using ConvergenceTable = std::vector<ConvergenceRow>;

// 4 exp(-2 eps^2 n).
double dkw_bound(double epsilon, std::size_t n);

// ---------------------------------------------------------------------------
// Property runners

PropertyReport run_p1(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios, std::size_t trials,
                      std::uint64_t seed);
// Probes per scenario with a verified symmetric center.
PropertyReport run_p2(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios, std::size_t probes,
                      std::uint64_t seed);
PropertyReport run_p3a(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios, std::size_t trials,
                       std::uint64_t seed);
PropertyReport run_p3b(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios,
                       std::uint64_t seed = 0);

enum class VanishingVariant { kAlgebraic, kGeometric };

struct VanishingCheck {
    bool applicable = false;        // false when L = {0} (no direction exits the atom range)
    std::size_t threshold = 0;      // first n with s_K(u) + n s_L(u) outside the atom range for some u
    std::vector<double> tail;       // depth at threshold .. threshold + extra
};

/// Evaluates D(K + n L) from the computable threshold n0 onward (extra + 1
/// values).
VanishingCheck check_vanishing(const DepthFunctionUnderTest& fn, const DiscreteSetDistribution& dist,
                               const ConvexBody& k, const ConvexBody& l, std::size_t extra = 3);

PropertyReport run_p4(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios,
                      VanishingVariant variant, std::size_t trials, std::uint64_t seed);

struct SemicontinuityCheck {
    std::size_t first_clean = 1;  // N0: D(K_n) <= D(K) + tol for all n >= N0 up to the horizon
    std::vector<double> values;   // D(K_n), n = 1..horizon
    double base = 0.0;            // D(K)
};

// K_n = K + (1/n) B for n = 1..horizon.
SemicontinuityCheck check_semicontinuity(const DepthFunctionUnderTest& fn, const DiscreteSetDistribution& dist,
                                         const ConvexBody& k, const ConvexBody& perturbation,
                                         std::size_t horizon = 64);

PropertyReport run_p5(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios, std::size_t trials,
                      std::uint64_t seed);

/// Population depth via the exact engine, sample depth on the empirical law of
/// n draws; one row per n with the sup over the test bodies.
ConvergenceTable consistency_experiment(const DiscreteSetDistribution& dist, const std::vector<ConvexBody>& bodies,
                                        const std::vector<std::size_t>& n_grid, double epsilon, std::uint64_t seed,
                                        const DepthFunctionUnderTest& fn = tukey_depth_function());

PropertyReport run_p6(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios,
                      const std::vector<std::size_t>& n_grid, double epsilon, std::size_t replicates,
                      std::uint64_t seed);

PropertyReport run_p7(const DepthFunctionUnderTest& fn, const std::vector<Scenario>& scenarios, std::size_t trials,
                      std::uint64_t seed);

// ---------------------------------------------------------------------------
// Taxonomy

/// Labels whose defining properties all passed: algebraic (P1 P2 P3a P4a),
/// restricted algebraic (+ P5 P6 P7), geometric (P1 P2 P3b P4b),
/// restricted geometric (+ P5 P6 P7).
std::vector<std::string> classify(const std::vector<PropertyReport>& reports);

struct SuiteConfig {
    std::uint64_t seed = 20240601;
    std::size_t trials = 200;            // P1, P4a, P4b, P5
    std::size_t p2_probes = 500;
    std::size_t p3a_trials = 500;
    std::size_t p7_trials = 1000;
    std::size_t p6_replicates = 4;
    double epsilon = 0.05;
    std::vector<std::size_t> n_grid{100, 1000, 10000};
    std::vector<Scenario> scenarios;     // empty: default_scenarios(seed)
};

struct SuiteReport {
    std::string depth_function;
    std::uint64_t seed = 0;
    std::vector<PropertyReport> reports;
    std::vector<std::string> labels;
};

SuiteReport run_suite(const DepthFunctionUnderTest& fn, const SuiteConfig& config);

}  // namespace setdepth
