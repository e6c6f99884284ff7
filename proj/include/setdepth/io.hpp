#pragma once

#include "setdepth/depth.hpp"
#include "setdepth/distribution.hpp"
#include "setdepth/geometry.hpp"
#include "setdepth/properties.hpp"

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace setdepth::io {

using Json = nlohmann::ordered_json;

// Parse errors throw ValidationError with the JSON path of the offending
// field, e.g. "atoms[1].prob: expected a number".
ConvexBody body_from_json(const Json& j, const std::string& path = "body");
Json to_json(const ConvexBody& body);

DiscreteSetDistribution distribution_from_json(const Json& j, const std::string& path = "distribution");
Json to_json(const DiscreteSetDistribution& dist);

// Header `a,b`, one interval per row, equal weights.
DiscreteSetDistribution distribution_from_sample_csv(std::istream& in);

Json parse_json_text(const std::string& text, const std::string& source);
std::string read_file(const std::string& path);
ConvexBody load_body(const std::string& path);
DiscreteSetDistribution load_distribution(const std::string& path);
DiscreteSetDistribution load_sample_csv(const std::string& path);

Json to_json(const UnitDirection& u);
Json to_json(const DepthReport& report);

Json to_json(const Counterexample& cex);
Json to_json(const PropertyReport& report);
Json to_json(const SuiteReport& report);
// One row per property: property,verdict,trials,seed,detail
void write_suite_csv(std::ostream& out, const SuiteReport& report);

Json to_json(const ConvergenceTable& table);
void write_convergence_csv(std::ostream& out, const ConvergenceTable& table);

// Values in the suite config override `base`. "scenarios" entries are either
// built-in names ("default", "counterexample", "translates", ...) or objects
// {"id", "distribution", "center"?, "symmetric"?, "candidates"?}.
SuiteConfig suite_config_from_json(const Json& j, SuiteConfig base = {});

// Built-in scenario by id; "default" expands to every default scenario.
std::vector<Scenario> builtin_scenarios(const std::string& name, std::uint64_t seed);

// Shortest round-trip decimal representation.
std::string format_double(double x);

// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string csv_field(const std::string& s);

}  // namespace setdepth::io
