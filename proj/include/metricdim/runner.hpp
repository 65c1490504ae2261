#pragma once

#include <optional>
#include <string>
#include <vector>

#include "metricdim/io.hpp"
#include "metricdim/nets.hpp"
#include "metricdim/packing.hpp"
#include "metricdim/space.hpp"
#include "metricdim/transfer.hpp"
#include "metricdim/verify.hpp"

namespace metricdim {

namespace exit_code {
constexpr int ok = 0;
constexpr int unexpected = 1;
constexpr int invalid_config = 2;
constexpr int precondition = 3;
}  // namespace exit_code

struct RunConfig {
    std::string command;

    // gen
    std::string gen_kind;  // "cantor" | "union"
    double ratio = 1.0 / 3.0;
    int level = 4;
    double interval_a = 0.0;
    double interval_b = 1.0;
    std::vector<std::string> union_specs;  // "cantor:RATIO:LEVEL:[a,b]"

    // shared
    std::string space_path;
    std::string measure_path;
    std::string out_dir = "out";

    // exponents and scale base
    double s = 0.7, t = 0.0, s_prime = 1.0, t_prime = 0.0;
    double c_s = 4.0, c_t = 1.0;
    double a_override = 0.0;
    bool normalized = false;

    // profiling / verification
    std::string radii_policy = "spectrum";  // "spectrum" | "dyadic"
    int oracle_cap = 24;
    double resolution = 0.05;
    double gamma_cap = 1.5;
    std::optional<double> gamma_upper;  // verify-time gammas (default s', t')
    std::optional<double> gamma_lower;
    uint64_t seed = 1;

    int demo_level = 3;
    double demo_budget_seconds = 60.0;
};

/// Parses "cantor:RATIO:LEVEL:[a,b]" where RATIO may be a fraction "1/3".
PseudoMetricSpace space_from_generator_spec(const std::string& spec);
double parse_ratio(const std::string& text);

struct DimsResult {
    double c_d = 1.0;
    double scale_cap = 0.0;
    std::vector<PackingObservation> profile;
    std::vector<std::pair<double, double>> upper_curve;
    std::vector<std::pair<double, double>> lower_curve;
    double upper_knee = 0.0;
    double lower_knee = 0.0;
};

DimsResult run_dims(const PseudoMetricSpace& space, RadiiPolicy policy,
                    CountMode mode, double resolution, double gamma_cap,
                    int oracle_cap);

struct MeasureRun {
    ScaleBaseChoice scale_choice;
    NetHierarchy hierarchy;
    TransferConstants constants;
    MeasureBuild build;
    ChildBoundsReport child_bounds;
    double scale_cap = 0.0;  // raw-unit verification cap
};

/// choose_scale_base + build_hierarchy + build_measure with the config's
/// exponents. Throws the underlying domain errors.
MeasureRun run_measure_pipeline(const PseudoMetricSpace& space,
                                const RunConfig& config);

/// A named end-to-end scenario used by the demo command and by the
/// acceptance suite.
struct DemoScenario {
    std::string name;
    PseudoMetricSpace space;
    RunConfig config;  // exponents, scale base and mode for this scenario
};

/// The three standard scenarios at truncation level L: a single 1/3-Cantor
/// set at depth 2L, the disjoint union with a 1/9-Cantor set in [2,3], and
/// the touching union F with the 1/9-Cantor set in [1,2].
std::vector<DemoScenario> demo_scenarios(int level);

/// Touching union F truncated at level L: 1/3-Cantor at depth 2L on [0,1]
/// joined with the 1/9-Cantor at depth L on [1,2].
PseudoMetricSpace make_touching_union(int level);
RunConfig touching_union_config();

int cmd_gen(const RunConfig& config);
int cmd_dims(const RunConfig& config);
int cmd_measure(const RunConfig& config);
int cmd_verify(const RunConfig& config);
int cmd_demo(const RunConfig& config);
int run_command(const RunConfig& config);

}  // namespace metricdim
