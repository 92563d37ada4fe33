#pragma once

#include <string>
#include <vector>

#include "zikaoc/scenarios.hpp"

namespace zikaoc {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Full run description. Defaults are the published study values; a config
// file only overrides what it mentions. Parameters tabulated per day are
// stored verbatim and multiplied by per_day_scale when the effective
// parameter set is assembled (1.0 keeps the table values as weekly rates;
// 7.0 is the day-to-week conversion preset).
struct RunConfig {
    ModelParams params = default_params();
    double per_day_scale{1.0};
    ObjectiveWeights weights;
    StateVector initial = study_initial_state();
    TimeGrid grid;
    FbsmConfig fbsm;
    ControlMode mode{ControlMode::both};
    std::vector<double> sweep_values{100.0, 1000.0, 10000.0};
    std::string output_dir{"out"};

    ModelParams effective_params() const;
};

RunConfig default_run_config();

// Flat key-value text with [section] headers and '#' comments; grammar in
// the project README. Unknown keys and malformed lines raise ParseError with
// the line number; constraint violations raise ValidationError naming the
// field.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Inverse of parse_config: parse_config(dump_config(c)) reproduces c exactly
// (doubles are printed with 17 significant digits).
std::string dump_config(const RunConfig& cfg);

void validate(const RunConfig& cfg);

// Scaled parameter set and grid/weight summary printed at run start.
std::string effective_params_report(const RunConfig& cfg);

// Convenience assembly of the spec for one scenario of this run.
ScenarioSpec make_scenario(const RunConfig& cfg, ControlMode mode, const std::string& label);

}  // namespace zikaoc
