#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zikaoc/solver.hpp"

namespace zikaoc {

std::string to_string(ControlMode mode);
ControlMode control_mode_from_string(const std::string& name);

// Everything needed to run one experiment from the study matrix.
struct ScenarioSpec {
    std::string label;
    ControlMode mode{ControlMode::both};
    ModelParams params;
    ObjectiveWeights weights;
    StateVector x0;
    TimeGrid grid;
    FbsmConfig fbsm;
};

struct ScenarioMetrics {
    double objective{};
    double final_microcephaly{};  // M(t_f)
    double peak_infected{};       // max_k I(t_k)
    // First node where N_m drops to 10% of N_m(0); empty when never reached.
    std::optional<double> mosquito_reduction_time;
    double effort_u1{};  // trapezoid integral of u1 over [0, t_f]
    double effort_u2{};
};

struct ScenarioResult {
    std::string label;
    ControlMode mode{};
    TimeGrid grid;
    ObjectiveWeights weights;
    FbsmSolution solution;  // adjoints stay zero and controls stay zero in mode none
    ScenarioMetrics metrics;
};

ScenarioMetrics compute_metrics(const FbsmSolution& sol, const TimeGrid& grid,
                                const ObjectiveWeights& w);

// Runs the designated pipeline: plain forward integration for mode none,
// the forward-backward sweep otherwise (with the excluded control pinned to
// zero at every characterization step in the single-control modes).
ScenarioResult run_scenario(const ScenarioSpec& spec);

// One solve per weight value. For mode both the value is assigned to w3 and
// w4 jointly; u1_only sweeps w3 and u2_only sweeps w4, the other weight kept
// at its base value. Individual failures are recorded (label suffixed with
// "(failed: ...)", empty solution) and the sweep continues.
std::vector<ScenarioResult> weight_sweep(const ScenarioSpec& base,
                                         const std::vector<double>& w34_values);

struct ComparisonRow {
    std::string label;
    double objective{};
    double final_microcephaly{};
    double peak_infected{};
    std::optional<double> mosquito_reduction_time;
    double effort_u1{};
    double effort_u2{};
};

// Label-sorted summary rows (deterministic regardless of input order).
std::vector<ComparisonRow> comparison_table(const std::vector<ScenarioResult>& results);

std::string format_comparison_table(const std::vector<ComparisonRow>& rows);

}  // namespace zikaoc
