#include "zikaoc/scenarios.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace zikaoc {

std::string to_string(ControlMode mode) {
    switch (mode) {
        case ControlMode::none: return "none";
        case ControlMode::u1_only: return "u1_only";
        case ControlMode::u2_only: return "u2_only";
        case ControlMode::both: return "both";
    }
    return "?";
}

ControlMode control_mode_from_string(const std::string& name) {
    if (name == "none") return ControlMode::none;
    if (name == "u1_only" || name == "u1") return ControlMode::u1_only;
    if (name == "u2_only" || name == "u2") return ControlMode::u2_only;
    if (name == "both") return ControlMode::both;
    throw std::invalid_argument("unknown control mode: " + name);
}

ScenarioMetrics compute_metrics(const FbsmSolution& sol, const TimeGrid& grid,
                                const ObjectiveWeights& w) {
    ScenarioMetrics m;
    m.objective = evaluate_objective(sol.states, sol.controls, w, grid);
    m.final_microcephaly = sol.states.back().M;
    const double adults0 = total_adult_mosquitoes(sol.states.front());
    for (std::size_t k = 0; k < grid.n_nodes(); ++k) {
        m.peak_infected = std::max(m.peak_infected, sol.states[k].I);
        if (!m.mosquito_reduction_time &&
            total_adult_mosquitoes(sol.states[k]) <= 0.1 * adults0)
            m.mosquito_reduction_time = grid.node(k);
    }
    const double dt = grid.dt();
    for (std::size_t k = 0; k < grid.n_nodes(); ++k) {
        const double half = (k == 0 || k == grid.n_steps) ? 0.5 : 1.0;
        m.effort_u1 += half * dt * sol.controls.u1[k];
        m.effort_u2 += half * dt * sol.controls.u2[k];
    }
    return m;
}

ScenarioResult run_scenario(const ScenarioSpec& spec) {
    ScenarioResult res;
    res.label = spec.label;
    res.mode = spec.mode;
    res.grid = spec.grid;
    res.weights = spec.weights;
    try {
        if (spec.mode == ControlMode::none) {
            res.solution.controls = ControlGrid(spec.grid.n_nodes());
            res.solution.adjoints.assign(spec.grid.n_nodes(), AdjointVector{});
            res.solution.states = rk4_forward(spec.x0, res.solution.controls, spec.params,
                                              spec.grid, spec.fbsm.substeps);
            res.solution.converged = true;
            res.solution.objective = evaluate_objective(res.solution.states,
                                                        res.solution.controls, spec.weights,
                                                        spec.grid);
        } else {
            res.solution = fbsm_solve(spec.x0, spec.params, spec.weights, spec.grid,
                                      spec.fbsm, spec.mode);
        }
    } catch (const std::exception& e) {
        throw std::runtime_error("scenario '" + spec.label + "': " + e.what());
    }
    res.metrics = compute_metrics(res.solution, spec.grid, spec.weights);
    return res;
}

std::vector<ScenarioResult> weight_sweep(const ScenarioSpec& base,
                                         const std::vector<double>& w34_values) {
    for (std::size_t i = 0; i < w34_values.size(); ++i) {
        if (!(w34_values[i] > 0.0))
            throw std::invalid_argument("weight_sweep: weights must be positive");
        if (i > 0 && w34_values[i] <= w34_values[i - 1])
            throw std::invalid_argument("weight_sweep: weights must be ascending");
    }
    const char* swept = base.mode == ControlMode::u1_only
                            ? "w3"
                            : (base.mode == ControlMode::u2_only ? "w4" : "w34");
    std::vector<ScenarioResult> out;
    out.reserve(w34_values.size());
    for (double v : w34_values) {
        ScenarioSpec spec = base;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s %s=%g", base.label.c_str(), swept, v);
        spec.label = buf;
        if (base.mode != ControlMode::u2_only) spec.weights.w3 = v;
        if (base.mode != ControlMode::u1_only) spec.weights.w4 = v;
        try {
            out.push_back(run_scenario(spec));
        } catch (const std::exception& e) {
            ScenarioResult failed;
            failed.label = spec.label + " (failed: " + e.what() + ")";
            failed.mode = spec.mode;
            failed.grid = spec.grid;
            failed.weights = spec.weights;
            out.push_back(std::move(failed));
        }
    }
    return out;
}

std::vector<ComparisonRow> comparison_table(const std::vector<ScenarioResult>& results) {
    if (results.empty()) throw std::invalid_argument("comparison_table: no results");
    std::vector<ComparisonRow> rows;
    rows.reserve(results.size());
    for (const auto& r : results) {
        rows.push_back({r.label, r.metrics.objective, r.metrics.final_microcephaly,
                        r.metrics.peak_infected, r.metrics.mosquito_reduction_time,
                        r.metrics.effort_u1, r.metrics.effort_u2});
    }
    std::sort(rows.begin(), rows.end(),
              [](const ComparisonRow& a, const ComparisonRow& b) { return a.label < b.label; });
    return rows;
}

std::string format_comparison_table(const std::vector<ComparisonRow>& rows) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-18s %14s %12s %12s %10s %10s %10s\n", "scenario", "J",
                  "M(t_f)", "peak I", "t90% N_m", "int u1", "int u2");
    out += line;
    for (const auto& r : rows) {
        char t90[32];
        if (r.mosquito_reduction_time)
            std::snprintf(t90, sizeof t90, "%10.4g", *r.mosquito_reduction_time);
        else
            std::snprintf(t90, sizeof t90, "%10s", "-");
        std::snprintf(line, sizeof line, "%-18s %14.8g %12.6g %12.6g %s %10.5g %10.5g\n",
                      r.label.c_str(), r.objective, r.final_microcephaly, r.peak_infected, t90,
                      r.effort_u1, r.effort_u2);
        out += line;
    }
    return out;
}

}  // namespace zikaoc
