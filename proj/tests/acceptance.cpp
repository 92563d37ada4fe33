// Acceptance suite: one check per exit criterion, each runnable on its own
// (`acceptance --criterion N`) or all together (`acceptance --all`). Prints
// exactly one PASS/FAIL line per criterion and exits nonzero on failure.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "zikaoc/config.hpp"
#include "zikaoc/csv.hpp"
#include "zikaoc/verify.hpp"

using namespace zikaoc;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

const RunConfig& study_config() {
    static const RunConfig cfg = default_run_config();
    return cfg;
}

const FbsmSolution& study_solution(ControlMode mode) {
    static FbsmSolution cache[4];
    static bool ready[4] = {};
    const auto idx = static_cast<std::size_t>(mode);
    if (!ready[idx]) {
        const RunConfig& cfg = study_config();
        cache[idx] = fbsm_solve(cfg.initial, cfg.effective_params(), cfg.weights, cfg.grid,
                                cfg.fbsm, mode);
        ready[idx] = true;
    }
    return cache[idx];
}

// 1. fd_adjoint_check, 1000 seeded samples, max rel error < 1e-5, < 10 s.
Outcome criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig& cfg = study_config();
    const FdAdjointReport rep =
        fd_adjoint_check(cfg.effective_params(), cfg.weights, 1000, 20240801);
    const double dt = seconds_since(t0);
    return {rep.pass && dt < 10.0,
            fmt("max rel error %.3g (tol 1e-5), %zu samples, %.2f s (limit 10 s)",
                rep.max_rel_error, rep.samples, dt)};
}

// 2. minimality_check, 200 samples on a 201x201 grid, < 60 s.
Outcome criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig& cfg = study_config();
    const MinimalityReport rep =
        minimality_check(cfg.effective_params(), cfg.weights, 200, 201, 20240801);
    const double dt = seconds_since(t0);
    return {rep.pass && dt < 60.0,
            fmt("%zu failures, worst excess %.3g, %.2f s (limit 60 s)", rep.failures,
                rep.worst_excess, dt)};
}

// 3. RK4 order on the full system in [3.5, 4.5], < 10 s.
Outcome criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig& cfg = study_config();
    const OrderReport rep = order_check(cfg.effective_params(), cfg.initial, cfg.grid.t_f);
    const double dt = seconds_since(t0);
    return {rep.pass && !rep.skipped && dt < 10.0,
            fmt("estimated order %.3f (window [3.5, 4.5]), diffs %.3g / %.3g, %.2f s "
                "(limit 10 s)",
                rep.order, rep.err_coarse, rep.err_fine, dt)};
}

// 4. Sweep convergence on the study configuration within 200 iterations, < 60 s.
Outcome criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    const FbsmSolution& sol = study_solution(ControlMode::both);
    const double dt = seconds_since(t0);
    return {sol.converged && sol.iterations <= 200 && dt < 60.0,
            fmt("converged %s in %zu iterations, final residual %.3g, %.2f s (limit 60 s)",
                sol.converged ? "yes" : "no", sol.iterations,
                sol.residual_history.empty() ? 0.0 : sol.residual_history.back(), dt)};
}

// 5. Strict objective dominance of the control strategies.
Outcome criterion5() {
    const RunConfig& cfg = study_config();
    const auto free_traj = rk4_forward(cfg.initial, ControlGrid(cfg.grid.n_nodes()),
                                       cfg.effective_params(), cfg.grid);
    const double j_none = evaluate_objective(free_traj, ControlGrid(cfg.grid.n_nodes()),
                                             cfg.weights, cfg.grid);
    const double j_both = study_solution(ControlMode::both).objective;
    const double j_u1 = study_solution(ControlMode::u1_only).objective;
    const double j_u2 = study_solution(ControlMode::u2_only).objective;
    const bool pass = j_both < j_u1 && j_both < j_u2 && j_u1 < j_none && j_u2 < j_none;
    return {pass, fmt("J(both)=%.8g J(u1)=%.8g J(u2)=%.8g J(none)=%.8g", j_both, j_u1, j_u2,
                      j_none)};
}

// 6. Adult mosquito suppression below 10% of the initial pool by week 20.
Outcome criterion6() {
    const RunConfig& cfg = study_config();
    const FbsmSolution& sol = study_solution(ControlMode::both);
    const double start = total_adult_mosquitoes(sol.states.front());
    double min_ratio = 1.0;
    double crossing = -1.0;
    for (std::size_t k = 0; k < cfg.grid.n_nodes() && cfg.grid.node(k) <= 20.0; ++k) {
        const double ratio = total_adult_mosquitoes(sol.states[k]) / start;
        if (ratio < min_ratio) min_ratio = ratio;
        if (crossing < 0.0 && ratio <= 0.10) crossing = cfg.grid.node(k);
    }
    return {crossing >= 0.0,
            fmt("min N_m/N_m(0) over [0,20] = %.4f (need <= 0.10); threshold %s", min_ratio,
                crossing >= 0.0 ? fmt("crossed at t=%.2f", crossing).c_str() : "never crossed")};
}

// 7. Spraying shuts down late (u2 < 0.05*u_max for t >= 60) while protection
//    keeps working (integral of u1 above 0.25 of its full-throttle budget).
Outcome criterion7() {
    const RunConfig& cfg = study_config();
    const FbsmSolution& sol = study_solution(ControlMode::both);
    const double u_max = cfg.fbsm.u_max;
    double late_u2 = 0.0;
    for (std::size_t k = 0; k < cfg.grid.n_nodes(); ++k)
        if (cfg.grid.node(k) >= 60.0) late_u2 = std::max(late_u2, sol.controls.u2[k]);
    double effort_u1 = 0.0;
    for (std::size_t k = 0; k < cfg.grid.n_nodes(); ++k) {
        const double half = (k == 0 || k == cfg.grid.n_steps) ? 0.5 : 1.0;
        effort_u1 += half * cfg.grid.dt() * sol.controls.u1[k];
    }
    const double needed = 0.5 * u_max * cfg.grid.t_f * 0.25;
    const bool shutdown = late_u2 < 0.05 * u_max;
    const bool sustained = effort_u1 > needed;
    return {shutdown && sustained,
            fmt("max u2 on [60,t_f] = %.4g (need < %.4g); int u1 = %.4g (need > %.4g)",
                late_u2, 0.05 * u_max, effort_u1, needed)};
}

// 8. Weight sweep: total effort non-increasing, M(t_f) non-decreasing.
Outcome criterion8() {
    const RunConfig& cfg = study_config();
    ScenarioSpec base = make_scenario(cfg, ControlMode::both, "sweep");
    const auto swept = weight_sweep(base, {100.0, 1000.0, 10000.0});
    bool pass = swept.size() == 3;
    std::string detail;
    for (std::size_t i = 0; i < swept.size(); ++i) {
        const auto& m = swept[i].metrics;
        detail += fmt("%sw34=%g: effort=%.5g M(t_f)=%.6g", i ? "; " : "",
                      std::pow(10.0, 2.0 + static_cast<double>(i)), m.effort_u1 + m.effort_u2,
                      m.final_microcephaly);
        if (i > 0) {
            const auto& prev = swept[i - 1].metrics;
            const double effort = m.effort_u1 + m.effort_u2;
            const double effort_prev = prev.effort_u1 + prev.effort_u2;
            if (effort > effort_prev * (1.0 + 1e-9) + 1e-12) pass = false;
            if (m.final_microcephaly < prev.final_microcephaly * (1.0 - 1e-9) - 1e-12)
                pass = false;
        }
    }
    return {pass, detail};
}

// 9. Fixed-point residual of the converged controls, plus stationarity of the
//    Hamiltonian at interior nodes.
Outcome criterion9() {
    const RunConfig& cfg = study_config();
    const ModelParams p = cfg.effective_params();
    const ObjectiveWeights& w = cfg.weights;
    const FbsmSolution& sol = study_solution(ControlMode::both);
    const double delta = cfg.fbsm.rel_tol;
    const double u_max = cfg.fbsm.u_max;

    double diff1 = 0.0, norm1 = 0.0, diff2 = 0.0, norm2 = 0.0;
    double worst_grad = 0.0;
    const double band = 0.01 * u_max;  // relaxation keeps clamped nodes a hair inside
    for (std::size_t k = 0; k < cfg.grid.n_nodes(); ++k) {
        const StateVector& x = sol.states[k];
        const AdjointVector& lam = sol.adjoints[k];
        const ControlPair c = characterize_controls(x, lam, p, w, u_max);
        diff1 += std::fabs(c.u1 - sol.controls.u1[k]);
        norm1 += std::fabs(sol.controls.u1[k]);
        diff2 += std::fabs(c.u2 - sol.controls.u2[k]);
        norm2 += std::fabs(sol.controls.u2[k]);

        const double exposure = p.infected_fraction * p.biting_rate * p.transmission_mh *
                                x.Im / total_women(x) * x.S;
        const double u1 = sol.controls.u1[k];
        const double u2 = sol.controls.u2[k];
        if (u1 > band && u1 < u_max - band)
            worst_grad = std::max(worst_grad,
                                  std::fabs(2.0 * w.w3 * u1 + (lam.S - lam.I) * exposure));
        if (u2 > band && u2 < u_max - band)
            worst_grad = std::max(
                worst_grad, std::fabs(2.0 * w.w4 * u2 - (lam.Sm * x.Sm + lam.Em * x.Em +
                                                         lam.Im * x.Im)));
    }
    const bool fixed_point = diff1 <= delta * norm1 && diff2 <= delta * norm2;
    const double grad_tol = 1e-3 * (w.w3 + w.w4);
    return {fixed_point && worst_grad < grad_tol,
            fmt("recharacterization rel diffs %.3g / %.3g (tol %.3g); worst interior "
                "|dH/du| = %.3g (tol %.3g)",
                norm1 > 0 ? diff1 / norm1 : 0.0, norm2 > 0 ? diff2 / norm2 : 0.0, delta,
                worst_grad, grad_tol)};
}

// 10. Byte-identical CSV export across repeated runs; round-trip objective.
Outcome criterion10() {
    RunConfig cfg = study_config();
    cfg.grid = TimeGrid{40.0, 400};  // the criterion constrains I/O, not scale
    const auto out_dir = std::filesystem::temp_directory_path() / "zikaoc_acceptance";
    std::filesystem::create_directories(out_dir);

    std::string paths[2];
    for (int run = 0; run < 2; ++run) {
        const ScenarioResult res =
            run_scenario(make_scenario(cfg, ControlMode::both, "both"));
        paths[run] = (out_dir / ("determinism_" + std::to_string(run) + ".csv")).string();
        write_csv(res, paths[run]);
    }
    const auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    const std::string a = slurp(paths[0]);
    const bool identical = !a.empty() && a == slurp(paths[1]);

    const ScenarioResult res = run_scenario(make_scenario(cfg, ControlMode::both, "both"));
    const ScenarioResult back = from_csv(read_csv(paths[0]), cfg.weights);
    const double rel =
        std::fabs(back.solution.objective - res.metrics.objective) / res.metrics.objective;
    return {identical && rel <= 1e-12,
            fmt("byte-identical: %s; round-trip J rel error %.3g (tol 1e-12)",
                identical ? "yes" : "no", rel)};
}

const char* const descriptions[10] = {
    "adjoint consistency (finite differences of H)",
    "pointwise Hamiltonian minimality (grid search)",
    "integrator order (Richardson)",
    "sweep convergence on the study configuration",
    "control dominance J(both) < J(single) < J(none)",
    "mosquito suppression below 10% by week 20",
    "late-horizon u2 shutdown with sustained u1",
    "weight sweep monotone directions",
    "fixed-point residual and interior stationarity",
    "deterministic CSV export and round-trip",
};

Outcome (*const criteria[10])() = {criterion1, criterion2, criterion3, criterion4,
                                   criterion5, criterion6, criterion7, criterion8,
                                   criterion9, criterion10};

int run_one(int n) {
    const Outcome out = criteria[n - 1]();
    std::printf("criterion %2d [%s]: %s; %s\n", n, out.pass ? "PASS" : "FAIL",
                descriptions[n - 1], out.detail.c_str());
    std::fflush(stdout);
    return out.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            selected = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--all") == 0)
            selected = 0;
        else {
            std::fprintf(stderr, "usage: %s [--criterion N | --all]\n", argv[0]);
            return 1;
        }
    }
    if (selected < 0 || selected > 10) {
        std::fprintf(stderr, "criterion must lie in 1..10\n");
        return 1;
    }
    if (selected != 0) return run_one(selected);
    int failures = 0;
    for (int n = 1; n <= 10; ++n) failures += run_one(n);
    if (failures) std::printf("%d of 10 criteria failed\n", failures);
    return failures ? 1 : 0;
}
