#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "zikaoc/model.hpp"
#include "zikaoc/pmp.hpp"

namespace zikaoc {

// Uniform grid on [0, t_f] with n_steps intervals (n_steps + 1 nodes).
struct TimeGrid {
    double t_f{160.0};
    std::size_t n_steps{1600};

    double dt() const { return t_f / static_cast<double>(n_steps); }
    std::size_t n_nodes() const { return n_steps + 1; }
    double node(std::size_t k) const { return static_cast<double>(k) * dt(); }
};

// Per-node control samples aligned with a TimeGrid; linearly interpolated in
// between (also at Runge-Kutta stage times).
struct ControlGrid {
    std::vector<double> u1;
    std::vector<double> u2;

    ControlGrid() = default;
    explicit ControlGrid(std::size_t n_nodes) : u1(n_nodes, 0.0), u2(n_nodes, 0.0) {}

    std::size_t n_nodes() const { return u1.size(); }
    ControlPair at(std::size_t k) const { return {u1[k], u2[k]}; }
};

ControlPair sample_controls(const ControlGrid& u, const TimeGrid& grid, double t);
StateVector sample_state(const std::vector<StateVector>& traj, const TimeGrid& grid, double t);

// One classical Runge-Kutta 4 step of y' = f(t, y).
template <class V, class F>
V rk4_step(F&& f, double t, const V& y, double h) {
    const V k1 = f(t, y);
    const V k2 = f(t + 0.5 * h, y + (0.5 * h) * k1);
    const V k3 = f(t + 0.5 * h, y + (0.5 * h) * k2);
    const V k4 = f(t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
}

// A priori bound on the largest dynamic rate along any admissible trajectory
// from x0 (per week). The dominating term is the aquatic-phase relaxation
// mu_b * N_m / K, with N_m bounded by its uncontrolled equilibrium.
double rate_bound(const ModelParams& p, const StateVector& x0, double u_max);

// Internal RK4 substeps per grid interval needed to keep |rate * h| <= 1;
// the explicit integrator is unstable at the node spacing alone.
std::size_t stability_substeps(const ModelParams& p, const StateVector& x0, double u_max,
                               double dt);

// Forward RK4 sweep over the grid; `substeps` uniform internal steps per
// interval (0 = pick from the stability bound). Controls at stage times are
// linearly interpolated between nodes. Throws NonfiniteStateError on
// divergence and on positivity violations beyond
// 1e-9 * (total initial population).
std::vector<StateVector> rk4_forward(const StateVector& x0, const ControlGrid& u,
                                     const ModelParams& p, const TimeGrid& grid,
                                     std::size_t substeps = 0);

// Backward RK4 sweep of the costate system from lam_tf at t_f down to 0.
// States and controls at stage times are linearly interpolated from the
// frozen forward trajectory. The terminal node is exactly lam_tf.
std::vector<AdjointVector> rk4_backward(const AdjointVector& lam_tf,
                                        const std::vector<StateVector>& x_traj,
                                        const ControlGrid& u, const ModelParams& p,
                                        const ObjectiveWeights& w, const TimeGrid& grid,
                                        std::size_t substeps = 0);

// Composite trapezoid quadrature of the running cost over the node grid.
double evaluate_objective(const std::vector<StateVector>& x_traj, const ControlGrid& u,
                          const ObjectiveWeights& w, const TimeGrid& grid);

enum class ControlMode { none, u1_only, u2_only, both };

struct FbsmConfig {
    std::size_t max_iters{200};
    double rel_tol{1e-3};     // delta in the relative stopping criterion
    double relaxation{0.5};   // theta: u <- theta*u_new + (1-theta)*u_old
    double u_max{0.5};
    std::size_t substeps{0};  // 0 = stability bound
};

struct FbsmSolution {
    std::vector<StateVector> states;
    std::vector<AdjointVector> adjoints;
    ControlGrid controls;
    double objective{};
    std::size_t iterations{};
    bool converged{};
    std::vector<double> residual_history;  // worst relative L1 change per iteration
};

// Forward-backward sweep: forward state integration with the current
// controls, backward costate integration, pointwise control characterization,
// relaxed update. Stops when, for every control, state and costate series v,
//   rel_tol * ||v||_1 - ||v_new - v_old||_1 >= 0,
// or after max_iters (returned with converged = false, never thrown).
// Single-control modes pin the excluded control to zero inside the
// characterization step.
FbsmSolution fbsm_solve(const StateVector& x0, const ModelParams& p,
                        const ObjectiveWeights& w, const TimeGrid& grid,
                        const FbsmConfig& cfg, ControlMode mode = ControlMode::both);

}  // namespace zikaoc
