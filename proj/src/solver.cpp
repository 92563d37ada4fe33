#include "zikaoc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace zikaoc {

namespace {

// Locate the interval [k, k+1] containing t and the local weight in [0, 1].
struct GridPos {
    std::size_t k;
    double frac;
};

GridPos locate(const TimeGrid& grid, double t) {
    const double dt = grid.dt();
    double s = t / dt;
    if (s <= 0.0) return {0, 0.0};
    if (s >= static_cast<double>(grid.n_steps)) return {grid.n_steps - 1, 1.0};
    auto k = static_cast<std::size_t>(s);
    if (k >= grid.n_steps) k = grid.n_steps - 1;
    return {k, s - static_cast<double>(k)};
}

}  // namespace

ControlPair sample_controls(const ControlGrid& u, const TimeGrid& grid, double t) {
    const GridPos pos = locate(grid, t);
    const double a = 1.0 - pos.frac;
    return {a * u.u1[pos.k] + pos.frac * u.u1[pos.k + 1],
            a * u.u2[pos.k] + pos.frac * u.u2[pos.k + 1]};
}

StateVector sample_state(const std::vector<StateVector>& traj, const TimeGrid& grid, double t) {
    const GridPos pos = locate(grid, t);
    return (1.0 - pos.frac) * traj[pos.k] + pos.frac * traj[pos.k + 1];
}

double rate_bound(const ModelParams& p, const StateVector& x0, double u_max) {
    const double n_women_0 = total_women(x0);
    const double n_women_lo = std::min(n_women_0, p.recruitment / p.maternal_exit_rate);
    const double adults_bound =
        std::max(total_adult_mosquitoes(x0),
                 p.maturation_rate * std::max(x0.Am, p.larva_capacity) / p.adult_mortality);
    const double force_w_max = p.infected_fraction * p.biting_rate * p.transmission_mh *
                               adults_bound / n_women_lo;

    const double women_s = force_w_max +
                           (1.0 - p.infected_fraction) * p.birth_rate_susceptible +
                           p.maternal_exit_rate;
    const double women_i = force_w_max + p.birth_rate_infected + p.maternal_exit_rate;
    // Aquatic row: diagonal mu_b*N_m/K plus the recruitment couplings to the
    // three adult compartments (|1 - Am/K| <= max(1, Am0/K - 1) since Am can
    // only decrease once above K).
    const double aquatic = p.eggs_per_capita * adults_bound / p.larva_capacity +
                           p.larva_mortality + p.maturation_rate +
                           3.0 * p.eggs_per_capita *
                               std::max(1.0, x0.Am / p.larva_capacity - 1.0);
    const double adult = p.biting_rate * p.transmission_hm + p.incubation_rate +
                         p.adult_mortality + u_max + p.maturation_rate;
    return std::max({women_s, women_i, aquatic, adult});
}

std::size_t stability_substeps(const ModelParams& p, const StateVector& x0, double u_max,
                               double dt) {
    const double m = std::ceil(dt * rate_bound(p, x0, u_max));
    if (!(m >= 1.0)) return 1;
    return static_cast<std::size_t>(m);
}

std::vector<StateVector> rk4_forward(const StateVector& x0, const ControlGrid& u,
                                     const ModelParams& p, const TimeGrid& grid,
                                     std::size_t substeps) {
    if (u.n_nodes() != grid.n_nodes())
        throw std::invalid_argument("rk4_forward: control grid does not match time grid");
    double u_max = 0.0;
    for (std::size_t k = 0; k < u.n_nodes(); ++k)
        u_max = std::max({u_max, u.u1[k], u.u2[k]});
    if (substeps == 0) substeps = stability_substeps(p, x0, u_max, grid.dt());

    const double eps_pos = 1e-9 * (total_women(x0) + x0.Am + total_adult_mosquitoes(x0));
    const double h = grid.dt() / static_cast<double>(substeps);
    auto f = [&](double t, const StateVector& x) {
        return rhs_controlled(t, x, sample_controls(u, grid, t), p);
    };

    std::vector<StateVector> traj(grid.n_nodes());
    traj[0] = x0;
    for (std::size_t k = 0; k < grid.n_steps; ++k) {
        StateVector y = traj[k];
        const double t_k = grid.node(k);
        for (std::size_t j = 0; j < substeps; ++j)
            y = rk4_step(f, t_k + static_cast<double>(j) * h, y, h);
        if (!y.all_finite())
            throw NonfiniteStateError("rk4_forward: state diverged", k + 1);
        if (y.min_component() < -eps_pos)
            throw NonpositivePopulationError(
                "rk4_forward: negative compartment beyond tolerance", k + 1);
        traj[k + 1] = y;
    }
    return traj;
}

std::vector<AdjointVector> rk4_backward(const AdjointVector& lam_tf,
                                        const std::vector<StateVector>& x_traj,
                                        const ControlGrid& u, const ModelParams& p,
                                        const ObjectiveWeights& w, const TimeGrid& grid,
                                        std::size_t substeps) {
    if (x_traj.size() != grid.n_nodes() || u.n_nodes() != grid.n_nodes())
        throw std::invalid_argument("rk4_backward: trajectory does not match time grid");
    if (substeps == 0) substeps = stability_substeps(p, x_traj[0], 0.5, grid.dt());

    const double h = -grid.dt() / static_cast<double>(substeps);
    auto f = [&](double t, const AdjointVector& lam) {
        return adjoint_rhs(t, sample_state(x_traj, grid, t), lam, sample_controls(u, grid, t),
                           p, w);
    };

    std::vector<AdjointVector> traj(grid.n_nodes());
    traj[grid.n_steps] = lam_tf;
    for (std::size_t k = grid.n_steps; k-- > 0;) {
        AdjointVector y = traj[k + 1];
        const double t_k1 = grid.node(k + 1);
        for (std::size_t j = 0; j < substeps; ++j)
            y = rk4_step(f, t_k1 + static_cast<double>(j) * h, y, h);
        if (!y.all_finite())
            throw NonfiniteStateError("rk4_backward: costate diverged", k);
        traj[k] = y;
    }
    return traj;
}

double evaluate_objective(const std::vector<StateVector>& x_traj, const ControlGrid& u,
                          const ObjectiveWeights& w, const TimeGrid& grid) {
    if (x_traj.size() != grid.n_nodes() || u.n_nodes() != grid.n_nodes())
        throw std::invalid_argument("evaluate_objective: series do not match time grid");
    double sum = 0.0;
    for (std::size_t k = 0; k < grid.n_nodes(); ++k) {
        const double g = running_cost(x_traj[k], u.at(k), w);
        sum += (k == 0 || k == grid.n_steps) ? 0.5 * g : g;
    }
    return sum * grid.dt();
}

namespace {

double l1_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::fabs(x);
    return s;
}

double l1_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
    return s;
}

// Relative L1 change; infinite when a fixed zero series starts moving.
double rel_change(const std::vector<double>& now, const std::vector<double>& before) {
    const double diff = l1_diff(now, before);
    const double norm = l1_norm(now);
    if (norm > 0.0) return diff / norm;
    return diff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

std::vector<double> component_series(const std::vector<StateVector>& traj, std::size_t i) {
    std::vector<double> v(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) v[k] = traj[k][i];
    return v;
}

std::vector<double> component_series(const std::vector<AdjointVector>& traj, std::size_t i) {
    std::vector<double> v(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) v[k] = traj[k][i];
    return v;
}

}  // namespace

FbsmSolution fbsm_solve(const StateVector& x0, const ModelParams& p,
                        const ObjectiveWeights& w, const TimeGrid& grid,
                        const FbsmConfig& cfg, ControlMode mode) {
    if (mode == ControlMode::none)
        throw std::invalid_argument("fbsm_solve: mode none has no controls to optimize");
    if (cfg.max_iters < 1 || !(cfg.rel_tol > 0.0) || !(cfg.relaxation > 0.0) ||
        cfg.relaxation > 1.0)
        throw std::invalid_argument("fbsm_solve: invalid configuration");

    const std::size_t substeps =
        cfg.substeps ? cfg.substeps : stability_substeps(p, x0, cfg.u_max, grid.dt());

    FbsmSolution sol;
    sol.controls = ControlGrid(grid.n_nodes());
    sol.states.assign(grid.n_nodes(), StateVector{});
    sol.adjoints.assign(grid.n_nodes(), AdjointVector{});

    const double theta = cfg.relaxation;
    for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
        const ControlGrid u_old = sol.controls;
        const std::vector<StateVector> x_old = sol.states;
        const std::vector<AdjointVector> lam_old = sol.adjoints;

        sol.states = rk4_forward(x0, sol.controls, p, grid, substeps);
        sol.adjoints =
            rk4_backward(transversality(), sol.states, sol.controls, p, w, grid, substeps);

        for (std::size_t k = 0; k < grid.n_nodes(); ++k) {
            ControlPair c =
                characterize_controls(sol.states[k], sol.adjoints[k], p, w, cfg.u_max);
            if (mode == ControlMode::u1_only) c.u2 = 0.0;
            if (mode == ControlMode::u2_only) c.u1 = 0.0;
            sol.controls.u1[k] = theta * c.u1 + (1.0 - theta) * u_old.u1[k];
            sol.controls.u2[k] = theta * c.u2 + (1.0 - theta) * u_old.u2[k];
        }

        double worst = rel_change(sol.controls.u1, u_old.u1);
        worst = std::max(worst, rel_change(sol.controls.u2, u_old.u2));
        for (std::size_t i = 0; i < StateVector::size; ++i) {
            worst = std::max(worst, rel_change(component_series(sol.states, i),
                                               component_series(x_old, i)));
            worst = std::max(worst, rel_change(component_series(sol.adjoints, i),
                                               component_series(lam_old, i)));
        }
        sol.residual_history.push_back(worst);
        sol.iterations = iter;
        if (worst <= cfg.rel_tol) {
            sol.converged = true;
            break;
        }
    }
    sol.objective = evaluate_objective(sol.states, sol.controls, w, grid);
    return sol;
}

}  // namespace zikaoc
