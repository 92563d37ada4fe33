"""Smoke tests for the zikaoc extension module.

Runs under pytest or as a plain script (used by ctest).
"""
import math
import sys

import zikaoc


def test_rhs_at_study_start():
    p = zikaoc.default_params()
    x0 = zikaoc.study_initial_state()
    assert zikaoc.total_women(x0) == 2180687.0
    assert abs(zikaoc.total_adult_mosquitoes(x0) - 8.7227e6) < 1e-6

    d = zikaoc.rhs_uncontrolled(0.0, x0, p)
    # frozen from an exact rational evaluation of the dynamics
    assert abs(d.I - 300268.42230549362) < 1e-6
    assert abs(d.Im - 43614.4) < 1e-9

    d0 = zikaoc.rhs_controlled(0.0, x0, zikaoc.ControlPair(0.0, 0.0), p)
    assert d0.to_list() == d.to_list()


def test_characterization_is_clamped():
    p = zikaoc.default_params()
    w = zikaoc.ObjectiveWeights()
    x = zikaoc.study_initial_state()
    lam = zikaoc.AdjointVector()
    lam.I = 1e9  # infected women extremely costly -> full protection
    u = zikaoc.characterize_controls(x, lam, p, w, 0.5)
    assert u.u1 == 0.5
    assert u.u2 == 0.0


def test_small_sweep_converges_and_improves():
    p = zikaoc.default_params()
    w = zikaoc.ObjectiveWeights()
    grid = zikaoc.TimeGrid(20.0, 200)
    cfg = zikaoc.FbsmConfig()
    cfg.max_iters = 200

    sol = zikaoc.fbsm_solve(zikaoc.study_initial_state(), p, w, grid, cfg,
                            zikaoc.ControlMode.both)
    assert sol.converged
    assert math.isfinite(sol.objective)

    zero = zikaoc.ControlGrid(grid.n_steps + 1)
    states0 = zikaoc.rk4_forward(zikaoc.study_initial_state(), zero, p, grid)
    j0 = zikaoc.evaluate_objective(states0, zero, w, grid)
    assert sol.objective < j0
    assert sol.adjoints[-1].to_list() == [0.0] * 8


def main():
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"ok   {name}")
            except AssertionError as exc:
                failures += 1
                print(f"FAIL {name}: {exc}")
    return failures


if __name__ == "__main__":
    sys.exit(main())
