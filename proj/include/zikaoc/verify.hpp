#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "zikaoc/solver.hpp"

namespace zikaoc {

// Deterministic sampling helper shared by the verification checks; the raw
// engine output is mapped to doubles explicitly so results do not depend on
// the standard library's distribution implementations.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    double uniform01();                         // [0, 1)
    double uniform(double lo, double hi);
    double log_uniform(double lo, double hi);   // log-uniform on [lo, hi], lo > 0

private:
    std::uint64_t next();
    std::uint64_t state_;
};

struct FdAdjointReport {
    bool pass{};
    double max_rel_error{};
    double tolerance{};
    std::size_t samples{};
    std::size_t worst_sample{};
    std::size_t worst_component{};
};

// Independent extended-precision transcription of the Hamiltonian, used as
// the finite-difference oracle (and as a second algebraic route against the
// production hamiltonian()).
long double hamiltonian_hp(const StateVector& x, const AdjointVector& lam,
                           const ControlPair& u, const ModelParams& p,
                           const ObjectiveWeights& w);

// Compares adjoint_rhs against central finite differences of the Hamiltonian
// at `samples` random points (states log-uniform in [1, 1e7], costates
// uniform in [-10, 10], admissible controls). Component step
// h = 1e-4 * max(1, |x_i|); relative error floored at 1 in the denominator.
// PASS iff the worst relative error is below `tol`.
FdAdjointReport fd_adjoint_check(const ModelParams& p, const ObjectiveWeights& w,
                                 std::size_t samples, std::uint64_t seed,
                                 double u_max = 0.5, double tol = 1e-5);

struct MinimalityReport {
    bool pass{};
    double worst_excess{};  // max over samples of H(u*) - min over the grid
    std::size_t samples{};
    std::size_t grid_resolution{};
    std::size_t failures{};
};

// Grid-searches the Hamiltonian over [0, u_max]^2 at each sampled (x, lam)
// and verifies that characterize_controls beats or ties every grid point up
// to floating-point slack (H is an exact quadratic in u, so no discretization
// allowance is needed on this side of the comparison).
MinimalityReport minimality_check(const ModelParams& p, const ObjectiveWeights& w,
                                  std::size_t samples, std::size_t grid_resolution,
                                  std::uint64_t seed, double u_max = 0.5);

struct OrderReport {
    bool pass{};
    bool skipped{};
    double order{};
    double err_coarse{};  // |x_dt - x_dt/2| at t_f, relative
    double err_fine{};    // |x_dt/2 - x_dt/4| at t_f, relative
    std::string note;
};

// log2 ratio of successive Richardson differences; flags the degenerate case
// where both differences sit at rounding level (nothing to estimate).
OrderReport richardson_order_from_errors(double err_coarse, double err_fine);

// Empirical convergence order of the forward integrator on the full
// controlled system: runs at dt, dt/2, dt/4 with a fixed smooth control
// profile sampled once on the coarse grid (so all three runs integrate the
// identical piecewise-linear control input) and a fixed internal substep
// count. PASS iff the estimate lies in [3.5, 4.5].
//
// The default substep count sits just inside the explicit stability region
// under the fixed profile; the stability default (substeps = 0) over-resolves
// and pushes the Richardson differences below rounding noise.
OrderReport order_check(const ModelParams& p, const StateVector& x0, double t_f = 160.0,
                        double dt = 0.2, std::size_t substeps = 64);

// Textbook probe y' = -y on [0, 1]: the same Richardson estimate must come
// out at 4 to high accuracy.
OrderReport scalar_probe_order(double dt = 0.1);

}  // namespace zikaoc
