#pragma once

#include "zikaoc/model.hpp"

namespace zikaoc {

// Costates, one per compartment; free sign, zero terminal condition.
using AdjointVector = Compartments8<struct AdjointTag>;

// Objective functional weights: running cost
//   w1*I + w2*(Sm+Em+Im) + w3*u1^2 + w4*u2^2.
// w3, w4 must be strictly positive or the control characterization divides
// by zero.
struct ObjectiveWeights {
    double w1{10.0};
    double w2{10.0};
    double w3{100.0};
    double w4{100.0};
};

inline double running_cost(const StateVector& x, const ControlPair& u,
                           const ObjectiveWeights& w) {
    return w.w1 * x.I + w.w2 * total_adult_mosquitoes(x) + w.w3 * u.u1 * u.u1 +
           w.w4 * u.u2 * u.u2;
}

// Pointwise Hamiltonian: running cost plus costate-weighted dynamics.
double hamiltonian(const StateVector& x, const AdjointVector& lam, const ControlPair& u,
                   const ModelParams& p, const ObjectiveWeights& w);

// Costate derivative, hand-derived as -dH/dx from the Hamiltonian above
// (including the dependence of the I/N and Im/N ratios on all four women
// compartments through N). Cross-validated against central finite
// differences of hamiltonian() by the verify module.
AdjointVector adjoint_rhs(double t, const StateVector& x, const AdjointVector& lam,
                          const ControlPair& u, const ModelParams& p,
                          const ObjectiveWeights& w);

// Pointwise minimizer of the Hamiltonian over [0, u_max]^2. H is a strictly
// convex quadratic in (u1, u2), so this is the unconstrained stationary point
// projected onto the box:
//   u1 = clamp((lam_I - lam_S) * phi*B*beta_mh*(Im/N)*S / (2 w3), 0, u_max)
//   u2 = clamp((lam_Sm*Sm + lam_Em*Em + lam_Im*Im) / (2 w4),      0, u_max)
ControlPair characterize_controls(const StateVector& x, const AdjointVector& lam,
                                  const ModelParams& p, const ObjectiveWeights& w,
                                  double u_max);

// Terminal condition for the backward sweep: every costate vanishes at t_f.
inline AdjointVector transversality() { return AdjointVector{}; }

}  // namespace zikaoc
