#include "zikaoc/pmp.hpp"

#include <algorithm>

namespace zikaoc {

double hamiltonian(const StateVector& x, const AdjointVector& lam, const ControlPair& u,
                   const ModelParams& p, const ObjectiveWeights& w) {
    if (!lam.all_finite()) throw NonfiniteInputError("hamiltonian: nonfinite costate");
    const StateVector f = rhs_controlled(0.0, x, u, p);
    return running_cost(x, u, w) + lam.S * f.S + lam.I * f.I + lam.W * f.W + lam.M * f.M +
           lam.Am * f.Am + lam.Sm * f.Sm + lam.Em * f.Em + lam.Im * f.Im;
}

AdjointVector adjoint_rhs(double /*t*/, const StateVector& x, const AdjointVector& lam,
                          const ControlPair& u, const ModelParams& p,
                          const ObjectiveWeights& w) {
    if (!x.all_finite() || !lam.all_finite() || !std::isfinite(u.u1) || !std::isfinite(u.u2))
        throw NonfiniteInputError("adjoint_rhs: nonfinite input");
    const double N = total_women(x);
    if (!(N > 0.0)) throw NonpositivePopulationError("adjoint_rhs: women population N <= 0");

    const double a_w = (1.0 - u.u1) * p.infected_fraction * p.biting_rate * p.transmission_mh;
    const double a_m = p.biting_rate * p.transmission_hm;
    const double N2 = N * N;
    const double n_adults = total_adult_mosquitoes(x);
    const double logistic = 1.0 - x.Am / p.larva_capacity;

    // Recurring groups: d(Im/N)/dS = -Im/N^2 etc., and the Sm->Em infection
    // flow differentiated through I/N.
    const double dSI = (lam.I - lam.S) * a_w * x.Im * x.S / N2;  // shared by lam3', lam4'
    const double mosq_via_women = (lam.Sm - lam.Em) * a_m * x.I * x.Sm / N2;

    AdjointVector d;
    d.S = (lam.S - lam.I) * a_w * x.Im * (N - x.S) / N2 +
          lam.S * ((1.0 - p.infected_fraction) * p.birth_rate_susceptible + p.maternal_exit_rate) -
          lam.W * (1.0 - p.infected_fraction) * p.birth_rate_susceptible - mosq_via_women;
    d.I = -w.w1 + dSI + lam.I * (p.birth_rate_infected + p.maternal_exit_rate) -
          lam.W * (1.0 - p.microcephaly_fraction) * p.birth_rate_infected -
          lam.M * p.microcephaly_fraction * p.birth_rate_infected +
          (lam.Sm - lam.Em) * a_m * (N - x.I) * x.Sm / N2;
    d.W = dSI + lam.W * p.maternal_exit_rate - mosq_via_women;
    d.M = dSI + lam.M * p.maternal_exit_rate - mosq_via_women;
    d.Am = lam.Am * (p.eggs_per_capita * n_adults / p.larva_capacity + p.larva_mortality +
                     p.maturation_rate) -
           lam.Sm * p.maturation_rate;
    d.Sm = -w.w2 - lam.Am * p.eggs_per_capita * logistic +
           (lam.Sm - lam.Em) * a_m * x.I / N + lam.Sm * (p.adult_mortality + u.u2);
    d.Em = -w.w2 - lam.Am * p.eggs_per_capita * logistic +
           lam.Em * (p.incubation_rate + p.adult_mortality + u.u2) - lam.Im * p.incubation_rate;
    d.Im = -w.w2 + (lam.S - lam.I) * a_w * x.S / N - lam.Am * p.eggs_per_capita * logistic +
           lam.Im * (p.adult_mortality + u.u2);
    return d;
}

ControlPair characterize_controls(const StateVector& x, const AdjointVector& lam,
                                  const ModelParams& p, const ObjectiveWeights& w,
                                  double u_max) {
    const double N = total_women(x);
    if (!(N > 0.0))
        throw NonpositivePopulationError("characterize_controls: women population N <= 0");
    const double exposure = p.infected_fraction * p.biting_rate * p.transmission_mh *
                            x.Im / N * x.S;
    ControlPair u;
    u.u1 = std::clamp((lam.I - lam.S) * exposure / (2.0 * w.w3), 0.0, u_max);
    u.u2 = std::clamp((lam.Sm * x.Sm + lam.Em * x.Em + lam.Im * x.Im) / (2.0 * w.w4), 0.0,
                      u_max);
    return u;
}

}  // namespace zikaoc
