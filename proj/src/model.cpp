#include "zikaoc/model.hpp"

namespace zikaoc {

ModelParams default_params() {
    ModelParams p{};
    p.recruitment = 3000000.0 / 52.0;
    p.infected_fraction = 0.459;
    p.biting_rate = 1.0;
    p.transmission_mh = 0.6;
    p.transmission_hm = 0.6;
    p.birth_rate_susceptible = 37.0;
    p.birth_rate_infected = 1.0 / 25.0;
    p.maternal_exit_rate = 1.0 / 50.0;
    p.microcephaly_fraction = 0.133;
    p.eggs_per_capita = 80.0;
    p.larva_mortality = 0.25;
    p.maturation_rate = 0.5;
    p.incubation_rate = 1.0 / 125.0;
    p.adult_mortality = 1.0 / 125.0;
    p.larva_capacity = 1.09034e6;
    return p;
}

StateVector study_initial_state() {
    StateVector x{};
    x.S = 2180686.0;
    x.I = 1.0;
    x.W = 0.0;
    x.M = 0.0;
    x.Am = 1.0903e6;
    x.Sm = 1.0903e6;
    x.Em = 6.5421e6;
    x.Im = 1.0903e6;
    return x;
}

StateVector rhs_controlled(double /*t*/, const StateVector& x, const ControlPair& u,
                           const ModelParams& p) {
    if (!x.all_finite() || !std::isfinite(u.u1) || !std::isfinite(u.u2))
        throw NonfiniteInputError("rhs_controlled: nonfinite state or control");
    const double N = total_women(x);
    if (!(N > 0.0))
        throw NonpositivePopulationError("rhs_controlled: women population N <= 0");

    const double force_w = (1.0 - u.u1) * p.infected_fraction * p.biting_rate *
                           p.transmission_mh * x.Im / N * x.S;
    const double force_m = p.biting_rate * p.transmission_hm * x.I / N * x.Sm;
    const double n_adults = total_adult_mosquitoes(x);

    StateVector d;
    d.S = p.recruitment - force_w -
          ((1.0 - p.infected_fraction) * p.birth_rate_susceptible + p.maternal_exit_rate) * x.S;
    d.I = force_w - (p.birth_rate_infected + p.maternal_exit_rate) * x.I;
    d.W = (1.0 - p.infected_fraction) * p.birth_rate_susceptible * x.S +
          (1.0 - p.microcephaly_fraction) * p.birth_rate_infected * x.I -
          p.maternal_exit_rate * x.W;
    d.M = p.microcephaly_fraction * p.birth_rate_infected * x.I - p.maternal_exit_rate * x.M;
    d.Am = p.eggs_per_capita * (1.0 - x.Am / p.larva_capacity) * n_adults -
           (p.larva_mortality + p.maturation_rate) * x.Am;
    d.Sm = p.maturation_rate * x.Am - force_m - (p.adult_mortality + u.u2) * x.Sm;
    d.Em = force_m - (p.incubation_rate + p.adult_mortality + u.u2) * x.Em;
    d.Im = p.incubation_rate * x.Em - (p.adult_mortality + u.u2) * x.Im;
    return d;
}

StateVector rhs_uncontrolled(double t, const StateVector& x, const ModelParams& p) {
    return rhs_controlled(t, x, ControlPair{0.0, 0.0}, p);
}

}  // namespace zikaoc
