#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace zikaoc {

// Thrown when the women population N = S+I+W+M is not strictly positive at
// an RHS evaluation (the infection terms divide by N), or when an integrated
// trajectory dips below the positivity tolerance at a grid node.
struct NonpositivePopulationError : std::runtime_error {
    explicit NonpositivePopulationError(const std::string& what) : std::runtime_error(what) {}
    NonpositivePopulationError(const std::string& what, std::size_t node_index)
        : std::runtime_error(what + " at grid node " + std::to_string(node_index)),
          node(node_index) {}
    std::size_t node{};
};

// Thrown when an RHS input (state, control) contains NaN or infinity.
struct NonfiniteInputError : std::runtime_error {
    explicit NonfiniteInputError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the integrators when a trajectory leaves the finite/nonnegative
// region; carries the grid node index where the violation was detected.
struct NonfiniteStateError : std::runtime_error {
    NonfiniteStateError(const std::string& what, std::size_t node_index)
        : std::runtime_error(what + " at grid node " + std::to_string(node_index)),
          node(node_index) {}
    std::size_t node;
};

// Eight compartments indexed by disease status. Women: susceptible pregnant
// (S), infected pregnant (I), gave birth without neurological disorder (W),
// gave birth to a baby with microcephaly (M). Mosquitoes: aquatic phase (Am),
// susceptible (Sm), exposed (Em), infectious (Im).
//
// The same layout doubles as the costate vector, so the component-wise
// arithmetic lives in a tagged base.
template <class Tag>
struct Compartments8 {
    double S{}, I{}, W{}, M{};
    double Am{}, Sm{}, Em{}, Im{};

    static constexpr std::size_t size = 8;

    std::array<double, 8> to_array() const { return {S, I, W, M, Am, Sm, Em, Im}; }

    static Compartments8 from_array(const std::array<double, 8>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7]};
    }

    double operator[](std::size_t i) const { return to_array()[i]; }

    void set(std::size_t i, double v) {
        switch (i) {
            case 0: S = v; break;
            case 1: I = v; break;
            case 2: W = v; break;
            case 3: M = v; break;
            case 4: Am = v; break;
            case 5: Sm = v; break;
            case 6: Em = v; break;
            case 7: Im = v; break;
            default: throw std::out_of_range("Compartments8 index");
        }
    }

    bool all_finite() const {
        for (double v : to_array())
            if (!std::isfinite(v)) return false;
        return true;
    }

    double min_component() const {
        double m = S;
        for (double v : to_array())
            if (v < m) m = v;
        return m;
    }

    friend Compartments8 operator+(const Compartments8& a, const Compartments8& b) {
        return {a.S + b.S, a.I + b.I, a.W + b.W, a.M + b.M,
                a.Am + b.Am, a.Sm + b.Sm, a.Em + b.Em, a.Im + b.Im};
    }
    friend Compartments8 operator-(const Compartments8& a, const Compartments8& b) {
        return {a.S - b.S, a.I - b.I, a.W - b.W, a.M - b.M,
                a.Am - b.Am, a.Sm - b.Sm, a.Em - b.Em, a.Im - b.Im};
    }
    friend Compartments8 operator*(double c, const Compartments8& a) {
        return {c * a.S, c * a.I, c * a.W, c * a.M, c * a.Am, c * a.Sm, c * a.Em, c * a.Im};
    }
};

using StateVector = Compartments8<struct StateTag>;

// Pointwise control values: u1 scales personal protection of pregnant women
// (reduces the mosquito-to-human infection term), u2 is the insecticide
// spraying rate applied to the three adult mosquito compartments.
struct ControlPair {
    double u1{};
    double u2{};
};

// Epidemiological and entomological constants. Rates are stored in the unit
// they are tabulated in; the per-day ones (biting_rate, eggs_per_capita,
// larva_mortality, maturation_rate, incubation_rate, adult_mortality) can be
// rescaled once at configuration load via per_day_scale, never here.
struct ModelParams {
    double recruitment;            // Lambda: new pregnant women per week
    double infected_fraction;      // phi: fraction of susceptibles whose bites infect
    double biting_rate;            // B: bites per mosquito (tabulated per day)
    double transmission_mh;        // beta_mh: infection probability per bite, mosquito -> human
    double transmission_hm;        // beta_hm: infection probability per bite, human -> mosquito
    double birth_rate_susceptible; // tau1: birth rate of susceptible pregnant women
    double birth_rate_infected;    // tau2: birth rate of infected pregnant women
    double maternal_exit_rate;     // mu_h: rate women leave the study population
    double microcephaly_fraction;  // psi: fraction of infected births with microcephaly
    double eggs_per_capita;        // mu_b: eggs per adult per deposit (tabulated per day)
    double larva_mortality;        // mu_A (tabulated per day)
    double maturation_rate;        // eta_A: aquatic -> adult (tabulated per day)
    double incubation_rate;        // eta_m: reciprocal extrinsic incubation period (per day)
    double adult_mortality;        // mu_m: reciprocal adult lifespan (per day)
    double larva_capacity;         // K: carrying capacity of the aquatic phase
};

// Table 2 values, verbatim.
ModelParams default_params();

// S0 = 2,180,686, I0 = 1, W0 = M0 = 0, Am0 = Sm0 = Im0 = 1.0903e6,
// Em0 = 6.5421e6.
StateVector study_initial_state();

inline double total_women(const StateVector& x) { return x.S + x.I + x.W + x.M; }

// Adult mosquitoes only; the aquatic phase is not part of N_m.
inline double total_adult_mosquitoes(const StateVector& x) { return x.Sm + x.Em + x.Im; }

// Time derivative of the controlled system. The insecticide term enters all
// three adult compartments; the adult death term is -mu_m*Sm (the controlled
// system must reduce to the uncontrolled one at u = 0).
StateVector rhs_controlled(double t, const StateVector& x, const ControlPair& u,
                           const ModelParams& p);

// Identical to rhs_controlled with u = (0, 0).
StateVector rhs_uncontrolled(double t, const StateVector& x, const ModelParams& p);

}  // namespace zikaoc
