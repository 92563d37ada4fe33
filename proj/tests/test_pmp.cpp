#include <doctest.h>

#include <cmath>

#include "zikaoc/pmp.hpp"
#include "zikaoc/verify.hpp"

using namespace zikaoc;

namespace {

bool rel_close(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

StateVector draw_state(SampleRng& rng) {
    StateVector x;
    for (std::size_t i = 0; i < StateVector::size; ++i) x.set(i, rng.log_uniform(1.0, 1e7));
    return x;
}

AdjointVector draw_costate(SampleRng& rng) {
    AdjointVector lam;
    for (std::size_t i = 0; i < AdjointVector::size; ++i) lam.set(i, rng.uniform(-10.0, 10.0));
    return lam;
}

}  // namespace

TEST_CASE("hamiltonian reduces to the running cost at zero costates") {
    const ModelParams p = default_params();
    ObjectiveWeights w;
    StateVector x{};
    x.S = 1000.0;

    CHECK(hamiltonian(x, AdjointVector{}, ControlPair{0.0, 0.0}, p, w) == 0.0);
    CHECK(hamiltonian(x, AdjointVector{}, ControlPair{0.5, 0.5}, p, w) ==
          doctest::Approx(50.0).epsilon(1e-14));
}

TEST_CASE("hamiltonian equals running cost plus costate-weighted dynamics") {
    const ModelParams p = default_params();
    const ObjectiveWeights w;
    const StateVector x0 = study_initial_state();
    AdjointVector ones;
    for (std::size_t i = 0; i < 8; ++i) ones.set(i, 1.0);
    const ControlPair u{0.1, 0.2};

    // compositional route: cost + sum of the derivative components
    const StateVector f = rhs_controlled(0.0, x0, u, p);
    double composed = running_cost(x0, u, w);
    for (std::size_t i = 0; i < 8; ++i) composed += f[i];
    const double h = hamiltonian(x0, ones, u, p, w);
    CHECK(rel_close(h, composed, 1e-15));

    // frozen from the exact rational evaluation
    CHECK(rel_close(h, 85179796.908995017, 1e-13));
}

TEST_CASE("costate sources reduce to the running-cost gradient at zero costates") {
    const ModelParams p = default_params();
    const ObjectiveWeights w;
    SampleRng rng(5);
    for (int s = 0; s < 10; ++s) {
        const StateVector x = draw_state(rng);
        const AdjointVector d =
            adjoint_rhs(0.0, x, AdjointVector{}, ControlPair{0.1, 0.3}, p, w);
        CHECK(d.S == 0.0);
        CHECK(d.I == -w.w1);
        CHECK(d.W == 0.0);
        CHECK(d.M == 0.0);
        CHECK(d.Am == 0.0);  // the aquatic phase carries no running cost
        CHECK(d.Sm == -w.w2);
        CHECK(d.Em == -w.w2);
        CHECK(d.Im == -w.w2);
    }
}

TEST_CASE("aquatic costate decouples when the mosquito compartments vanish") {
    const ModelParams p = default_params();
    const ObjectiveWeights w{0.0, 0.0, 100.0, 100.0};
    StateVector x{};
    x.S = 1500.0;
    x.W = 300.0;
    AdjointVector lam{};
    lam.Am = 1.0;
    const AdjointVector d = adjoint_rhs(0.0, x, lam, ControlPair{0.0, 0.0}, p, w);
    CHECK(d.Am == doctest::Approx(p.larva_mortality + p.maturation_rate).epsilon(1e-15));
}

TEST_CASE("adjoint equals the negated Hamiltonian gradient (finite differences)") {
    // Master consistency property; the same check at acceptance scale runs
    // 1000 samples with tolerance 1e-5.
    const ModelParams p = default_params();
    const ObjectiveWeights w;
    const FdAdjointReport rep = fd_adjoint_check(p, w, 250, 424242, 0.5, 1e-6);
    CHECK(rep.pass);
    CHECK(rep.max_rel_error < 1e-6);
}

TEST_CASE("two Hamiltonian routes agree") {
    const ModelParams p = default_params();
    const ObjectiveWeights w;
    SampleRng rng(17);
    for (int s = 0; s < 50; ++s) {
        const StateVector x = draw_state(rng);
        const AdjointVector lam = draw_costate(rng);
        const ControlPair u{rng.uniform(0.0, 0.5), rng.uniform(0.0, 0.5)};
        const double a = hamiltonian(x, lam, u, p, w);
        const double b = static_cast<double>(hamiltonian_hp(x, lam, u, p, w));
        CHECK(rel_close(a, b, 1e-12));
    }
}

TEST_CASE("control characterization: interior zero, clamps, and descent sign") {
    const ModelParams p = default_params();
    const ObjectiveWeights w;
    const StateVector x = study_initial_state();

    AdjointVector lam{};
    lam.S = 3.7;
    lam.I = 3.7;  // equal costates: no incentive to protect
    ControlPair u = characterize_controls(x, lam, p, w, 0.5);
    CHECK(u.u1 == 0.0);
    CHECK(u.u2 == 0.0);

    // an infected woman vastly costlier than a susceptible one: protect fully
    lam.I = 1e9;
    u = characterize_controls(x, lam, p, w, 0.5);
    CHECK(u.u1 == 0.5);

    // reversed ordering leaves protection off (H increases with u1 there)
    lam.I = 0.0;
    lam.S = 1e9;
    u = characterize_controls(x, lam, p, w, 0.5);
    CHECK(u.u1 == 0.0);

    lam = AdjointVector{};
    lam.Sm = 1e9;
    u = characterize_controls(x, lam, p, w, 0.5);
    CHECK(u.u2 == 0.5);
    lam.Sm = -1e9;
    u = characterize_controls(x, lam, p, w, 0.5);
    CHECK(u.u2 == 0.0);
}

TEST_CASE("characterized controls minimize the Hamiltonian over a fine grid") {
    const ModelParams p = default_params();
    const ObjectiveWeights w;
    const double u_max = 0.5;
    SampleRng rng(99);
    for (int s = 0; s < 40; ++s) {
        const StateVector x = draw_state(rng);
        const AdjointVector lam = draw_costate(rng);
        const ControlPair best = characterize_controls(x, lam, p, w, u_max);
        const double h_best = hamiltonian(x, lam, best, p, w);
        const double slack = 1e-12 * std::max(1.0, std::fabs(h_best));
        for (int i = 0; i <= 100; ++i) {
            for (int j = 0; j <= 100; ++j) {
                const ControlPair v{u_max * i / 100.0, u_max * j / 100.0};
                CHECK(h_best <= hamiltonian(x, lam, v, p, w) + slack);
            }
        }
    }
}

TEST_CASE("joint scaling of weights and costates") {
    const ModelParams p = default_params();
    SampleRng rng(3);
    for (double c : {0.5, 3.0, 250.0}) {
        const StateVector x = draw_state(rng);
        const AdjointVector lam = draw_costate(rng);
        const ControlPair u{0.2, 0.3};
        const ObjectiveWeights w{7.0, 11.0, 90.0, 130.0};
        const ObjectiveWeights cw{c * w.w1, c * w.w2, c * w.w3, c * w.w4};
        AdjointVector clam;
        for (std::size_t i = 0; i < 8; ++i) clam.set(i, c * lam[i]);

        CHECK(rel_close(hamiltonian(x, clam, u, p, cw), c * hamiltonian(x, lam, u, p, w),
                        1e-12));
        const ControlPair a = characterize_controls(x, lam, p, w, 0.5);
        const ControlPair b = characterize_controls(x, clam, p, cw, 0.5);
        CHECK(rel_close(a.u1, b.u1, 1e-12));
        CHECK(rel_close(a.u2, b.u2, 1e-12));
    }
}

TEST_CASE("transversality is the zero costate") {
    const AdjointVector lam = transversality();
    for (std::size_t i = 0; i < 8; ++i) CHECK(lam[i] == 0.0);
}
