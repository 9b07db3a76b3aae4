#include <doctest.h>

#include <cmath>
#include <complex>

#include "core/analytic.hpp"
#include "core/integrate.hpp"

using namespace fbs;

namespace {

double max_dev_from_closed_form(const SystemConfig& cfg,
                                const IntegratorSpec& spec) {
    LadderState psi0(cfg.n_max);
    psi0.amps[0] = 1.0;
    auto traj = integrate_schrodinger(psi0, cfg, spec);
    double dev = 0.0;
    for (size_t i = 0; i < traj.size(); ++i) {
        auto exact = wavefunction_closed_form(spec.gt_grid[i], cfg);
        for (int n = 0; n <= cfg.n_max; ++n)
            dev = std::max(dev, std::abs(traj[i].amps[n] - exact.amps[n]));
    }
    return dev;
}

}  // namespace

TEST_CASE("g = 0 leaves the state constant") {
    SystemConfig cfg;
    cfg.g = 0.0;
    cfg.n_max = 4;
    LadderState psi0(4);
    psi0.amps[0] = 1.0;
    IntegratorSpec spec;
    spec.gt_grid = {0.5, 1.0, 2.0};
    auto traj = integrate_schrodinger(psi0, cfg, spec);
    for (const auto& st : traj) {
        CHECK(std::abs(st.amps[0] - cplx{1.0, 0.0}) < 1e-14);
        for (int n = 1; n <= 4; ++n) CHECK(std::abs(st.amps[n]) < 1e-14);
    }
}

TEST_CASE("RK4 trajectory matches the closed form to 1e-8") {
    SystemConfig cfg;
    cfg.n_max = choose_n_max(1.5, 1e-12);
    IntegratorSpec spec;
    for (int i = 1; i <= 15; ++i) spec.gt_grid.push_back(0.1 * i);
    CHECK(max_dev_from_closed_form(cfg, spec) < 1e-8);
}

TEST_CASE("suppressing an anti-Stokes mode leaves the trajectory unchanged") {
    SystemConfig cfg;
    cfg.n_max = choose_n_max(2.0, 1e-12);
    LadderState psi0(cfg.n_max);
    psi0.amps[0] = 1.0;
    IntegratorSpec spec;
    for (int i = 1; i <= 20; ++i) spec.gt_grid.push_back(0.1 * i);
    auto plain = integrate_schrodinger(psi0, cfg, spec);
    SystemConfig banded = cfg;
    banded.suppressed_modes = {+1};
    auto supp = integrate_schrodinger(psi0, banded, spec);
    for (size_t i = 0; i < plain.size(); ++i)
        for (int n = 0; n <= cfg.n_max; ++n)
            CHECK(std::abs(plain[i].amps[n] - supp[i].amps[n]) < 1e-10);
}

TEST_CASE("suppressing mode -1 changes the trajectory (negative control)") {
    SystemConfig cfg;
    cfg.n_max = choose_n_max(1.0, 1e-12);
    LadderState psi0(cfg.n_max);
    psi0.amps[0] = 1.0;
    IntegratorSpec spec;
    spec.gt_grid = {1.0};
    auto plain = integrate_schrodinger(psi0, cfg, spec);
    SystemConfig blocked = cfg;
    blocked.suppressed_modes = {-1};
    auto supp = integrate_schrodinger(psi0, blocked, spec);
    double dev = 0.0;
    for (int n = 0; n <= cfg.n_max; ++n)
        dev = std::max(dev, std::abs(plain[0].amps[n] - supp[0].amps[n]));
    CHECK(dev > 1e-3);
}

TEST_CASE("halving the step shrinks the error fourth-order") {
    SystemConfig cfg;
    cfg.n_max = choose_n_max(2.0, 1e-12);
    IntegratorSpec coarse, fine;
    for (int i = 1; i <= 10; ++i) {
        coarse.gt_grid.push_back(0.2 * i);
        fine.gt_grid.push_back(0.2 * i);
    }
    coarse.dt = 0.02;
    fine.dt = 0.01;
    double e_coarse = max_dev_from_closed_form(cfg, coarse);
    double e_fine = max_dev_from_closed_form(cfg, fine);
    double ratio = e_coarse / e_fine;
    CHECK(ratio > 8.0);
    CHECK(ratio < 32.0);
}

TEST_CASE("Lindblad at gamma = 0 reproduces the Schrodinger outer product") {
    SystemConfig cfg;
    cfg.n_max = choose_n_max(1.5, 1e-12);
    LadderState psi0(cfg.n_max);
    psi0.amps[0] = 1.0;
    DensityBlock rho0(cfg.n_max);
    rho0.a(0, 0) = 1.0;
    IntegratorSpec spec;
    for (int i = 1; i <= 15; ++i) spec.gt_grid.push_back(0.1 * i);
    auto pure = integrate_schrodinger(psi0, cfg, spec);
    auto mixed = integrate_lindblad(rho0, cfg, spec);
    for (size_t i = 0; i < pure.size(); ++i) {
        for (int n = 0; n <= cfg.n_max; ++n) {
            CHECK(std::abs(mixed[i].a(n, n).real() -
                           std::norm(pure[i].amps[n])) < 1e-8);
            CHECK(std::abs(mixed[i].beta[n]) < 1e-12);
        }
    }
}

TEST_CASE("Lindblad integration matches the analytic coefficients") {
    for (double ratio : {1.0, 3.0}) {
        SystemConfig cfg;
        cfg.gamma = ratio;
        cfg.n_max = choose_n_max(1.2, 1e-12);
        DensityBlock rho0(cfg.n_max);
        rho0.a(0, 0) = 1.0;
        IntegratorSpec spec;
        for (int i = 1; i <= 12; ++i) spec.gt_grid.push_back(0.1 * i);
        auto traj = integrate_lindblad(rho0, cfg, spec);
        double dev = 0.0;
        for (size_t i = 0; i < traj.size(); ++i) {
            auto exact = density_closed_form(spec.gt_grid[i], cfg);
            for (int n = 0; n <= cfg.n_max; ++n) {
                dev = std::max(dev, std::abs(traj[i].beta[n] - exact.beta[n]));
                for (int np = 0; np <= cfg.n_max; ++np)
                    dev = std::max(dev,
                                   std::abs(traj[i].a(n, np) - exact.a(n, np)));
            }
            CHECK(std::abs(traj[i].trace() - 1.0) < 1e-8);
        }
        CHECK(dev < 1e-8);
    }
}

TEST_CASE("Glauber factorization checks") {
    CHECK(check_glauber_factorization(0.0, 10) < 1e-14);
    CHECK(check_glauber_factorization(0.5, 10) < 1e-9);
    CHECK_THROWS_AS(check_glauber_factorization(1.5, 10),
                    std::invalid_argument);
}

TEST_CASE("integrator rejects invalid inputs") {
    SystemConfig cfg;
    cfg.n_max = 5;
    LadderState psi0(5);
    psi0.amps[0] = 0.5;  // not normalized
    IntegratorSpec spec;
    spec.gt_grid = {1.0};
    CHECK_THROWS_AS(integrate_schrodinger(psi0, cfg, spec),
                    std::invalid_argument);

    psi0.amps[0] = 1.0;
    IntegratorSpec bad;
    bad.gt_grid = {1.0, 0.5};  // not increasing
    CHECK_THROWS_AS(integrate_schrodinger(psi0, cfg, bad),
                    std::invalid_argument);

    SystemConfig lossy = cfg;
    lossy.gamma = 1.0;
    CHECK_THROWS_AS(integrate_schrodinger(psi0, lossy, spec),
                    std::invalid_argument);
}

TEST_CASE("truncation leakage reports an actionable error") {
    SystemConfig cfg;
    cfg.n_max = 4;  // far too small for gt = 2
    LadderState psi0(4);
    psi0.amps[0] = 1.0;
    IntegratorSpec spec;
    spec.gt_grid = {2.0};
    CHECK_THROWS_WITH_AS(integrate_schrodinger(psi0, cfg, spec),
                         doctest::Contains("increase n_max"),
                         std::runtime_error);
}
