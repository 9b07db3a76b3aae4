#include "analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace fbs {

namespace {

// magnitude gt^n / sqrt(n!) in log-space, with the (-i)^n phase attached
cplx ladder_amplitude(double gt, int n) {
    if (gt == 0.0) return n == 0 ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    double mag = std::exp(n * std::log(gt) - 0.5 * log_factorial(n));
    // (-i)^n cycles 1, -i, -1, i
    static const cplx phases[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    return mag * phases[n % 4];
}

}  // namespace

LadderState wavefunction_closed_form(double gt, const SystemConfig& cfg) {
    cfg.validate();
    if (cfg.gamma != 0.0)
        throw std::invalid_argument(
            "wavefunction_closed_form requires gamma = 0; use "
            "density_closed_form for lossy evolution");
    for (int m : cfg.suppressed_modes)
        if (m <= 0)
            throw std::invalid_argument(
                "closed form does not hold with a suppressed mode m <= 0");
    LadderState psi(cfg.n_max);
    double env = std::exp(-0.5 * gt * gt);
    for (int n = 0; n <= cfg.n_max; ++n)
        psi.amps[n] = env * ladder_amplitude(gt, n);
    psi.vac_amp = {0.0, 0.0};
    psi.t = cfg.g > 0.0 ? gt / cfg.g : 0.0;
    return psi;
}

HeraldProbabilityTable herald_probabilities(double gt,
                                            const SystemConfig& cfg) {
    cfg.validate();
    if (gt < 0.0) throw std::invalid_argument("gt must be nonnegative");
    double lambda = gt * gt;
    double decay = std::exp(-cfg.gamma_t(gt));
    HeraldProbabilityTable table;
    table.gt = gt;
    table.probs.resize(cfg.n_max + 1);
    double total = 0.0;
    for (int j = 0; j <= cfg.n_max; ++j) {
        table.probs[j] = poisson_pmf(lambda, j) * decay;
        total += table.probs[j];
    }
    table.no_click = 1.0 - total;
    return table;
}

WeakCoherentBranch weak_coherent_branch(double gt, cplx alpha_in,
                                        const SystemConfig& cfg) {
    WeakCoherentBranch out;
    out.amplitude_warning = std::abs(alpha_in) > 0.3;
    out.branch = wavefunction_closed_form(gt, cfg);
    for (auto& a : out.branch.amps) a *= alpha_in;
    return out;
}

DensityBlock density_closed_form(double gt, const SystemConfig& cfg) {
    cfg.validate();
    if (gt < 0.0) throw std::invalid_argument("gt must be nonnegative");
    int N = cfg.n_max;
    DensityBlock rho(N);
    rho.t = cfg.g > 0.0 ? gt / cfg.g : 0.0;

    double env = std::exp(-gt * gt - cfg.gamma_t(gt));
    for (int n = 0; n <= N; ++n) {
        cplx an = ladder_amplitude(gt, n);
        for (int np = 0; np <= N; ++np)
            rho.a(n, np) = env * an * std::conj(ladder_amplitude(gt, np));
    }

    if (cfg.gamma > 0.0) {
        double r = cfg.gamma / cfg.g;  // gamma in units of g
        for (int n = 0; n <= N; ++n) {
            double lognf = log_factorial(n);
            auto integrand = [n, r, lognf](double s) {
                if (s == 0.0) return n == 0 ? 1.0 : 0.0;
                return std::exp(2.0 * n * std::log(s) - lognf - s * s - r * s);
            };
            auto q = integrate_adaptive(integrand, 0.0, gt, 1e-13);
            if (!q.converged)
                throw std::runtime_error(
                    "beta quadrature did not reach 1e-12 absolute tolerance");
            rho.beta[n] = r * q.value;
        }
    }
    return rho;
}

ConditionalPhononState conditional_phonon_state(const DensityBlock& rho,
                                                int j) {
    if (j < 0 || j > rho.n_max())
        throw std::invalid_argument("mode index j out of range");
    return {rho.a(j, j).real(), j, 1.0};
}

}  // namespace fbs
