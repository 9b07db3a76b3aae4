#include "tomography.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace fbs {

void PulseSpec::validate(const SystemConfig& cfg) const {
    if (!(area > 0.0)) throw std::invalid_argument("pulse area must be positive");
    if (!(coupling > 0.0))
        throw std::invalid_argument("pulse coupling must be positive");
    if (pump_mode != target_optical_mode - 1)
        throw std::invalid_argument(
            "pump_mode must be one below target_optical_mode");
    if (cfg.suppressed_modes.count(pump_mode) ||
        cfg.suppressed_modes.count(target_optical_mode))
        throw std::invalid_argument(
            "pump and target modes must not be suppressed");
    if (cfg.suppressed_modes.count(pump_mode - 1) == 0)
        throw std::invalid_argument(
            "pump mode must sit directly above a stop-band (suppress mode "
            "pump_mode - 1)");
}

double ReadoutRegister::norm2() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
}

ReadoutRegister ReadoutRegister::from_phonon_fock(int n, int levels) {
    if (n < 0 || n >= levels)
        throw std::invalid_argument("Fock number out of register range");
    ReadoutRegister reg(levels);
    reg.amp(n, 0) = 1.0;
    return reg;
}

StopBandReport validate_stop_band(const SystemConfig& cfg, int j) {
    if (j <= 0)
        throw std::invalid_argument(
            "stop-band invariance holds only for modes m = j > 0; the "
            "single-photon sector occupies modes m <= 0");
    SystemConfig base = cfg;
    base.gamma = 0.0;
    base.suppressed_modes.clear();
    SystemConfig banded = base;
    banded.suppressed_modes = {j};

    LadderState psi0(base.n_max);
    psi0.amps[0] = 1.0;
    IntegratorSpec spec;
    for (int i = 0; i <= 40; ++i) spec.gt_grid.push_back(0.05 * i);
    spec.gt_grid.erase(spec.gt_grid.begin());  // grid starts past 0

    auto plain = integrate_schrodinger(psi0, base, spec);
    auto supp = integrate_schrodinger(psi0, banded, spec);

    double dev = 0.0;
    for (size_t i = 0; i < plain.size(); ++i)
        for (int n = 0; n <= base.n_max; ++n)
            dev = std::max(dev,
                           std::abs(plain[i].amps[n] - supp[i].amps[n]));
    return {j, dev, dev < 1e-10};
}

ReadoutRegister apply_beam_splitter_pulse(const ReadoutRegister& reg,
                                          const PulseSpec& pulse,
                                          double trunc_tol) {
    if (reg.dim < 2) throw std::invalid_argument("register too small");
    if (!(pulse.area > 0.0))
        throw std::invalid_argument("pulse area must be positive");
    int d = reg.dim;
    int dim = d * d;
    auto idx = [d](int n_ph, int n_opt) { return n_ph * d + n_opt; };

    // The generator conserves total quanta, so sectors with
    // n_ph + n_opt <= dim - 1 are exactly closed; only weight in higher
    // (truncated) sectors can leak.
    double truncated_weight = 0.0;
    for (int n = 0; n < d; ++n)
        for (int k = 0; k < d; ++k)
            if (n + k > d - 1) truncated_weight += std::norm(reg.amp(n, k));
    if (truncated_weight >= trunc_tol)
        throw std::runtime_error(
            "beam-splitter truncation violation; enlarge the register");

    // H_bs = g_bs (a^dag b + a b^dag); theta = g_bs * duration = area / 2
    double theta = pulse.area / 2.0;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n < d; ++n) {
        for (int k = 0; k < d; ++k) {
            if (n > 0 && k + 1 < d) {
                double c = std::sqrt(static_cast<double>(n)) *
                           std::sqrt(static_cast<double>(k + 1));
                H(idx(n - 1, k + 1), idx(n, k)) = c;
                H(idx(n, k), idx(n - 1, k + 1)) = c;
            }
        }
    }

    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = reg.amps[i];
    Eigen::MatrixXcd U = (cplx{0.0, -1.0} * theta * H).exp();
    Eigen::VectorXcd w = U * v;

    ReadoutRegister out(d);
    for (int i = 0; i < dim; ++i) out.amps[i] = w(i);
    return out;
}

std::vector<double> readout_statistics(const ReadoutRegister& reg) {
    std::vector<double> p(reg.dim, 0.0);
    double total = 0.0;
    for (int k = 0; k < reg.dim; ++k) {
        for (int n = 0; n < reg.dim; ++n) p[k] += std::norm(reg.amp(n, k));
        total += p[k];
    }
    if (total > 0.0)
        for (auto& x : p) x /= total;
    return p;
}

}  // namespace fbs
