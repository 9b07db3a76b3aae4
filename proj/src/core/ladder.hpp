#ifndef FBS_LADDER_HPP
#define FBS_LADDER_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mathutil.hpp"

namespace fbs {

// Physical rates and truncation bounds; single source of model parameters.
// Rates may be given in SI (rad/s) or dimensionless units with g = 1; all
// evolution is parameterized by gt either way.
struct SystemConfig {
    double g = 1.0;        // Brillouin coupling rate
    double gamma = 0.0;    // optical decay rate, same units as g
    double omega_p = 0.0;  // central optical angular frequency
    double Omega = 0.0;    // phonon angular frequency
    int n_max = 30;        // phonon / scattering-order truncation
    double trunc_tol = 1e-12;
    std::set<int> suppressed_modes;  // optical mode indices removed from the ladder

    void validate() const;  // throws std::invalid_argument naming the field

    // Decay exponent gamma*t expressed through gt; requires g > 0 when
    // gamma > 0.
    double gamma_t(double gt) const;

    // Coupling between ladder levels n and n+1 involves optical modes -n and
    // -(n+1); it is removed if either is suppressed.
    bool coupling_active(int n) const;
};

// Build a validated config from a flat key-value map (unknown keys rejected).
SystemConfig make_config(const std::map<std::string, std::string>& raw);

// Parse a flat key-value config file: `key = value` lines, '#' comments,
// suppressed_modes as a comma- or space-separated integer list.
SystemConfig load_config_file(const std::string& path);

// Apply a single `key=value` override on top of an existing config.
void apply_override(SystemConfig& cfg, const std::string& key,
                    const std::string& value);

// Smallest N such that the Poisson tail beyond N, with mean gt_max^2, is
// below trunc_tol. Never less than 1.
int choose_n_max(double gt_max, double trunc_tol);

// Pure state in the single-excitation joint basis: amps[n] multiplies
// |phi_n> (x) |n>_ph, where the photon occupies optical mode m = -n.
struct LadderState {
    std::vector<cplx> amps;
    cplx vac_amp{0.0, 0.0};
    double t = 0.0;

    explicit LadderState(int n_max) : amps(n_max + 1, cplx{0.0, 0.0}) {}
    LadderState() = default;

    int n_max() const { return static_cast<int>(amps.size()) - 1; }
    double norm2() const;
    std::vector<double> probabilities() const;  // |amps[n]|^2
};

// Mixed-state coefficient blocks: alpha over the single-photon sector,
// beta over the all-modes-vacuum sector (diagonal only).
struct DensityBlock {
    std::vector<cplx> alpha;  // row-major (n_max+1) x (n_max+1)
    std::vector<double> beta;
    double t = 0.0;

    explicit DensityBlock(int n_max)
        : alpha((n_max + 1) * (n_max + 1), cplx{0.0, 0.0}),
          beta(n_max + 1, 0.0) {}
    DensityBlock() = default;

    int n_max() const { return static_cast<int>(beta.size()) - 1; }
    cplx& a(int n, int np) { return alpha[n * (n_max() + 1) + np]; }
    const cplx& a(int n, int np) const { return alpha[n * (n_max() + 1) + np]; }
    double trace() const;
};

// d(amps)/dt in the interaction picture:
//   -i g (sqrt(n) amps[n-1] + sqrt(n+1) amps[n+1]),
// with couplings involving suppressed modes dropped; vac_amp derivative 0.
void apply_hamiltonian(const LadderState& state, const SystemConfig& cfg,
                       LadderState& deriv);

// The generator restricted to the single-excitation sector, as a dense
// real-symmetric tridiagonal matrix H with H[n][n+1] = g sqrt(n+1)
// (interaction picture; the derivative above is -i H amps).
std::vector<std::vector<double>> coupling_matrix(const SystemConfig& cfg);

// Global free-evolution phase e^{-i omega_p t} of the single-photon sector,
// applied on demand; probabilities are unaffected.
LadderState with_free_phase(const LadderState& state, const SystemConfig& cfg);

}  // namespace fbs

#endif
