#ifndef FBS_ANALYTIC_HPP
#define FBS_ANALYTIC_HPP

#include "ladder.hpp"

namespace fbs {

// Per-mode detection probabilities at a fixed time. probs[j] is the
// probability of detecting the photon in mode -j (heralding phonon |j>);
// the truncation tail and the vacuum weight are folded into no_click.
struct HeraldProbabilityTable {
    double gt = 0.0;
    std::vector<double> probs;
    double no_click = 0.0;
};

struct WeakCoherentBranch {
    double vacuum_weight = 1.0;  // unnormalized
    LadderState branch;          // amplitude alpha_in times the single-photon state
    bool amplitude_warning = false;  // |alpha_in| above first-order validity
};

struct ConditionalPhononState {
    double click_probability = 0.0;
    int fock_number = 0;
    double purity = 1.0;
};

// Lossless closed-form state: amps[n] = e^{-(gt)^2/2} (-i gt)^n / sqrt(n!)
// in the interaction picture. Requires gamma = 0.
LadderState wavefunction_closed_form(double gt, const SystemConfig& cfg);

// Detection probabilities: Poisson with mean (gt)^2, suppressed by
// e^{-gamma t} when lossy.
HeraldProbabilityTable herald_probabilities(double gt, const SystemConfig& cfg);

// First-order weak-coherent-state decomposition: vacuum branch of weight 1
// plus alpha_in times the single-photon branch.
WeakCoherentBranch weak_coherent_branch(double gt, cplx alpha_in,
                                        const SystemConfig& cfg);

// Closed-form Lindblad coefficients. The beta integral has no closed form
// and is evaluated by adaptive quadrature to 1e-12 absolute tolerance.
DensityBlock density_closed_form(double gt, const SystemConfig& cfg);

// Projection of the optical register onto |phi_j>: click probability
// alpha[j][j], phonon collapses to Fock |j> exactly, any gamma.
ConditionalPhononState conditional_phonon_state(const DensityBlock& rho, int j);

}  // namespace fbs

#endif
