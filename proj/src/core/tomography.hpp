#ifndef FBS_TOMOGRAPHY_HPP
#define FBS_TOMOGRAPHY_HPP

#include "integrate.hpp"
#include "ladder.hpp"

namespace fbs {

// Optomechanical beam-splitter pulse. The pump mode must sit directly
// above a stop-band so that only the anti-Stokes transition into the
// target mode survives.
struct PulseSpec {
    int target_optical_mode = 2;  // mode receiving the transferred state
    int pump_mode = 1;            // classical pump, one mode below target
    double area = 0.0;            // pulse area in radians; pi = full swap
    double coupling = 1.0;        // effective beam-splitter rate g_bs
    double duration() const { return area / (2.0 * coupling); }

    void validate(const SystemConfig& cfg) const;
};

// Joint phonon (x) readout-optical-mode register, both truncated to the
// same dimension. amp(n_ph, n_opt) row-major.
struct ReadoutRegister {
    int dim = 0;  // levels per mode
    std::vector<cplx> amps;

    explicit ReadoutRegister(int levels)
        : dim(levels), amps(levels * levels, cplx{0.0, 0.0}) {}
    ReadoutRegister() = default;

    cplx& amp(int n_ph, int n_opt) { return amps[n_ph * dim + n_opt]; }
    const cplx& amp(int n_ph, int n_opt) const {
        return amps[n_ph * dim + n_opt];
    }
    double norm2() const;

    // phonon Fock |n> with the optical register in vacuum
    static ReadoutRegister from_phonon_fock(int n, int levels);
};

struct StopBandReport {
    int mode = 0;
    double max_deviation = 0.0;
    bool pass = false;
};

// Integrates the single-photon trajectory with and without a stop-band on
// mode j > 0 and reports the max elementwise deviation over gt in [0, 2].
StopBandReport validate_stop_band(const SystemConfig& cfg, int j);

// Evolves the register under H_bs = g_bs (a^dag b + a b^dag) for the pulse
// duration via a dense matrix exponential. Area pi swaps phonon and
// optical occupations up to phase.
ReadoutRegister apply_beam_splitter_pulse(const ReadoutRegister& reg,
                                          const PulseSpec& pulse,
                                          double trunc_tol = 1e-12);

// Marginal photon-number distribution of the readout optical mode.
std::vector<double> readout_statistics(const ReadoutRegister& reg);

}  // namespace fbs

#endif
