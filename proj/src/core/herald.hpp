#ifndef FBS_HERALD_HPP
#define FBS_HERALD_HPP

#include <cstdint>
#include <optional>

#include "analytic.hpp"
#include "ladder.hpp"

namespace fbs {

// Demultiplexer + detector array. Uniform per-channel efficiency; dark
// counts are spurious clicks that herald the wrong Fock state.
struct DetectorModel {
    double efficiency = 1.0;
    double dark_rate = 0.0;  // spurious click probability per trial per channel
    std::vector<int> channels;  // monitored mode indices j (photon mode -j)

    void validate(int n_max) const;
    static DetectorModel ideal(int n_max);  // all channels, eff 1, no darks
};

struct HeraldOutcome {
    bool clicked = false;
    std::optional<int> channel;
    std::optional<int> heralded_phonon;
    bool dark = false;  // click came from a dark count
    double gt = 0.0;
    std::uint64_t trial_seed = 0;
};

// Click probability table over detector channels plus a no-click remainder.
struct ClickDistribution {
    std::vector<int> channels;
    std::vector<double> probs;       // aligned with channels
    std::vector<double> dark_probs;  // dark-count share, reported separately
    double no_click = 0.0;
};

struct SampleSummary {
    std::vector<std::uint64_t> counts;  // clicks per channel (real + dark)
    std::vector<std::uint64_t> dark_counts;
    std::uint64_t no_click_count = 0;
    std::uint64_t trials = 0;
};

// Snapshot measurement at a single time: channel j gets
// efficiency * (ideal probability) plus its dark-count share.
ClickDistribution click_distribution(const HeraldProbabilityTable& table,
                                     const DetectorModel& detector);
ClickDistribution click_distribution(const DensityBlock& rho,
                                     const DetectorModel& detector);

// Reproducible Monte Carlo sampling; trial i draws from an independent
// stream derived from (seed, i), so results do not depend on how trials
// are split across workers.
std::vector<HeraldOutcome> sample_heralds(const ClickDistribution& dist,
                                          std::uint64_t trials,
                                          std::uint64_t seed, double gt,
                                          SampleSummary* summary = nullptr);

struct PostClickState {
    ConditionalPhononState phonon;
    double fidelity_to_fock = 1.0;  // photon-number-resolved fidelity to |j>
};

// Projects the optical register onto |phi_j>; the phonon collapses to the
// Fock state |j> for any gamma.
PostClickState post_click_state(const DensityBlock& rho, int j);

// Pearson chi-square goodness of fit of sampled counts against the exact
// distribution; channels with small expected counts are pooled into the
// no-click bin. Returns the p-value.
double sampler_gof_pvalue(const ClickDistribution& dist,
                          const SampleSummary& summary);

}  // namespace fbs

#endif
