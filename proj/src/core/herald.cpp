#include "herald.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fbs {

void DetectorModel::validate(int n_max) const {
    if (!(efficiency >= 0.0 && efficiency <= 1.0))
        throw std::invalid_argument("efficiency must be in [0, 1]");
    if (!(dark_rate >= 0.0 && dark_rate < 1.0))
        throw std::invalid_argument("dark_rate must be in [0, 1)");
    if (channels.empty())
        throw std::invalid_argument("channels must be nonempty");
    for (int j : channels)
        if (j < 0 || j > n_max)
            throw std::invalid_argument("channel index out of range");
}

DetectorModel DetectorModel::ideal(int n_max) {
    DetectorModel d;
    d.channels.resize(n_max + 1);
    std::iota(d.channels.begin(), d.channels.end(), 0);
    return d;
}

namespace {

ClickDistribution build_distribution(const std::vector<double>& ideal_probs,
                                     const DetectorModel& detector) {
    ClickDistribution dist;
    dist.channels = detector.channels;
    dist.probs.resize(detector.channels.size());
    dist.dark_probs.assign(detector.channels.size(), 0.0);

    double real_total = 0.0;
    for (size_t i = 0; i < detector.channels.size(); ++i) {
        int j = detector.channels[i];
        dist.probs[i] = detector.efficiency * ideal_probs[j];
        real_total += dist.probs[i];
    }

    // Dark counts fire only when no real click occurred; channels are
    // polled in order, the first dark click wins.
    double residual = 1.0 - real_total;
    if (detector.dark_rate > 0.0) {
        for (size_t i = 0; i < detector.channels.size(); ++i) {
            dist.dark_probs[i] = residual * detector.dark_rate;
            residual *= 1.0 - detector.dark_rate;
        }
    }
    dist.no_click = residual;
    return dist;
}

}  // namespace

ClickDistribution click_distribution(const HeraldProbabilityTable& table,
                                     const DetectorModel& detector) {
    detector.validate(static_cast<int>(table.probs.size()) - 1);
    return build_distribution(table.probs, detector);
}

ClickDistribution click_distribution(const DensityBlock& rho,
                                     const DetectorModel& detector) {
    detector.validate(rho.n_max());
    std::vector<double> ideal(rho.n_max() + 1);
    for (int j = 0; j <= rho.n_max(); ++j) ideal[j] = rho.a(j, j).real();
    return build_distribution(ideal, detector);
}

std::vector<HeraldOutcome> sample_heralds(const ClickDistribution& dist,
                                          std::uint64_t trials,
                                          std::uint64_t seed, double gt,
                                          SampleSummary* summary) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    std::vector<HeraldOutcome> outcomes;
    outcomes.reserve(trials);
    SampleSummary sum;
    sum.counts.assign(dist.channels.size(), 0);
    sum.dark_counts.assign(dist.channels.size(), 0);
    sum.trials = trials;

    for (std::uint64_t i = 0; i < trials; ++i) {
        std::uint64_t trial_seed = splitmix64(seed + i);
        std::mt19937_64 eng(trial_seed);
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(eng);

        HeraldOutcome out;
        out.gt = gt;
        out.trial_seed = trial_seed;
        double acc = 0.0;
        for (size_t c = 0; c < dist.channels.size() && !out.clicked; ++c) {
            acc += dist.probs[c];
            if (u < acc) {
                out.clicked = true;
                out.channel = dist.channels[c];
                out.heralded_phonon = dist.channels[c];
                ++sum.counts[c];
            }
        }
        for (size_t c = 0; c < dist.channels.size() && !out.clicked; ++c) {
            acc += dist.dark_probs[c];
            if (u < acc) {
                out.clicked = true;
                out.dark = true;
                out.channel = dist.channels[c];
                out.heralded_phonon = dist.channels[c];
                ++sum.counts[c];
                ++sum.dark_counts[c];
            }
        }
        if (!out.clicked) ++sum.no_click_count;
        outcomes.push_back(out);
    }
    if (summary) *summary = sum;
    return outcomes;
}

PostClickState post_click_state(const DensityBlock& rho, int j) {
    auto cond = conditional_phonon_state(rho, j);
    if (cond.click_probability <= 0.0)
        throw std::invalid_argument("zero-probability channel");
    return {cond, 1.0};
}

double sampler_gof_pvalue(const ClickDistribution& dist,
                          const SampleSummary& summary) {
    double n = static_cast<double>(summary.trials);
    double chi2 = 0.0;
    int bins = 0;
    double pooled_exp = dist.no_click * n;
    double pooled_obs = static_cast<double>(summary.no_click_count);
    for (size_t c = 0; c < dist.channels.size(); ++c) {
        double expected = (dist.probs[c] + dist.dark_probs[c]) * n;
        double observed = static_cast<double>(summary.counts[c]);
        if (expected < 5.0) {
            pooled_exp += expected;
            pooled_obs += observed;
            continue;
        }
        chi2 += (observed - expected) * (observed - expected) / expected;
        ++bins;
    }
    if (pooled_exp > 0.0) {
        chi2 += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) /
                pooled_exp;
        ++bins;
    }
    if (bins < 2) return 1.0;
    return chi_square_pvalue(chi2, bins - 1);
}

}  // namespace fbs
