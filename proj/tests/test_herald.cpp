#include <doctest.h>

#include <cmath>

#include "core/analytic.hpp"
#include "core/herald.hpp"

using namespace fbs;

namespace {

SystemConfig cfg_with(double gamma_ratio = 0.0, int n_max = 30) {
    SystemConfig cfg;
    cfg.n_max = n_max;
    cfg.gamma = gamma_ratio;
    return cfg;
}

}  // namespace

TEST_CASE("ideal detector reproduces the Poisson distribution") {
    auto cfg = cfg_with();
    auto table = herald_probabilities(1.0, cfg);
    auto dist = click_distribution(table, DetectorModel::ideal(cfg.n_max));
    for (int j = 0; j <= cfg.n_max; ++j)
        CHECK(dist.probs[j] ==
              doctest::Approx(poisson_pmf(1.0, j)).epsilon(1e-12));
    double total = dist.no_click;
    for (double p : dist.probs) total += p;
    CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("zero efficiency means no clicks") {
    auto cfg = cfg_with();
    auto table = herald_probabilities(1.0, cfg);
    auto det = DetectorModel::ideal(cfg.n_max);
    det.efficiency = 0.0;
    auto dist = click_distribution(table, det);
    CHECK(dist.no_click == doctest::Approx(1.0));
    for (double p : dist.probs) CHECK(p == 0.0);
}

TEST_CASE("optical loss scales every channel by e^{-gamma t}") {
    auto lossless = cfg_with();
    auto lossy = cfg_with(1.0);
    auto d0 = click_distribution(herald_probabilities(1.0, lossless),
                                 DetectorModel::ideal(lossless.n_max));
    auto dg = click_distribution(herald_probabilities(1.0, lossy),
                                 DetectorModel::ideal(lossy.n_max));
    for (int j = 0; j <= 5; ++j)
        CHECK(dg.probs[j] ==
              doctest::Approx(d0.probs[j] * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("click distribution from a density block") {
    auto cfg = cfg_with(1.0);
    auto rho = density_closed_form(1.0, cfg);
    auto dist = click_distribution(rho, DetectorModel::ideal(cfg.n_max));
    auto table = herald_probabilities(1.0, cfg);
    for (int j = 0; j <= cfg.n_max; ++j)
        CHECK(dist.probs[j] == doctest::Approx(table.probs[j]).epsilon(1e-12));
}

TEST_CASE("total click probability is nondecreasing in efficiency") {
    auto cfg = cfg_with();
    auto table = herald_probabilities(1.0, cfg);
    double prev = -1.0;
    for (double eff : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        auto det = DetectorModel::ideal(cfg.n_max);
        det.efficiency = eff;
        auto dist = click_distribution(table, det);
        double total = 0.0;
        for (double p : dist.probs) total += p;
        CHECK(total >= prev);
        prev = total;
    }
}

TEST_CASE("detector model validation") {
    DetectorModel det;
    det.channels = {0};
    det.efficiency = 1.5;
    CHECK_THROWS_AS(det.validate(5), std::invalid_argument);
    det.efficiency = 1.0;
    det.dark_rate = 1.0;
    CHECK_THROWS_AS(det.validate(5), std::invalid_argument);
    det.dark_rate = 0.0;
    det.channels.clear();
    CHECK_THROWS_AS(det.validate(5), std::invalid_argument);
}

TEST_CASE("degenerate distribution always lands in channel 0") {
    ClickDistribution dist;
    dist.channels = {0, 1, 2};
    dist.probs = {1.0, 0.0, 0.0};
    dist.dark_probs = {0.0, 0.0, 0.0};
    dist.no_click = 0.0;
    SampleSummary sum;
    auto outcomes = sample_heralds(dist, 1000, 7, 1.0, &sum);
    CHECK(sum.counts[0] == 1000);
    CHECK(sum.no_click_count == 0);
    for (const auto& o : outcomes) {
        CHECK(o.clicked);
        CHECK(*o.channel == 0);
        CHECK(*o.heralded_phonon == 0);
    }
}

TEST_CASE("sampling is deterministic under a fixed seed") {
    auto cfg = cfg_with();
    auto dist = click_distribution(herald_probabilities(1.0, cfg),
                                   DetectorModel::ideal(cfg.n_max));
    auto a = sample_heralds(dist, 5000, 42, 1.0);
    auto b = sample_heralds(dist, 5000, 42, 1.0);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].clicked == b[i].clicked);
        CHECK(a[i].channel == b[i].channel);
        CHECK(a[i].trial_seed == b[i].trial_seed);
    }
    auto c = sample_heralds(dist, 5000, 43, 1.0);
    bool all_same = true;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].channel != c[i].channel) all_same = false;
    CHECK_FALSE(all_same);
}

TEST_CASE("empirical frequency of channel 0 sits in the 3-sigma band") {
    auto cfg = cfg_with();
    auto dist = click_distribution(herald_probabilities(1.0, cfg),
                                   DetectorModel::ideal(cfg.n_max));
    const std::uint64_t trials = 100000;
    SampleSummary sum;
    sample_heralds(dist, trials, 1234, 1.0, &sum);
    double p = std::exp(-1.0);
    double freq = static_cast<double>(sum.counts[0]) / trials;
    double sigma = std::sqrt(p * (1.0 - p) / trials);
    CHECK(std::abs(freq - p) < 3.0 * sigma);
}

TEST_CASE("chi-square goodness of fit passes across gt values") {
    auto cfg = cfg_with(0.0, 40);
    for (double gt : {0.5, 1.0, 2.0}) {
        auto dist = click_distribution(herald_probabilities(gt, cfg),
                                       DetectorModel::ideal(cfg.n_max));
        SampleSummary sum;
        sample_heralds(dist, 100000, 99, gt, &sum);
        CHECK(sampler_gof_pvalue(dist, sum) >= 0.001);
    }
}

TEST_CASE("dark counts are reported separately") {
    auto cfg = cfg_with(0.0, 5);
    auto det = DetectorModel::ideal(cfg.n_max);
    det.dark_rate = 0.01;
    auto dist = click_distribution(herald_probabilities(2.0, cfg), det);
    double dark_total = 0.0;
    for (double d : dist.dark_probs) dark_total += d;
    CHECK(dark_total > 0.0);
    double total = dist.no_click + dark_total;
    for (double p : dist.probs) total += p;
    CHECK(std::abs(total - 1.0) < 1e-12);

    SampleSummary sum;
    sample_heralds(dist, 50000, 5, 2.0, &sum);
    std::uint64_t darks = 0;
    for (auto d : sum.dark_counts) darks += d;
    CHECK(darks > 0);
}

TEST_CASE("post-click state is an exact Fock state at any loss") {
    for (double ratio : {0.0, 1.0, 3.0}) {
        auto cfg = cfg_with(ratio, 20);
        auto rho = density_closed_form(1.0, cfg);
        for (int j = 0; j <= 4; ++j) {
            auto post = post_click_state(rho, j);
            CHECK(post.phonon.fock_number == j);
            CHECK(std::abs(post.fidelity_to_fock - 1.0) < 1e-12);
            CHECK(std::abs(post.phonon.purity - 1.0) < 1e-12);
        }
    }
    // j = 1 at gt = 1, gamma = 0: click probability e^{-1}
    auto rho = density_closed_form(1.0, cfg_with(0.0, 20));
    CHECK(post_click_state(rho, 1).phonon.click_probability ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    // zero-probability channel at t = 0
    auto rho0 = density_closed_form(0.0, cfg_with(0.0, 20));
    CHECK_THROWS_AS(post_click_state(rho0, 3), std::invalid_argument);
}
