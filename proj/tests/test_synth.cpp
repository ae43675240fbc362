#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "eqs/discovery.hpp"
#include "eqs/synth.hpp"

using namespace eqs;

TEST_CASE("noise-free record is exactly the wavelet") {
    SynthConfig cfg;
    cfg.duration_seconds = 20.0;
    cfg.sample_rate_hz = 50.0;
    cfg.noise_sigma = 0.0;
    cfg.event_times = {4.0};
    cfg.event_amplitude_lo = cfg.event_amplitude_hi = 3.0;
    cfg.seed = 10;

    auto [record, truth] = gen_record(cfg);
    REQUIRE(truth.size() == 1);
    CHECK(truth[0].time == 4.0);
    CHECK(truth[0].amplitude == 3.0);

    auto wavelet = event_wavelet(3.0, cfg.wavelet_dominant_hz,
                                 cfg.wavelet_decay_seconds, cfg.sample_rate_hz);
    std::size_t start = 200; // 4 s * 50 Hz
    for (std::size_t i = 0; i < record.size(); ++i) {
        if (i >= start && i - start < wavelet.size())
            CHECK(record.samples[i] == wavelet[i - start]);
        else
            CHECK(record.samples[i] == 0.0);
    }
}

TEST_CASE("identical seeds give identical records") {
    SynthConfig cfg;
    cfg.duration_seconds = 60.0;
    cfg.event_rate_per_hour = 120.0;
    cfg.seed = 99;

    auto [a, truth_a] = gen_record(cfg);
    auto [b, truth_b] = gen_record(cfg);
    CHECK(a.samples == b.samples);
    REQUIRE(truth_a.size() == truth_b.size());
    for (std::size_t i = 0; i < truth_a.size(); ++i) {
        CHECK(truth_a[i].time == truth_b[i].time);
        CHECK(truth_a[i].amplitude == truth_b[i].amplitude);
    }

    cfg.seed = 100;
    auto [c, truth_c] = gen_record(cfg);
    CHECK(a.samples != c.samples);
}

TEST_CASE("event rate controls the injection count") {
    SynthConfig cfg;
    cfg.duration_seconds = 1800.0;
    cfg.event_rate_per_hour = 24.0;
    cfg.seed = 3;
    auto [record, truth] = gen_record(cfg);
    CHECK(truth.size() == 12);
    CHECK(std::is_sorted(truth.begin(), truth.end(),
                         [](const InjectedEvent& x, const InjectedEvent& y) {
                             return x.time < y.time;
                         }));
    for (const auto& ev : truth) {
        CHECK(ev.time >= 0.0);
        CHECK(ev.time <= cfg.duration_seconds);
    }
}

TEST_CASE("high-SNR event windows rise above the noise floor") {
    SynthConfig cfg;
    cfg.duration_seconds = 20.0;
    cfg.sample_rate_hz = 40.0;
    cfg.noise_sigma = 1.0;
    cfg.event_amplitude_lo = 5.0; // >= 5 sigma
    cfg.event_amplitude_hi = 8.0;
    cfg.seed = 17;

    auto [set, truth] = gen_learning_set(cfg, 12, 12);
    double min_event_peak = 1e300, max_noise_peak = 0.0;
    for (const auto& w : set.windows()) {
        double peak = 0.0;
        for (double v : w.series.samples) peak = std::max(peak, std::abs(v));
        if (w.label == Label::Event)
            min_event_peak = std::min(min_event_peak, peak);
        else
            max_noise_peak = std::max(max_noise_peak, peak);
    }
    CHECK(min_event_peak > max_noise_peak);
}

TEST_CASE("learning set construction") {
    SynthConfig cfg;
    cfg.duration_seconds = 15.0;
    cfg.sample_rate_hz = 20.0;
    cfg.seed = 23;

    auto [set, truth] = gen_learning_set(cfg, 52, 52);
    CHECK(set.size() == 104);
    CHECK(set.window_len() == 300);
    CHECK(truth.size() == 52); // one injection per event window

    std::size_t events = 0;
    for (const auto& w : set.windows())
        if (w.label == Label::Event) ++events;
    CHECK(events == 52);

    // Each injection lands inside its window's time span.
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const auto& w = set[i].series;
        CHECK(truth[i].time >= w.start_time);
        CHECK(truth[i].time <= w.end_time());
    }

    CHECK_THROWS_AS(gen_learning_set(cfg, 5, 0), UsageError);
    CHECK_THROWS_AS(gen_learning_set(cfg, 0, 5), UsageError);
}

TEST_CASE("generated set is separable at high SNR") {
    SynthConfig cfg;
    cfg.duration_seconds = 12.0;
    cfg.sample_rate_hz = 25.0;
    cfg.noise_sigma = 0.3;
    cfg.event_amplitude_lo = 5.0;
    cfg.event_amplitude_hi = 8.0;
    cfg.wavelet_decay_seconds = 0.6;
    cfg.seed = 31;

    auto [set, truth] = gen_learning_set(cfg, 8, 8);
    DiscoveryConfig dc;
    dc.min_len = 15;
    dc.max_len = 75;
    dc.length_step = 30;
    dc.offset_step = 5;
    dc.max_shapelets = 3;
    dc.quality_threshold = 0.4;
    auto shapelets = discover(set, dc);
    REQUIRE(!shapelets.empty());
    CHECK(shapelets[0].quality == 1.0);
}

TEST_CASE("stratified split keeps classes on both sides") {
    SynthConfig cfg;
    cfg.duration_seconds = 5.0;
    cfg.sample_rate_hz = 20.0;
    cfg.seed = 41;
    auto [set, truth] = gen_learning_set(cfg, 52, 52);

    auto [train, test] = split_learning_set(set, 0.6, 8);
    CHECK(train.size() == 62); // 31 + 31
    CHECK(test.size() == 42);

    auto counts = [](const LearningSet& s) {
        std::size_t e = 0;
        for (const auto& w : s.windows())
            if (w.label == Label::Event) ++e;
        return std::make_pair(e, s.size() - e);
    };
    CHECK(counts(train) == std::make_pair<std::size_t, std::size_t>(31, 31));
    CHECK(counts(test) == std::make_pair<std::size_t, std::size_t>(21, 21));

    // Deterministic in the seed.
    auto [train2, test2] = split_learning_set(set, 0.6, 8);
    for (std::size_t i = 0; i < train.size(); ++i)
        CHECK(train[i].series.samples == train2[i].series.samples);

    CHECK_THROWS_AS(split_learning_set(set, 0.0, 1), UsageError);
    CHECK_THROWS_AS(split_learning_set(set, 1.0, 1), UsageError);
}

TEST_CASE("config validation") {
    SynthConfig cfg;
    cfg.seed = 1;
    CHECK_NOTHROW(cfg.validate());

    SynthConfig bad = cfg;
    bad.event_amplitude_lo = 9.0;
    bad.event_amplitude_hi = 5.0;
    CHECK_THROWS_AS(bad.validate(), UsageError);

    SynthConfig outside = cfg;
    outside.event_times = {cfg.duration_seconds + 1.0};
    CHECK_THROWS_AS(outside.validate(), UsageError);

    SynthConfig negative = cfg;
    negative.noise_sigma = -0.5;
    CHECK_THROWS_AS(negative.validate(), UsageError);
}
