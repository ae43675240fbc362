#include "eqs/synth.hpp"

#include <algorithm>
#include <cmath>

#include "eqs/rng.hpp"

namespace eqs {

void SynthConfig::validate() const {
    if (!(duration_seconds > 0.0))
        throw UsageError("synth: duration_seconds must be positive");
    if (!(sample_rate_hz > 0.0))
        throw UsageError("synth: sample_rate_hz must be positive");
    if (noise_sigma < 0.0)
        throw UsageError("synth: noise_sigma must be >= 0");
    if (event_amplitude_lo > event_amplitude_hi)
        throw UsageError("synth: amplitude range is inverted");
    if (!(wavelet_dominant_hz > 0.0) || !(wavelet_decay_seconds > 0.0))
        throw UsageError("synth: wavelet parameters must be positive");
    if (event_rate_per_hour < 0.0)
        throw UsageError("synth: event_rate_per_hour must be >= 0");
    for (double t : event_times)
        if (t < 0.0 || t > duration_seconds)
            throw UsageError("synth: event time outside the record span");
}

std::vector<double> event_wavelet(double amplitude, double dominant_hz,
                                  double decay_seconds, double sample_rate_hz) {
    const double pi = 3.14159265358979323846;
    const auto n = static_cast<std::size_t>(
        std::llround(5.0 * decay_seconds * sample_rate_hz));
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        double tau = static_cast<double>(i) / sample_rate_hz;
        w[i] = amplitude * std::exp(-tau / decay_seconds) *
               std::sin(2.0 * pi * dominant_hz * tau);
    }
    return w;
}

namespace {

void add_wavelet(TimeSeries& t, double onset_seconds, double amplitude,
                 const SynthConfig& cfg) {
    auto w = event_wavelet(amplitude, cfg.wavelet_dominant_hz,
                           cfg.wavelet_decay_seconds, cfg.sample_rate_hz);
    auto start = static_cast<std::size_t>(
        std::llround(onset_seconds * cfg.sample_rate_hz));
    for (std::size_t i = 0; i < w.size() && start + i < t.size(); ++i)
        t.samples[start + i] += w[i];
}

} // namespace

std::pair<TimeSeries, GroundTruth> gen_record(const SynthConfig& cfg) {
    cfg.validate();
    const Rng root(cfg.seed);

    const auto n = static_cast<std::size_t>(
        std::llround(cfg.duration_seconds * cfg.sample_rate_hz));
    TimeSeries record(std::vector<double>(n, 0.0), cfg.sample_rate_hz, 0.0);

    Rng noise = root.derive(0);
    if (cfg.noise_sigma > 0.0) {
        for (double& v : record.samples)
            v = cfg.noise_sigma * noise.normal();
    }

    Rng events = root.derive(1);
    std::vector<std::pair<double, double>> onsets; // (time, amplitude)
    if (!cfg.event_times.empty()) {
        for (double t : cfg.event_times)
            onsets.emplace_back(
                t, events.uniform(cfg.event_amplitude_lo, cfg.event_amplitude_hi));
    } else if (cfg.event_rate_per_hour > 0.0) {
        auto count = static_cast<std::size_t>(std::llround(
            cfg.event_rate_per_hour * cfg.duration_seconds / 3600.0));
        double span = std::max(0.0, cfg.duration_seconds - cfg.wavelet_duration_seconds());
        for (std::size_t i = 0; i < count; ++i)
            onsets.emplace_back(
                events.uniform(0.0, span),
                events.uniform(cfg.event_amplitude_lo, cfg.event_amplitude_hi));
    }
    std::sort(onsets.begin(), onsets.end());

    GroundTruth truth;
    truth.reserve(onsets.size());
    for (const auto& [t, amp] : onsets) {
        add_wavelet(record, t, amp, cfg);
        truth.push_back({record.start_time + t, amp, cfg.wavelet_duration_seconds()});
    }
    return {std::move(record), truth};
}

std::pair<LearningSet, GroundTruth>
gen_learning_set(const SynthConfig& cfg, std::size_t n_event_windows,
                 std::size_t n_other_windows) {
    cfg.validate();
    if (n_event_windows < 1 || n_other_windows < 1)
        throw UsageError("gen_learning_set: window counts must be >= 1");

    const Rng root(cfg.seed);
    const auto n = static_cast<std::size_t>(
        std::llround(cfg.duration_seconds * cfg.sample_rate_hz));

    auto noise_window = [&](Rng rng, double t0) {
        TimeSeries w(std::vector<double>(n, 0.0), cfg.sample_rate_hz, t0);
        if (cfg.noise_sigma > 0.0)
            for (double& v : w.samples) v = cfg.noise_sigma * rng.normal();
        return w;
    };

    std::vector<LabeledWindow> windows;
    GroundTruth truth;
    const double wav_dur = cfg.wavelet_duration_seconds();
    const double onset_span = std::max(0.0, cfg.duration_seconds - wav_dur);
    for (std::size_t i = 0; i < n_event_windows; ++i) {
        Rng rng = root.derive(i);
        double t0 = static_cast<double>(i) * cfg.duration_seconds;
        TimeSeries w = noise_window(rng.derive(0), t0);
        Rng ev = rng.derive(1);
        double onset = ev.uniform(0.0, onset_span);
        double amp = ev.uniform(cfg.event_amplitude_lo, cfg.event_amplitude_hi);
        add_wavelet(w, onset, amp, cfg);
        truth.push_back({t0 + onset, amp, wav_dur});
        windows.push_back({std::move(w), Label::Event});
    }
    for (std::size_t i = 0; i < n_other_windows; ++i) {
        Rng rng = root.derive(1000000 + i);
        double t0 = static_cast<double>(n_event_windows + i) * cfg.duration_seconds;
        windows.push_back({noise_window(rng.derive(0), t0), Label::Other});
    }
    return {LearningSet(std::move(windows)), truth};
}

std::pair<LearningSet, LearningSet>
split_learning_set(const LearningSet& set, double train_frac, std::uint64_t seed) {
    if (!(train_frac > 0.0 && train_frac < 1.0))
        throw UsageError("split: train_frac must be in (0, 1)");

    std::vector<std::size_t> event_idx, other_idx;
    for (std::size_t i = 0; i < set.size(); ++i)
        (set[i].label == Label::Event ? event_idx : other_idx).push_back(i);
    if (event_idx.size() < 2 || other_idx.size() < 2)
        throw UsageError("split: need at least two windows per class");

    Rng rng(seed);
    auto shuffle = [&rng](std::vector<std::size_t>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[static_cast<std::size_t>(rng.bounded(i))]);
    };
    shuffle(event_idx);
    shuffle(other_idx);

    auto take = [train_frac](const std::vector<std::size_t>& v) {
        auto want = static_cast<std::size_t>(
            std::llround(train_frac * static_cast<double>(v.size())));
        return std::clamp<std::size_t>(want, 1, v.size() - 1);
    };

    std::vector<LabeledWindow> train, test;
    auto distribute = [&](const std::vector<std::size_t>& idx) {
        std::size_t n_train = take(idx);
        for (std::size_t i = 0; i < idx.size(); ++i)
            (i < n_train ? train : test).push_back(set[idx[i]]);
    };
    distribute(event_idx);
    distribute(other_idx);
    return {LearningSet(std::move(train)), LearningSet(std::move(test))};
}

} // namespace eqs
