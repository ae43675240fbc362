#ifndef EQS_SYNTH_HPP
#define EQS_SYNTH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "eqs/time_series.hpp"

namespace eqs {

// White Gaussian noise plus damped-sinusoid wavelet packets at the event
// times. Everything is drawn from the seeded counter generator, so a config
// fully determines the record.
struct SynthConfig {
    double duration_seconds = 300.0;
    double sample_rate_hz = 100.0;
    double noise_sigma = 1.0;
    std::vector<double> event_times;    // seconds from record start; wins over rate
    double event_rate_per_hour = 0.0;   // used when event_times is empty
    double event_amplitude_lo = 6.0;
    double event_amplitude_hi = 10.0;
    double wavelet_dominant_hz = 6.3;
    double wavelet_decay_seconds = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
    double wavelet_duration_seconds() const { return 5.0 * wavelet_decay_seconds; }
};

struct InjectedEvent {
    double time = 0.0; // absolute (start_time + offset)
    double amplitude = 0.0;
    double duration = 0.0;
};

using GroundTruth = std::vector<InjectedEvent>;

// exp(-tau/decay) * sin(2*pi*f*tau) scaled by amplitude; abrupt onset,
// length wavelet_duration_seconds.
std::vector<double> event_wavelet(double amplitude, double dominant_hz,
                                  double decay_seconds, double sample_rate_hz);

std::pair<TimeSeries, GroundTruth> gen_record(const SynthConfig& cfg);

// Balanced-capable labeled windows: each Event window holds exactly one
// injected wavelet, Other windows are pure noise. Window duration is
// cfg.duration_seconds; per-window derived rng streams keep the output
// independent of generation order.
std::pair<LearningSet, GroundTruth>
gen_learning_set(const SynthConfig& cfg, std::size_t n_event_windows,
                 std::size_t n_other_windows);

// Stratified random split: round(train_frac * n) windows of each class go to
// train (clamped so both sides keep at least one window per class).
std::pair<LearningSet, LearningSet>
split_learning_set(const LearningSet& set, double train_frac, std::uint64_t seed);

} // namespace eqs

#endif
