#ifndef EQS_PREPROCESS_HPP
#define EQS_PREPROCESS_HPP

#include <utility>
#include <vector>

#include "eqs/time_series.hpp"

namespace eqs {

struct GapReport {
    std::size_t gap_count = 0;
    double longest_gap_seconds = 0.0;
    double total_dropped_seconds = 0.0;
};

struct PreprocessConfig {
    double band_low_hz = 4.0;
    double band_high_hz = 10.0;
    int filter_order = 4; // bandpass order, even, applied forward-backward
    double decimate_to_hz = 20.0;
    double window_seconds = 300.0;

    void validate() const;
    std::size_t window_samples() const; // round(window_seconds * decimate_to_hz)
};

// Concatenates time-sorted segments of one record, eliding inter-segment
// gaps. Any discontinuity of at least one sample period counts as a gap.
std::pair<TimeSeries, GapReport> stitch(const std::vector<TimeSeries>& segments);

// One biquad of the cascaded bandpass, normalized so a0 = 1.
struct Biquad {
    double b0, b1, b2, a1, a2;
};

// Butterworth bandpass design (bilinear transform, prewarped edges) as
// second-order sections. `order` is the bandpass order: even, >= 2.
std::vector<Biquad> design_butterworth_bandpass(int order, double low_hz,
                                                double high_hz, double sample_rate_hz);

// Zero-phase band-limited copy of t: the cascade is run forward then
// backward over an odd-extension padded signal. Length, rate and start
// time are preserved.
TimeSeries bandpass(const TimeSeries& t, const PreprocessConfig& cfg);

// Integer-factor downsampling by sample dropping. The caller must have
// band-limited the signal below target_hz / 2 (the bandpass stage does).
TimeSeries decimate(const TimeSeries& t, double target_hz);

// stitch -> bandpass -> decimate -> segment.
std::pair<std::vector<TimeSeries>, GapReport>
run_pipeline(const std::vector<TimeSeries>& segments, const PreprocessConfig& cfg);

} // namespace eqs

#endif
