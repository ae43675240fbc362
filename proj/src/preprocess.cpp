#include "eqs/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>

namespace eqs {

namespace {

std::string fmt_hz(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

} // namespace

void PreprocessConfig::validate() const {
    if (!(band_low_hz > 0.0))
        throw UsageError("preprocess: band_low_hz must be positive");
    if (!(band_low_hz < band_high_hz))
        throw UsageError("preprocess: band_low_hz must be below band_high_hz");
    // The decimated Nyquist may sit exactly at the upper band edge (the
    // 4-10 Hz band decimated to 20 Hz does); anything above it cannot.
    if (!(band_high_hz <= decimate_to_hz / 2.0))
        throw UsageError("preprocess: band_high_hz exceeds decimated Nyquist " +
                         fmt_hz(decimate_to_hz / 2.0) + " Hz");
    if (filter_order < 2 || filter_order % 2 != 0)
        throw UsageError("preprocess: filter_order must be even and >= 2");
    if (!(window_seconds > 0.0))
        throw UsageError("preprocess: window_seconds must be positive");
}

std::size_t PreprocessConfig::window_samples() const {
    return static_cast<std::size_t>(std::llround(window_seconds * decimate_to_hz));
}

std::pair<TimeSeries, GapReport> stitch(const std::vector<TimeSeries>& segments) {
    if (segments.empty())
        throw UsageError("stitch: no segments");

    const double rate = segments[0].sample_rate_hz;
    const double period = 1.0 / rate;
    GapReport report;

    std::size_t total = 0;
    for (const auto& s : segments) {
        if (s.sample_rate_hz != rate)
            throw UsageError("stitch: segments have mixed sample rates");
        total += s.size();
    }

    TimeSeries out;
    out.sample_rate_hz = rate;
    out.start_time = segments[0].start_time;
    out.samples.reserve(total);

    double prev_end = segments[0].start_time;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (i > 0) {
            double gap = s.start_time - prev_end;
            // Tolerance of half a period absorbs timestamp rounding.
            if (gap < -0.5 * period)
                throw UsageError("stitch: overlapping segments");
            if (gap >= period) {
                ++report.gap_count;
                report.total_dropped_seconds += gap;
                report.longest_gap_seconds = std::max(report.longest_gap_seconds, gap);
            }
        }
        out.samples.insert(out.samples.end(), s.samples.begin(), s.samples.end());
        prev_end = s.start_time + s.duration_seconds();
    }
    return {std::move(out), report};
}

std::vector<Biquad> design_butterworth_bandpass(int order, double low_hz,
                                                double high_hz, double fs) {
    if (order < 2 || order % 2 != 0)
        throw UsageError("bandpass design: order must be even and >= 2");
    if (!(0.0 < low_hz && low_hz < high_hz && high_hz < fs / 2.0))
        throw UsageError("bandpass design: band edges must satisfy 0 < low < high < Nyquist");

    using cd = std::complex<double>;
    const double pi = 3.14159265358979323846;
    const int n = order / 2; // analog lowpass prototype order

    // Prototype poles on the unit circle, left half plane.
    std::vector<cd> proto(n);
    for (int k = 0; k < n; ++k) {
        double theta = pi * (2.0 * k + 1.0) / (2.0 * n) + pi / 2.0;
        proto[k] = cd(std::cos(theta), std::sin(theta));
    }

    // Prewarped band edges, lowpass -> bandpass transform.
    const double w1 = 2.0 * fs * std::tan(pi * low_hz / fs);
    const double w2 = 2.0 * fs * std::tan(pi * high_hz / fs);
    const double bw = w2 - w1;
    const double w0 = std::sqrt(w1 * w2);

    std::vector<cd> analog_poles;
    analog_poles.reserve(static_cast<std::size_t>(order));
    for (const cd& p : proto) {
        cd q = p * (bw / 2.0);
        cd disc = std::sqrt(q * q - w0 * w0);
        analog_poles.push_back(q + disc);
        analog_poles.push_back(q - disc);
    }

    // Bilinear transform; zeros land at z = +1 (n of them) and z = -1 (n).
    const double k2fs = 2.0 * fs;
    std::vector<cd> zpoles;
    zpoles.reserve(analog_poles.size());
    for (const cd& s : analog_poles)
        zpoles.push_back((k2fs + s) / (k2fs - s));

    // Pair poles into biquads. Complex poles pair with their conjugates;
    // real poles (possible for wide bands) pair among themselves.
    std::vector<cd> complex_poles;
    std::vector<double> real_poles;
    for (const cd& z : zpoles) {
        if (std::abs(z.imag()) > 1e-12)
            complex_poles.push_back(z);
        else
            real_poles.push_back(z.real());
    }
    std::sort(complex_poles.begin(), complex_poles.end(), [](const cd& a, const cd& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return std::abs(a.imag()) < std::abs(b.imag());
    });
    std::sort(real_poles.begin(), real_poles.end());

    std::vector<Biquad> sections;
    for (std::size_t i = 0; i + 1 < complex_poles.size(); i += 2) {
        const cd& z = complex_poles[i]; // [i+1] is its conjugate
        sections.push_back({1.0, 0.0, -1.0, -2.0 * z.real(), std::norm(z)});
    }
    for (std::size_t i = 0; i + 1 < real_poles.size(); i += 2) {
        double r1 = real_poles[i], r2 = real_poles[i + 1];
        sections.push_back({1.0, 0.0, -1.0, -(r1 + r2), r1 * r2});
    }

    // Normalize to unit gain at the (digital image of the) center frequency.
    const double theta0 = 2.0 * std::atan(w0 / k2fs);
    const cd z1 = std::polar(1.0, theta0);
    const cd z2 = z1 * z1;
    cd h(1.0, 0.0);
    for (const auto& s : sections) {
        cd num = s.b0 * z2 + s.b1 * z1 + s.b2;
        cd den = z2 + s.a1 * z1 + s.a2;
        h *= num / den;
    }
    const double k = std::pow(1.0 / std::abs(h), 1.0 / static_cast<double>(sections.size()));
    for (auto& s : sections) {
        s.b0 *= k;
        s.b1 *= k;
        s.b2 *= k;
    }
    return sections;
}

namespace {

// In-place cascade, direct form II transposed, zero initial state.
void run_cascade(const std::vector<Biquad>& sections, std::vector<double>& x) {
    for (const auto& s : sections) {
        double z1 = 0.0, z2 = 0.0;
        for (double& v : x) {
            double y = s.b0 * v + z1;
            z1 = s.b1 * v - s.a1 * y + z2;
            z2 = s.b2 * v - s.a2 * y;
            v = y;
        }
    }
}

} // namespace

TimeSeries bandpass(const TimeSeries& t, const PreprocessConfig& cfg) {
    cfg.validate();
    if (!(t.sample_rate_hz > 2.0 * cfg.band_high_hz))
        throw UsageError("bandpass: sample rate must exceed twice band_high_hz");

    const auto sections = design_butterworth_bandpass(
        cfg.filter_order, cfg.band_low_hz, cfg.band_high_hz, t.sample_rate_hz);

    const std::size_t n = t.size();
    // Odd extension long enough for the filter transient to die out.
    const std::size_t want = static_cast<std::size_t>(
        std::ceil(10.0 * t.sample_rate_hz / cfg.band_low_hz));
    const std::size_t pad = std::min(n - 1, want);

    std::vector<double> buf;
    buf.reserve(n + 2 * pad);
    for (std::size_t i = 0; i < pad; ++i)
        buf.push_back(2.0 * t.samples[0] - t.samples[pad - i]);
    buf.insert(buf.end(), t.samples.begin(), t.samples.end());
    for (std::size_t i = 0; i < pad; ++i)
        buf.push_back(2.0 * t.samples[n - 1] - t.samples[n - 2 - i]);

    run_cascade(sections, buf);
    std::reverse(buf.begin(), buf.end());
    run_cascade(sections, buf);
    std::reverse(buf.begin(), buf.end());

    // Strip the padding in place; week-long records make a copy costly.
    buf.erase(buf.begin() + static_cast<std::ptrdiff_t>(pad + n), buf.end());
    buf.erase(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(pad));

    TimeSeries out;
    out.sample_rate_hz = t.sample_rate_hz;
    out.start_time = t.start_time;
    out.samples = std::move(buf);
    return out;
}

TimeSeries decimate(const TimeSeries& t, double target_hz) {
    if (!(target_hz > 0.0))
        throw UsageError("decimate: target rate must be positive");
    const double ratio = t.sample_rate_hz / target_hz;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9)
        throw UsageError("decimate: sample rate must be an integer multiple of target");
    const std::size_t k = static_cast<std::size_t>(rounded);
    if (k == 1) {
        TimeSeries out = t;
        out.sample_rate_hz = target_hz;
        return out;
    }
    TimeSeries out;
    out.sample_rate_hz = target_hz;
    out.start_time = t.start_time;
    out.samples.reserve((t.size() + k - 1) / k);
    for (std::size_t i = 0; i < t.size(); i += k)
        out.samples.push_back(t.samples[i]);
    return out;
}

std::pair<std::vector<TimeSeries>, GapReport>
run_pipeline(const std::vector<TimeSeries>& segments, const PreprocessConfig& cfg) {
    cfg.validate();
    auto [record, report] = stitch(segments);
    TimeSeries filtered = bandpass(record, cfg);
    record.samples.clear();
    record.samples.shrink_to_fit();
    TimeSeries narrow = decimate(filtered, cfg.decimate_to_hz);
    filtered.samples.clear();
    filtered.samples.shrink_to_fit();
    auto segmented = segment(narrow, cfg.window_samples());
    return {std::move(segmented.windows), report};
}

} // namespace eqs
