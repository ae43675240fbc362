#include "eqs/time_series.hpp"

#include <cmath>

namespace eqs {

void validate_series(const TimeSeries& t, const std::string& context) {
    if (t.samples.empty())
        throw DataError(context + ": empty series");
    if (!(t.sample_rate_hz > 0.0))
        throw DataError(context + ": sample_rate_hz must be positive");
    for (double v : t.samples) {
        if (!std::isfinite(v))
            throw DataError(context + ": non-finite sample");
    }
}

const char* label_name(Label l) {
    return l == Label::Event ? "Event" : "Other";
}

LearningSet::LearningSet(std::vector<LabeledWindow> windows)
    : windows_(std::move(windows)) {
    if (windows_.empty())
        throw UsageError("learning set: no windows");
    window_len_ = windows_[0].series.size();
    sample_rate_hz_ = windows_[0].series.sample_rate_hz;
    for (const auto& w : windows_) {
        if (w.series.size() != window_len_)
            throw UsageError("learning set: windows differ in length");
        if (w.series.sample_rate_hz != sample_rate_hz_)
            throw UsageError("learning set: windows differ in sample rate");
    }
}

bool LearningSet::has_both_classes() const {
    bool has_event = false, has_other = false;
    for (const auto& w : windows_)
        (w.label == Label::Event ? has_event : has_other) = true;
    return has_event && has_other;
}

std::vector<Label> LearningSet::labels() const {
    std::vector<Label> out;
    out.reserve(windows_.size());
    for (const auto& w : windows_) out.push_back(w.label);
    return out;
}

Subsequence::Subsequence(const TimeSeries& src, std::size_t off, std::size_t len)
    : source(&src), offset(off), length(len) {
    if (len < 3)
        throw UsageError("subsequence: length must be >= 3");
    if (off + len > src.size())
        throw UsageError("subsequence: offset + length exceeds series length");
}

SubsequenceRange enumerate_subsequences(const TimeSeries& t, std::size_t l) {
    if (l < 3)
        throw UsageError("enumerate_subsequences: length must be >= 3");
    if (l > t.size())
        throw UsageError("enumerate_subsequences: length exceeds series length");
    return SubsequenceRange(t, l);
}

SegmentationResult segment(const TimeSeries& record, std::size_t window_len) {
    if (window_len < 1)
        throw UsageError("segment: window_len must be >= 1");
    SegmentationResult out;
    std::size_t n_windows = record.size() / window_len;
    out.windows.reserve(n_windows);
    for (std::size_t w = 0; w < n_windows; ++w) {
        std::size_t begin = w * window_len;
        std::vector<double> samples(record.samples.begin() + begin,
                                    record.samples.begin() + begin + window_len);
        double t0 = record.start_time +
                    static_cast<double>(begin) / record.sample_rate_hz;
        out.windows.emplace_back(std::move(samples), record.sample_rate_hz, t0);
    }
    out.dropped_samples = record.size() - n_windows * window_len;
    return out;
}

} // namespace eqs
