#ifndef EQS_TIME_SERIES_HPP
#define EQS_TIME_SERIES_HPP

#include <cstddef>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "eqs/errors.hpp"

namespace eqs {

// An ordered set of real-valued samples with a sampling rate and an
// absolute start time (seconds since epoch). Immutable by convention once
// built; all pipeline stages return fresh values.
struct TimeSeries {
    std::vector<double> samples;
    double sample_rate_hz = 1.0;
    double start_time = 0.0;

    TimeSeries() = default;
    TimeSeries(std::vector<double> s, double rate, double t0 = 0.0)
        : samples(std::move(s)), sample_rate_hz(rate), start_time(t0) {}

    std::size_t size() const { return samples.size(); }
    double duration_seconds() const {
        return static_cast<double>(samples.size()) / sample_rate_hz;
    }
    double end_time() const { return start_time + duration_seconds(); }
    std::span<const double> view() const { return samples; }
};

// Throws if the series is empty, the rate is non-positive, or any sample is
// non-finite. Applied at every ingestion point (file readers, generators).
void validate_series(const TimeSeries& t, const std::string& context = "series");

enum class Label { Event, Other };

const char* label_name(Label l);

struct LabeledWindow {
    TimeSeries series;
    Label label = Label::Other;
};

// Labeled fixed-length windows used for shapelet discovery and training.
// Construction enforces non-empty, uniform window length and sample rate.
// Entropy-based consumers (discovery, forest fitting) additionally require
// both classes to be present and reject sets that are not.
class LearningSet {
public:
    explicit LearningSet(std::vector<LabeledWindow> windows);

    const std::vector<LabeledWindow>& windows() const { return windows_; }
    std::size_t size() const { return windows_.size(); }
    std::size_t window_len() const { return window_len_; }
    double sample_rate_hz() const { return sample_rate_hz_; }
    const LabeledWindow& operator[](std::size_t i) const { return windows_[i]; }
    std::vector<Label> labels() const;
    bool has_both_classes() const;

private:
    std::vector<LabeledWindow> windows_;
    std::size_t window_len_ = 0;
    double sample_rate_hz_ = 0.0;
};

// A contiguous slice of a TimeSeries, minimum meaningful length 3.
// Holds a pointer to the source; the source must outlive the subsequence.
struct Subsequence {
    const TimeSeries* source = nullptr;
    std::size_t offset = 0;
    std::size_t length = 0;

    Subsequence() = default;
    Subsequence(const TimeSeries& src, std::size_t off, std::size_t len);

    std::span<const double> view() const {
        return std::span<const double>(source->samples).subspan(offset, length);
    }
};

// Lazy range over the (m - l) + 1 subsequences of length l, in offset order.
class SubsequenceRange {
public:
    SubsequenceRange(const TimeSeries& src, std::size_t len)
        : source_(&src), length_(len) {}

    class iterator {
    public:
        using value_type = Subsequence;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::forward_iterator_tag;

        iterator() = default;
        iterator(const TimeSeries* src, std::size_t len, std::size_t off)
            : source_(src), length_(len), offset_(off) {}

        Subsequence operator*() const { return Subsequence(*source_, offset_, length_); }
        iterator& operator++() { ++offset_; return *this; }
        iterator operator++(int) { iterator t = *this; ++offset_; return t; }
        bool operator==(const iterator& o) const { return offset_ == o.offset_; }

    private:
        const TimeSeries* source_ = nullptr;
        std::size_t length_ = 0;
        std::size_t offset_ = 0;
    };

    iterator begin() const { return iterator(source_, length_, 0); }
    iterator end() const { return iterator(source_, length_, count()); }
    std::size_t count() const { return source_->size() - length_ + 1; }
    std::size_t size() const { return count(); }

private:
    const TimeSeries* source_;
    std::size_t length_;
};

// All length-l subsequences of t. Requires 3 <= l <= t.size().
SubsequenceRange enumerate_subsequences(const TimeSeries& t, std::size_t l);

struct SegmentationResult {
    std::vector<TimeSeries> windows;
    std::size_t dropped_samples = 0; // trailing remainder shorter than one window
};

// Consecutive non-overlapping windows of exactly window_len samples.
// A trailing partial window is dropped, never padded.
SegmentationResult segment(const TimeSeries& record, std::size_t window_len);

} // namespace eqs

#endif
