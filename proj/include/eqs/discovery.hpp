#ifndef EQS_DISCOVERY_HPP
#define EQS_DISCOVERY_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "eqs/time_series.hpp"

namespace eqs {

// A discovered discriminative subsequence: the winning waveform snippet,
// its information gain, the distance threshold of its best split, and
// where it came from.
struct Shapelet {
    std::vector<double> values;
    std::size_t length = 0;
    double quality = 0.0;         // information gain, in [0, 1]
    double split_threshold = 0.0; // distance separating near from far
    std::size_t source_window_id = 0;
    std::size_t source_offset = 0;
};

struct DistanceEntry {
    std::size_t window_id = 0;
    double distance = 0.0;
};

using DistanceProfile = std::vector<DistanceEntry>;

struct DiscoveryConfig {
    std::size_t min_len = 3;
    std::size_t max_len = 0; // 0 = full window length
    std::size_t max_shapelets = 8;
    double quality_threshold = 0.45;
    std::size_t length_step = 1;
    std::size_t offset_step = 1;
    double similarity_overlap_frac = 0.25;
    bool znormalize = false;
    unsigned threads = 1;

    void validate() const;
};

struct SweepRow {
    double ig_threshold = 0.0;
    std::size_t shapelet_count = 0;
    double test_accuracy = 0.0;
    double runtime_seconds = 0.0;
};

// Base-2 entropy of a two-class label multiset, with 0*log(0) == 0.
double entropy(std::span<const Label> labels);

// Entropy reduction when the profile is split at `threshold`:
// rows with distance < threshold go near, the rest go far.
double information_gain(const DistanceProfile& profile,
                        std::span<const Label> labels, double threshold);

// Scans split thresholds at midpoints between consecutive distinct sorted
// distances and returns the (threshold, gain) maximizing the gain. Gain ties
// are broken toward the wider gap between the straddled distances, then the
// smaller threshold. A constant profile yields (that distance, 0).
std::pair<double, double> best_split(const DistanceProfile& profile,
                                     std::span<const Label> labels);

// Minimum distance from the candidate to every window, in set order.
DistanceProfile distance_profile(std::span<const double> candidate,
                                 const LearningSet& set, bool znorm = false);

inline DistanceProfile distance_profile(const Subsequence& candidate,
                                        const LearningSet& set, bool znorm = false) {
    return distance_profile(candidate.view(), set, znorm);
}

// Greedy same-window overlap pruning over a quality-sorted list: a shapelet
// is dropped when its source interval overlaps an already-kept shapelet from
// the same window by more than overlap_frac of the shorter length.
std::vector<Shapelet> remove_similar(const std::vector<Shapelet>& sorted_by_quality,
                                     double overlap_frac);

// Full discovery pass: enumerate candidates per window (length and offset
// strides from cfg), score each by its best-split information gain, drop
// constant-profile candidates, keep those at or above the quality threshold,
// prune similar ones per window, and merge into a global top-n. Output is
// sorted by quality descending, ties broken by shorter length then by
// (window id, offset). Independent of thread count.
std::vector<Shapelet> discover(const LearningSet& set, const DiscoveryConfig& cfg);

} // namespace eqs

#endif
