#ifndef EQS_DETECTION_HPP
#define EQS_DETECTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "eqs/classifier.hpp"
#include "eqs/time_series.hpp"

namespace eqs {

struct CatalogEvent {
    std::string id;
    double origin_time = 0.0; // seconds since epoch
    std::optional<double> magnitude;
};

// A window the classifier called Event.
struct Detection {
    double window_start = 0.0;
    double window_end = 0.0;
    double prob_event = 0.0;
    std::optional<std::string> matched_event_id;
};

struct CatalogMatch {
    std::vector<Detection> detections;     // annotated copies
    std::size_t matched_events = 0;        // catalog events inside some detection
    std::vector<std::string> missed_event_ids;
};

struct DetectionReport {
    std::size_t total_detections = 0;
    std::size_t catalog_matched = 0; // detections overlapping >= 1 event
    std::size_t new_events = 0;      // detections matching nothing
    std::optional<std::size_t> false_positives;
    std::optional<std::size_t> false_negatives;
    std::optional<double> precision;
    std::optional<double> recall;
    double runtime_seconds = 0.0;
    std::vector<double> histogram_edges;
    std::vector<std::size_t> histogram_counts;
};

inline std::vector<double> default_histogram_edges() {
    return {0.5, 0.6, 0.7, 0.8, 0.9, 0.96, 1.0};
}

// Classifies every window and keeps the Event verdicts, sorted by start time.
std::vector<Detection> detect(const std::vector<TimeSeries>& windows,
                              const Forest& model, unsigned threads = 1);

// An event matches a detection when its origin time falls inside
// [window_start - tolerance, window_end + tolerance]. Each event matches at
// most one detection (the earliest overlapping window); a detection may
// match several events but counts once. Catalog rows are sorted by origin
// time first, so input order never matters.
CatalogMatch match_catalog(const std::vector<Detection>& detections,
                           std::vector<CatalogEvent> catalog,
                           double tolerance_seconds);

// Counts per half-open bin [e_i, e_{i+1}); the top bin is closed.
std::vector<std::size_t> probability_histogram(const std::vector<Detection>& detections,
                                               const std::vector<double>& bin_edges);

// Assembles the summary. Precision/recall are only computed when the catalog
// is a complete ground truth (synthetic injections, or a reviewed catalog);
// otherwise the counts stand alone.
DetectionReport build_report(const CatalogMatch& match, std::size_t catalog_size,
                             const std::vector<double>& histogram_edges,
                             double runtime_seconds, bool catalog_is_ground_truth);

} // namespace eqs

#endif
