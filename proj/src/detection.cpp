#include "eqs/detection.hpp"

#include <algorithm>

#include "eqs/parallel.hpp"

namespace eqs {

std::vector<Detection> detect(const std::vector<TimeSeries>& windows,
                              const Forest& model, unsigned threads) {
    std::vector<Prediction> preds(windows.size());
    parallel_for(windows.size(), threads, [&](std::size_t i) {
        preds[i] = predict_window(model, windows[i]);
    });
    std::vector<Detection> out;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (preds[i].label != Label::Event)
            continue;
        Detection d;
        d.window_start = windows[i].start_time;
        d.window_end = windows[i].end_time();
        d.prob_event = preds[i].prob_event;
        out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end(), [](const Detection& a, const Detection& b) {
        return a.window_start < b.window_start;
    });
    return out;
}

CatalogMatch match_catalog(const std::vector<Detection>& detections,
                           std::vector<CatalogEvent> catalog,
                           double tolerance_seconds) {
    if (tolerance_seconds < 0.0)
        throw UsageError("match_catalog: tolerance must be >= 0");

    std::sort(catalog.begin(), catalog.end(),
              [](const CatalogEvent& a, const CatalogEvent& b) {
                  return a.origin_time < b.origin_time;
              });

    CatalogMatch result;
    result.detections = detections;
    for (const auto& ev : catalog) {
        bool matched = false;
        for (auto& d : result.detections) {
            if (ev.origin_time >= d.window_start - tolerance_seconds &&
                ev.origin_time <= d.window_end + tolerance_seconds) {
                if (!d.matched_event_id)
                    d.matched_event_id = ev.id; // earliest event names the window
                ++result.matched_events;
                matched = true;
                break; // earliest overlapping window wins
            }
        }
        if (!matched)
            result.missed_event_ids.push_back(ev.id);
    }
    return result;
}

std::vector<std::size_t> probability_histogram(const std::vector<Detection>& detections,
                                               const std::vector<double>& bin_edges) {
    if (bin_edges.size() < 2)
        throw UsageError("histogram: need at least two bin edges");
    for (std::size_t i = 0; i + 1 < bin_edges.size(); ++i)
        if (!(bin_edges[i] < bin_edges[i + 1]))
            throw UsageError("histogram: bin edges must be ascending");

    std::vector<std::size_t> counts(bin_edges.size() - 1, 0);
    for (const auto& d : detections) {
        double p = d.prob_event;
        if (p < bin_edges.front() || p > bin_edges.back())
            continue;
        if (p == bin_edges.back()) {
            ++counts.back();
            continue;
        }
        auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), p);
        ++counts[static_cast<std::size_t>(it - bin_edges.begin()) - 1];
    }
    return counts;
}

DetectionReport build_report(const CatalogMatch& match, std::size_t catalog_size,
                             const std::vector<double>& histogram_edges,
                             double runtime_seconds, bool catalog_is_ground_truth) {
    DetectionReport r;
    r.total_detections = match.detections.size();
    for (const auto& d : match.detections)
        if (d.matched_event_id) ++r.catalog_matched;
    r.new_events = r.total_detections - r.catalog_matched;
    r.runtime_seconds = runtime_seconds;
    r.histogram_edges = histogram_edges;
    r.histogram_counts = probability_histogram(match.detections, histogram_edges);

    if (catalog_is_ground_truth) {
        r.false_positives = r.new_events;
        r.false_negatives = match.missed_event_ids.size();
        if (r.total_detections > 0)
            r.precision = static_cast<double>(r.catalog_matched) /
                          static_cast<double>(r.total_detections);
        if (catalog_size > 0)
            r.recall = static_cast<double>(match.matched_events) /
                       static_cast<double>(catalog_size);
    }
    return r;
}

} // namespace eqs
