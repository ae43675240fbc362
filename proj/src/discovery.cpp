#include "eqs/discovery.hpp"

#include <algorithm>
#include <cmath>

#include "eqs/distance.hpp"
#include "eqs/parallel.hpp"

namespace eqs {

void DiscoveryConfig::validate() const {
    if (min_len < 3)
        throw UsageError("discovery: min_len must be >= 3");
    if (max_len != 0 && max_len < min_len)
        throw UsageError("discovery: max_len must be >= min_len");
    if (max_shapelets < 1)
        throw UsageError("discovery: max_shapelets must be >= 1");
    if (quality_threshold < 0.0 || quality_threshold > 1.0)
        throw UsageError("discovery: quality_threshold must be in [0, 1]");
    if (length_step < 1 || offset_step < 1)
        throw UsageError("discovery: steps must be >= 1");
    if (!(similarity_overlap_frac > 0.0) || similarity_overlap_frac > 1.0)
        throw UsageError("discovery: similarity_overlap_frac must be in (0, 1]");
}

namespace {

double entropy_from_counts(std::size_t n_event, std::size_t n_other) {
    const double n = static_cast<double>(n_event + n_other);
    double h = 0.0;
    if (n_event > 0) {
        double p = static_cast<double>(n_event) / n;
        h -= p * std::log2(p);
    }
    if (n_other > 0) {
        double p = static_cast<double>(n_other) / n;
        h -= p * std::log2(p);
    }
    return h;
}

} // namespace

double entropy(std::span<const Label> labels) {
    if (labels.empty())
        throw UsageError("entropy: empty label set");
    std::size_t n_event = 0;
    for (Label l : labels)
        if (l == Label::Event) ++n_event;
    return entropy_from_counts(n_event, labels.size() - n_event);
}

double information_gain(const DistanceProfile& profile,
                        std::span<const Label> labels, double threshold) {
    if (profile.size() != labels.size() || profile.empty())
        throw UsageError("information_gain: profile and labels must align");

    std::size_t near_event = 0, near_other = 0, far_event = 0, far_other = 0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        bool near = profile[i].distance < threshold;
        bool event = labels[profile[i].window_id] == Label::Event;
        if (near)
            (event ? near_event : near_other)++;
        else
            (event ? far_event : far_other)++;
    }

    const double n = static_cast<double>(profile.size());
    const double n_near = static_cast<double>(near_event + near_other);
    const double n_far = static_cast<double>(far_event + far_other);
    double h = entropy_from_counts(near_event + far_event, near_other + far_other);
    double weighted = 0.0;
    if (n_near > 0) weighted += (n_near / n) * entropy_from_counts(near_event, near_other);
    if (n_far > 0) weighted += (n_far / n) * entropy_from_counts(far_event, far_other);
    return h - weighted;
}

std::pair<double, double> best_split(const DistanceProfile& profile,
                                     std::span<const Label> labels) {
    if (profile.size() != labels.size() || profile.empty())
        throw UsageError("best_split: profile and labels must align");

    struct Row {
        double d;
        bool event;
    };
    std::vector<Row> rows;
    rows.reserve(profile.size());
    std::size_t total_event = 0;
    for (const auto& e : profile) {
        bool ev = labels[e.window_id] == Label::Event;
        rows.push_back({e.distance, ev});
        if (ev) ++total_event;
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.d < b.d;
    });

    const std::size_t n = rows.size();
    const std::size_t total_other = n - total_event;
    const double h_all = entropy_from_counts(total_event, total_other);

    double best_ig = 0.0;
    double best_threshold = rows[0].d;
    double best_margin = -1.0;
    bool found = false;

    std::size_t near_event = 0, near_other = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        (rows[i].event ? near_event : near_other)++;
        if (rows[i].d == rows[i + 1].d)
            continue; // split points only between distinct values
        const double threshold = (rows[i].d + rows[i + 1].d) / 2.0;
        const double margin = rows[i + 1].d - rows[i].d;
        const std::size_t n_near = i + 1;
        const std::size_t n_far = n - n_near;
        double weighted =
            (static_cast<double>(n_near) / static_cast<double>(n)) *
                entropy_from_counts(near_event, near_other) +
            (static_cast<double>(n_far) / static_cast<double>(n)) *
                entropy_from_counts(total_event - near_event, total_other - near_other);
        double ig = h_all - weighted;
        bool better = !found || ig > best_ig ||
                      (ig == best_ig && (margin > best_margin ||
                                         (margin == best_margin && threshold < best_threshold)));
        if (better) {
            best_ig = ig;
            best_threshold = threshold;
            best_margin = margin;
            found = true;
        }
    }
    if (!found)
        return {rows[0].d, 0.0}; // all distances equal, no split possible
    return {best_threshold, best_ig};
}

DistanceProfile distance_profile(std::span<const double> candidate,
                                 const LearningSet& set, bool znorm) {
    if (candidate.size() > set.window_len())
        throw UsageError("distance_profile: candidate longer than windows");
    DistanceProfile profile;
    profile.reserve(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        double d = znorm ? min_subsequence_distance_znorm(candidate, set[i].series.view())
                         : min_subsequence_distance(candidate, set[i].series.view());
        profile.push_back({i, d});
    }
    return profile;
}

namespace {

// Scored candidate before materialization; quality < 0 marks a discard.
struct Scored {
    std::size_t window_id = 0;
    std::size_t offset = 0;
    std::size_t length = 0;
    double quality = -1.0;
    double threshold = 0.0;
};

// quality desc, then shorter length, then (window, offset).
bool scored_before(const Scored& a, const Scored& b) {
    if (a.quality != b.quality) return a.quality > b.quality;
    if (a.length != b.length) return a.length < b.length;
    if (a.window_id != b.window_id) return a.window_id < b.window_id;
    return a.offset < b.offset;
}

bool overlaps_too_much(std::size_t off_a, std::size_t len_a, std::size_t off_b,
                       std::size_t len_b, double frac) {
    std::size_t lo = std::max(off_a, off_b);
    std::size_t hi = std::min(off_a + len_a, off_b + len_b);
    double overlap = hi > lo ? static_cast<double>(hi - lo) : 0.0;
    return overlap > frac * static_cast<double>(std::min(len_a, len_b));
}

std::vector<Scored> prune_similar(const std::vector<Scored>& sorted, double frac) {
    std::vector<Scored> kept;
    for (const auto& c : sorted) {
        bool similar = false;
        for (const auto& k : kept) {
            if (k.window_id == c.window_id &&
                overlaps_too_much(c.offset, c.length, k.offset, k.length, frac)) {
                similar = true;
                break;
            }
        }
        if (!similar) kept.push_back(c);
    }
    return kept;
}

} // namespace

std::vector<Shapelet> remove_similar(const std::vector<Shapelet>& sorted_by_quality,
                                     double overlap_frac) {
    std::vector<Shapelet> kept;
    for (const auto& s : sorted_by_quality) {
        bool similar = false;
        for (const auto& k : kept) {
            if (k.source_window_id == s.source_window_id &&
                overlaps_too_much(s.source_offset, s.length, k.source_offset, k.length,
                                  overlap_frac)) {
                similar = true;
                break;
            }
        }
        if (!similar) kept.push_back(s);
    }
    return kept;
}

std::vector<Shapelet> discover(const LearningSet& set, const DiscoveryConfig& cfg) {
    cfg.validate();
    if (!set.has_both_classes())
        throw UsageError("discover: learning set must contain both classes");

    const std::size_t m = set.window_len();
    const std::size_t max_len = cfg.max_len == 0 ? m : std::min(cfg.max_len, m);
    if (cfg.min_len > m)
        throw UsageError("discover: min_len exceeds window length");
    const std::vector<Label> labels = set.labels();

    // Candidate grid, fixed order: window, then length, then offset.
    std::vector<Scored> candidates;
    for (std::size_t w = 0; w < set.size(); ++w)
        for (std::size_t l = cfg.min_len; l <= max_len; l += cfg.length_step)
            for (std::size_t off = 0; off + l <= m; off += cfg.offset_step)
                candidates.push_back({w, off, l, -1.0, 0.0});

    parallel_for(candidates.size(), cfg.threads, [&](std::size_t i) {
        Scored& c = candidates[i];
        auto view = std::span<const double>(set[c.window_id].series.samples)
                        .subspan(c.offset, c.length);
        DistanceProfile profile = distance_profile(view, set, cfg.znormalize);
        bool constant = true;
        for (const auto& e : profile) {
            if (e.distance != profile[0].distance) {
                constant = false;
                break;
            }
        }
        if (constant)
            return; // flat profile carries no information; leave discarded
        auto [threshold, ig] = best_split(profile, labels);
        if (ig >= cfg.quality_threshold) {
            c.quality = ig;
            c.threshold = threshold;
        }
    });

    // Deterministic reduction: per-window quality sort + similarity pruning,
    // then a global top-n merge.
    std::vector<Scored> merged;
    std::size_t begin = 0;
    for (std::size_t w = 0; w < set.size(); ++w) {
        std::size_t end = begin;
        while (end < candidates.size() && candidates[end].window_id == w) ++end;
        std::vector<Scored> qualified;
        for (std::size_t i = begin; i < end; ++i)
            if (candidates[i].quality >= 0.0) qualified.push_back(candidates[i]);
        begin = end;
        std::sort(qualified.begin(), qualified.end(), scored_before);
        std::vector<Scored> kept = prune_similar(qualified, cfg.similarity_overlap_frac);
        merged.insert(merged.end(), kept.begin(), kept.end());
        std::sort(merged.begin(), merged.end(), scored_before);
        if (merged.size() > cfg.max_shapelets) merged.resize(cfg.max_shapelets);
    }

    std::vector<Shapelet> out;
    out.reserve(merged.size());
    for (const auto& c : merged) {
        Shapelet s;
        const auto& src = set[c.window_id].series.samples;
        s.values.assign(src.begin() + static_cast<std::ptrdiff_t>(c.offset),
                        src.begin() + static_cast<std::ptrdiff_t>(c.offset + c.length));
        s.length = c.length;
        s.quality = c.quality;
        s.split_threshold = c.threshold;
        s.source_window_id = c.window_id;
        s.source_offset = c.offset;
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace eqs
