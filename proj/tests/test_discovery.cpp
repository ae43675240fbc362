#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "eqs/discovery.hpp"
#include "eqs/distance.hpp"
#include "eqs/rng.hpp"
#include "eqs/sweep.hpp"
#include "support/oracles.hpp"

using namespace eqs;
namespace ts = eqs::testsupport;

namespace {

DistanceProfile make_profile(const std::vector<double>& distances) {
    DistanceProfile p;
    for (std::size_t i = 0; i < distances.size(); ++i) p.push_back({i, distances[i]});
    return p;
}

// Six event + six noise windows; each event window hides one high-amplitude
// sine burst in fresh noise, so only burst-shaped candidates separate the
// classes.
LearningSet bump_set(double noise_sigma = 0.1) {
    const std::size_t window_len = 80;
    const std::size_t bump_len = 16;
    const double pi = 3.14159265358979323846;
    Rng rng(1234);
    std::vector<LabeledWindow> windows;
    const std::size_t bump_offsets[] = {5, 18, 30, 44, 52, 60};
    for (std::size_t w = 0; w < 6; ++w) {
        std::vector<double> v(window_len);
        for (auto& x : v) x = noise_sigma * rng.normal();
        double amp = 5.0 + 0.5 * static_cast<double>(w);
        for (std::size_t i = 0; i < bump_len; ++i) {
            double tau = static_cast<double>(i) / static_cast<double>(bump_len);
            v[bump_offsets[w] + i] +=
                amp * std::exp(-3.0 * tau) * std::sin(2.0 * pi * 3.0 * tau);
        }
        windows.push_back({TimeSeries(std::move(v), 20.0), Label::Event});
    }
    for (std::size_t w = 0; w < 6; ++w) {
        std::vector<double> v(window_len);
        for (auto& x : v) x = noise_sigma * rng.normal();
        windows.push_back({TimeSeries(std::move(v), 20.0), Label::Other});
    }
    return LearningSet(std::move(windows));
}

DiscoveryConfig bump_config() {
    DiscoveryConfig cfg;
    cfg.min_len = 8;
    cfg.max_len = 24;
    cfg.length_step = 8;
    cfg.offset_step = 4;
    cfg.max_shapelets = 5;
    cfg.quality_threshold = 0.5;
    return cfg;
}

} // namespace

TEST_CASE("entropy values") {
    std::vector<Label> half{Label::Event, Label::Other, Label::Event, Label::Other};
    CHECK(entropy(std::span<const Label>(half)) == 1.0);

    std::vector<Label> pure{Label::Event, Label::Event, Label::Event};
    CHECK(entropy(std::span<const Label>(pure)) == 0.0);

    std::vector<Label> skew{Label::Event, Label::Event, Label::Event, Label::Other};
    CHECK(entropy(std::span<const Label>(skew)) ==
          doctest::Approx(0.8112781244591328).epsilon(1e-12));

    CHECK_THROWS_AS(entropy(std::span<const Label>()), UsageError);
}

TEST_CASE("entropy is invariant under class renaming") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Label> labels, swapped;
        std::size_t n = 1 + rng.bounded(20);
        for (std::size_t i = 0; i < n; ++i) {
            bool e = rng.bounded(2) == 0;
            labels.push_back(e ? Label::Event : Label::Other);
            swapped.push_back(e ? Label::Other : Label::Event);
        }
        CHECK(entropy(std::span<const Label>(labels)) ==
              entropy(std::span<const Label>(swapped)));
    }
}

TEST_CASE("information gain at fixed thresholds") {
    std::vector<Label> labels{Label::Event, Label::Event, Label::Other, Label::Other};
    auto profile = make_profile({1.0, 2.0, 9.0, 10.0});

    CHECK(information_gain(profile, labels, 0.5) == 0.0);  // empty near side
    CHECK(information_gain(profile, labels, 5.5) == 1.0);  // pure halves
    CHECK(information_gain(profile, labels, 2.5) ==
          doctest::Approx(ts::exhaustive_best_split({1, 2, 9, 10},
                                                    {true, true, false, false})
                              .info_gain));
}

TEST_CASE("information gain is invariant under row permutation") {
    Rng rng(17);
    std::vector<Label> labels;
    std::vector<double> dists;
    for (int i = 0; i < 12; ++i) {
        labels.push_back(rng.bounded(2) == 0 ? Label::Event : Label::Other);
        dists.push_back(rng.uniform(0.0, 4.0));
    }
    auto profile = make_profile(dists);
    double base = information_gain(profile, labels, 2.0);
    for (int shuffle = 0; shuffle < 10; ++shuffle) {
        for (std::size_t i = profile.size(); i > 1; --i)
            std::swap(profile[i - 1], profile[rng.bounded(i)]);
        CHECK(information_gain(profile, labels, 2.0) == base);
    }
}

TEST_CASE("best_split on the textbook example") {
    std::vector<Label> labels{Label::Event, Label::Event, Label::Other, Label::Other};
    auto [threshold, ig] = best_split(make_profile({1, 2, 9, 10}), labels);
    CHECK(threshold == 5.5);
    CHECK(ig == 1.0);
}

TEST_CASE("best_split with constant distances") {
    std::vector<Label> labels{Label::Event, Label::Other, Label::Other};
    auto [threshold, ig] = best_split(make_profile({4.0, 4.0, 4.0}), labels);
    CHECK(threshold == 4.0);
    CHECK(ig == 0.0);
}

TEST_CASE("best_split matches the exhaustive midpoint oracle") {
    Rng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng.bounded(30);
        std::vector<double> dists;
        std::vector<bool> events;
        std::vector<Label> labels;
        bool any_event = false, any_other = false;
        for (std::size_t i = 0; i < n; ++i) {
            // Coarse grid forces duplicate distances and IG ties.
            dists.push_back(static_cast<double>(rng.bounded(8)));
            bool e = rng.bounded(2) == 0;
            if (i == 0) e = true;
            if (i == 1) e = false;
            events.push_back(e);
            labels.push_back(e ? Label::Event : Label::Other);
            (e ? any_event : any_other) = true;
        }
        REQUIRE(any_event);
        REQUIRE(any_other);
        auto got = best_split(make_profile(dists), labels);
        auto want = ts::exhaustive_best_split(dists, events);
        CHECK(got.second == want.info_gain);
        CHECK(got.first == want.threshold);
    }
}

TEST_CASE("distance_profile basics") {
    LearningSet set = bump_set();
    const auto& w0 = set[0].series;
    auto candidate = std::span<const double>(w0.samples).subspan(10, 12);

    DistanceProfile profile = distance_profile(candidate, set);
    REQUIRE(profile.size() == set.size());
    CHECK(profile[0].distance == 0.0); // sliced from window 0
    for (std::size_t i = 0; i < profile.size(); ++i) {
        CHECK(profile[i].window_id == i);
        CHECK(profile[i].distance >= 0.0);
        CHECK(profile[i].distance ==
              ts::naive_min_distance(candidate, set[i].series.samples));
    }
}

TEST_CASE("distance_profile accepts a one-window set") {
    std::vector<LabeledWindow> one;
    one.push_back({TimeSeries({1, 2, 3, 4, 5, 6}, 1.0), Label::Event});
    LearningSet set(std::move(one));
    std::vector<double> cand{2, 3, 4};
    auto profile = distance_profile(std::span<const double>(cand), set);
    CHECK(profile.size() == 1);
    CHECK(profile[0].distance == 0.0);
}

TEST_CASE("remove_similar prunes same-window overlaps") {
    auto mk = [](std::size_t window, std::size_t offset, std::size_t len, double q) {
        Shapelet s;
        s.values.assign(len, 0.0);
        s.length = len;
        s.quality = q;
        s.source_window_id = window;
        s.source_offset = offset;
        return s;
    };

    // Two identical candidates: one survives.
    auto dup = remove_similar({mk(0, 10, 50, 0.9), mk(0, 10, 50, 0.9)}, 0.25);
    CHECK(dup.size() == 1);

    // 50% overlap with frac 0.25: second removed.
    auto half = remove_similar({mk(0, 0, 100, 0.9), mk(0, 50, 100, 0.8)}, 0.25);
    CHECK(half.size() == 1);
    CHECK(half[0].source_offset == 0);

    // Same intervals in different windows: both kept.
    auto cross = remove_similar({mk(0, 0, 100, 0.9), mk(1, 0, 100, 0.8)}, 0.25);
    CHECK(cross.size() == 2);

    // Below the overlap fraction: both kept.
    auto light = remove_similar({mk(0, 0, 100, 0.9), mk(0, 80, 100, 0.8)}, 0.25);
    CHECK(light.size() == 2);
}

TEST_CASE("discover finds the injected burst with perfect gain") {
    LearningSet set = bump_set();
    DiscoveryConfig cfg = bump_config();
    std::vector<Shapelet> found = discover(set, cfg);

    REQUIRE(!found.empty());
    CHECK(found.size() <= cfg.max_shapelets);
    CHECK(found[0].quality == 1.0);
    for (const auto& s : found) {
        CHECK(s.quality >= cfg.quality_threshold);
        CHECK(s.quality <= 1.0);
        CHECK(s.split_threshold >= 0.0);
    }

    // The winner must come from an event window and overlap its burst.
    const std::size_t bump_offsets[] = {5, 18, 30, 44, 52, 60};
    const auto& top = found[0];
    REQUIRE(top.source_window_id < 6);
    std::size_t bump_lo = bump_offsets[top.source_window_id];
    std::size_t bump_hi = bump_lo + 16;
    CHECK(top.source_offset < bump_hi);
    CHECK(top.source_offset + top.length > bump_lo);
}

TEST_CASE("discover output is reproducible from its own provenance") {
    LearningSet set = bump_set();
    DiscoveryConfig cfg = bump_config();
    for (const auto& s : discover(set, cfg)) {
        auto profile = distance_profile(std::span<const double>(s.values), set,
                                        cfg.znormalize);
        auto [threshold, ig] = best_split(profile, set.labels());
        CHECK(ig == s.quality);
        CHECK(threshold == s.split_threshold);

        // The stored values are a verbatim slice of the source window.
        const auto& src = set[s.source_window_id].series.samples;
        for (std::size_t i = 0; i < s.length; ++i)
            CHECK(s.values[i] == src[s.source_offset + i]);
    }
}

TEST_CASE("discovery is independent of the worker count") {
    LearningSet set = bump_set();
    DiscoveryConfig serial = bump_config();
    serial.threads = 1;
    DiscoveryConfig parallel = bump_config();
    parallel.threads = 4;

    auto a = discover(set, serial);
    auto b = discover(set, parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].values == b[i].values);
        CHECK(a[i].quality == b[i].quality);
        CHECK(a[i].split_threshold == b[i].split_threshold);
        CHECK(a[i].source_window_id == b[i].source_window_id);
        CHECK(a[i].source_offset == b[i].source_offset);
    }
}

TEST_CASE("discover yields nothing when no candidate can qualify") {
    // Event and Other windows share an identical waveform, so no split is
    // ever perfect and a threshold of 1.0 filters everything out.
    std::vector<double> shared{0, 1, 0, -1, 0, 1, 0, -1, 0, 1};
    std::vector<LabeledWindow> windows;
    windows.push_back({TimeSeries(shared, 1.0), Label::Event});
    windows.push_back({TimeSeries({5, 2, 7, 1, 8, 2, 6, 1, 9, 3}, 1.0), Label::Event});
    windows.push_back({TimeSeries(shared, 1.0), Label::Other});
    LearningSet set(std::move(windows));

    DiscoveryConfig cfg;
    cfg.min_len = 3;
    cfg.max_len = 6;
    cfg.quality_threshold = 1.0;
    CHECK(discover(set, cfg).empty());
}

TEST_CASE("discover rejects a single-class set") {
    std::vector<LabeledWindow> windows;
    windows.push_back({TimeSeries({1, 2, 3, 4}, 1.0), Label::Event});
    windows.push_back({TimeSeries({2, 3, 4, 5}, 1.0), Label::Event});
    LearningSet set(std::move(windows));
    CHECK_THROWS_AS(discover(set, DiscoveryConfig{}), UsageError);
}

TEST_CASE("IG threshold sweep structure") {
    LearningSet train = bump_set();
    LearningSet test = bump_set(0.12); // different noise, same construction

    DiscoveryConfig cfg = bump_config();
    ForestParams fp;
    fp.n_trees = 25;
    fp.seed = 99;

    std::vector<double> thresholds;
    for (int i = 1; i <= 10; ++i) thresholds.push_back(0.05 * i + 0.0);

    auto rows = ig_threshold_sweep(train, test, thresholds, cfg, fp);
    REQUIRE(rows.size() == 10);
    bool perfect_somewhere = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) {
            CHECK(rows[i].ig_threshold > rows[i - 1].ig_threshold);
            CHECK(rows[i].shapelet_count <= rows[i - 1].shapelet_count);
        }
        if (rows[i].test_accuracy == 1.0) perfect_somewhere = true;
        CHECK(rows[i].runtime_seconds >= 0.0);
    }
    CHECK(perfect_somewhere);

    CHECK_THROWS_AS(ig_threshold_sweep(train, test, {}, cfg, fp), UsageError);
}

TEST_CASE("sweep row with zero shapelets degenerates to class priors") {
    // Event and Other share a waveform: no candidate can reach gain 1.0,
    // so a threshold of 1.0 leaves the forest with no features.
    std::vector<double> shared{0, 1, 0, -1, 0, 1, 0, -1, 0, 1};
    std::vector<LabeledWindow> windows;
    windows.push_back({TimeSeries(shared, 1.0), Label::Event});
    windows.push_back({TimeSeries({5, 2, 7, 1, 8, 2, 6, 1, 9, 3}, 1.0), Label::Event});
    windows.push_back({TimeSeries(shared, 1.0), Label::Other});
    LearningSet set(std::move(windows));

    DiscoveryConfig cfg;
    cfg.min_len = 3;
    cfg.max_len = 6;
    ForestParams fp;
    fp.n_trees = 5;
    fp.seed = 1;
    auto rows = ig_threshold_sweep(set, set, {1.0}, cfg, fp);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].shapelet_count == 0);
    CHECK(rows[0].test_accuracy >= 0.0); // prior-only forest still scores
}
