#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "eqs/classifier.hpp"
#include "eqs/io.hpp"
#include "eqs/rng.hpp"
#include "eqs/synth.hpp"
#include "support/oracles.hpp"

using namespace eqs;
namespace ts = eqs::testsupport;
namespace fs = std::filesystem;

namespace {

Shapelet make_shapelet(std::vector<double> values) {
    Shapelet s;
    s.length = values.size();
    s.values = std::move(values);
    s.quality = 1.0;
    return s;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("shapelet_transform distances") {
    std::vector<Shapelet> shapelets;
    shapelets.push_back(make_shapelet({1, 2, 3}));
    shapelets.push_back(make_shapelet({9, 9, 9, 9}));

    TimeSeries window({0, 1, 2, 3, 0, 0, 0, 0}, 1.0);
    FeatureVector f = shapelet_transform(shapelets, window);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == 0.0); // verbatim match
    CHECK(f[1] == ts::naive_min_distance(shapelets[1].values, window.samples));

    std::vector<Shapelet> eight(8, make_shapelet({1, 2, 3}));
    CHECK(shapelet_transform(eight, window).size() == 8);

    std::vector<Shapelet> too_long{make_shapelet(std::vector<double>(99, 0.0))};
    CHECK_THROWS_AS(shapelet_transform(too_long, window), UsageError);
}

TEST_CASE("choose_features is a deterministic subset") {
    Rng a(77), b(77);
    auto fa = choose_features(a, 20, 4);
    auto fb = choose_features(b, 20, 4);
    CHECK(fa == fb);
    CHECK(fa.size() == 4);
    std::sort(fa.begin(), fa.end());
    CHECK(std::adjacent_find(fa.begin(), fa.end()) == fa.end()); // distinct
    for (auto f : fa) CHECK(f < 20);

    Rng c(1);
    CHECK(choose_features(c, 3, 10).size() == 3); // clamped to k
}

TEST_CASE("find_best_split agrees with the brute-force Gini oracle") {
    Rng rng(303);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 50, k = 6;
        std::vector<FeatureVector> features(n, FeatureVector(k));
        std::vector<Label> labels(n);
        std::vector<bool> labels_event(n);
        for (std::size_t i = 0; i < n; ++i) {
            bool e = rng.bounded(2) == 0;
            labels[i] = e ? Label::Event : Label::Other;
            labels_event[i] = e;
            for (std::size_t j = 0; j < k; ++j)
                features[i][j] = static_cast<double>(rng.bounded(10)) +
                                 (e ? 0.25 * static_cast<double>(j) : 0.0);
        }
        std::vector<std::size_t> indices(n);
        for (std::size_t i = 0; i < n; ++i) indices[i] = i;
        std::vector<std::size_t> subset{4, 1, 3}; // fixed, order matters for ties

        auto got = find_best_split(features, labels, indices, subset, 1);
        auto want = ts::brute_force_gini_split(features, labels_event, indices, subset, 1);
        REQUIRE(got.has_value() == want.found);
        if (want.found) {
            CHECK(got->feature == want.feature);
            CHECK(got->threshold == want.threshold);
            CHECK(got->gini_decrease == doctest::Approx(want.decrease).epsilon(1e-12));
        }
    }
}

TEST_CASE("fit_tree degenerate cases") {
    Rng rng(9);

    // Single class: one leaf.
    std::vector<FeatureVector> f1{{1.0}, {2.0}, {3.0}};
    std::vector<Label> l1{Label::Other, Label::Other, Label::Other};
    Tree t1 = fit_tree(f1, l1, rng, 0, 1);
    REQUIRE(t1.nodes.size() == 1);
    CHECK(t1.nodes[0].feature == -1);
    CHECK(t1.nodes[0].n_other == 3);

    // Perfectly separable single feature: depth 1, perfect training accuracy.
    std::vector<FeatureVector> f2{{0.1}, {0.2}, {0.3}, {5.1}, {5.2}, {5.3}};
    std::vector<Label> l2{Label::Event, Label::Event, Label::Event,
                          Label::Other, Label::Other, Label::Other};
    Tree t2 = fit_tree(f2, l2, rng, 0, 1);
    REQUIRE(t2.nodes.size() == 3);
    CHECK(t2.nodes[0].feature == 0);
    Forest wrap;
    wrap.trees.push_back(t2);
    wrap.params.decision_threshold = 0.5;
    wrap.n_features = 1;
    for (std::size_t i = 0; i < f2.size(); ++i)
        CHECK(predict_proba(wrap, f2[i]).label == l2[i]);
}

TEST_CASE("fit_forest determinism: same seed, same bytes") {
    Rng rng(55);
    std::vector<FeatureVector> features;
    std::vector<Label> labels;
    for (int i = 0; i < 40; ++i) {
        bool e = i % 2 == 0;
        features.push_back({rng.uniform(0, 4) + (e ? 4.0 : 0.0), rng.uniform(0, 1)});
        labels.push_back(e ? Label::Event : Label::Other);
    }
    ForestParams params;
    params.n_trees = 15;
    params.seed = 4242;

    Forest a = fit_forest(features, labels, params);
    Forest b = fit_forest(features, labels, params);
    Forest c = fit_forest(features, labels, params, 4); // same result in parallel

    auto dir = fs::temp_directory_path() / "eqs_forest_det";
    fs::create_directories(dir);
    write_model_json((dir / "a.json").string(), a);
    write_model_json((dir / "b.json").string(), b);
    write_model_json((dir / "c.json").string(), c);
    CHECK(slurp((dir / "a.json").string()) == slurp((dir / "b.json").string()));
    CHECK(slurp((dir / "a.json").string()) == slurp((dir / "c.json").string()));
    fs::remove_all(dir);
}

TEST_CASE("fit_forest rejects single-class labels") {
    std::vector<FeatureVector> features{{1.0}, {2.0}};
    std::vector<Label> labels{Label::Event, Label::Event};
    ForestParams params;
    params.seed = 1;
    CHECK_THROWS_AS(fit_forest(features, labels, params), UsageError);
}

TEST_CASE("forest separates a held-out synthetic set") {
    SynthConfig cfg;
    cfg.duration_seconds = 10.0;
    cfg.sample_rate_hz = 20.0;
    cfg.noise_sigma = 0.5;
    cfg.event_amplitude_lo = 4.0;
    cfg.event_amplitude_hi = 6.0;
    cfg.wavelet_decay_seconds = 0.5;
    cfg.seed = 7;
    auto [all, truth] = gen_learning_set(cfg, 16, 16);
    auto [train, test] = split_learning_set(all, 0.5, 3);

    // One synthetic "shapelet": a clean wavelet of mid amplitude.
    std::vector<Shapelet> shapelets{
        make_shapelet(event_wavelet(5.0, cfg.wavelet_dominant_hz,
                                    cfg.wavelet_decay_seconds, cfg.sample_rate_hz))};
    FeatureSet fs_train = shapelet_transform_set(shapelets, train);
    ForestParams params;
    params.n_trees = 50;
    params.seed = 11;
    Forest forest = fit_forest(fs_train.rows, fs_train.labels, params);
    forest.shapelets = shapelets;

    EvalMetrics m = evaluate(forest, test.windows());
    REQUIRE(m.accuracy.has_value());
    CHECK(*m.accuracy == 1.0);
}

TEST_CASE("predict_proba semantics") {
    // Two stump trees with known leaves: probabilities are leaf frequencies
    // averaged across trees.
    auto stump = [](double threshold, std::uint32_t le, std::uint32_t lo,
                    std::uint32_t re, std::uint32_t ro) {
        Tree t;
        TreeNode root;
        root.feature = 0;
        root.threshold = threshold;
        root.left = 1;
        root.right = 2;
        root.n_event = le + re;
        root.n_other = lo + ro;
        t.nodes.push_back(root);
        TreeNode l;
        l.n_event = le;
        l.n_other = lo;
        t.nodes.push_back(l);
        TreeNode r;
        r.n_event = re;
        r.n_other = ro;
        t.nodes.push_back(r);
        return t;
    };

    Forest f;
    f.n_features = 1;
    f.params.decision_threshold = 0.5;
    f.trees.push_back(stump(1.0, 3, 1, 0, 4)); // left leaf: 3/4 event
    f.trees.push_back(stump(1.0, 1, 0, 2, 2)); // left leaf: 1/1 event

    Prediction p = predict_proba(f, {0.5}); // routes left in both trees
    CHECK(p.prob_event == doctest::Approx((0.75 + 1.0) / 2.0).epsilon(1e-15));
    CHECK(p.prob_event + p.prob_other == 1.0);
    CHECK(p.label == Label::Event);

    Prediction q = predict_proba(f, {2.0}); // routes right: (0 + 0.5) / 2
    CHECK(q.prob_event == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(q.label == Label::Other);

    // Tree order never matters.
    std::swap(f.trees[0], f.trees[1]);
    CHECK(predict_proba(f, {0.5}).prob_event == p.prob_event);

    CHECK_THROWS_AS(predict_proba(f, {1.0, 2.0}), UsageError);
}

TEST_CASE("all trees voting purely gives probability one") {
    Tree leaf;
    TreeNode n;
    n.n_event = 5;
    n.n_other = 0;
    leaf.nodes.push_back(n);
    Forest f;
    f.n_features = 0;
    f.params.decision_threshold = 0.5;
    f.trees.assign(7, leaf);
    Prediction p = predict_proba(f, {});
    CHECK(p.prob_event == 1.0);
    CHECK(p.label == Label::Event);
}

TEST_CASE("pure-leaf odd forest at threshold 0.5 equals majority vote") {
    auto pure_leaf = [](bool event) {
        Tree t;
        TreeNode n;
        n.n_event = event ? 4 : 0;
        n.n_other = event ? 0 : 4;
        t.nodes.push_back(n);
        return t;
    };
    Forest f;
    f.n_features = 0;
    f.params.decision_threshold = 0.5;
    f.trees = {pure_leaf(true), pure_leaf(true), pure_leaf(false)};
    CHECK(predict_proba(f, {}).label == Label::Event); // 2 of 3 vote Event

    f.trees = {pure_leaf(true), pure_leaf(false), pure_leaf(false)};
    CHECK(predict_proba(f, {}).label == Label::Other);
}

TEST_CASE("dropping a shapelet drops exactly its coordinate") {
    std::vector<Shapelet> shapelets{make_shapelet({1, 2, 3}),
                                    make_shapelet({4, 4, 4, 4}),
                                    make_shapelet({-1, 0, 1})};
    TimeSeries window({0, 1, 2, 3, 4, 4, 4, 4, 0}, 1.0);
    FeatureVector full = shapelet_transform(shapelets, window);

    std::vector<Shapelet> reduced{shapelets[0], shapelets[2]};
    FeatureVector rest = shapelet_transform(reduced, window);
    REQUIRE(rest.size() == 2);
    CHECK(rest[0] == full[0]);
    CHECK(rest[1] == full[2]);
}

TEST_CASE("metrics from confusion counts") {
    EvalMetrics perfect = metrics_from_counts(10, 0, 0, 10);
    CHECK(*perfect.precision == 1.0);
    CHECK(*perfect.recall == 1.0);
    CHECK(*perfect.accuracy == 1.0);

    // 281 true positives, 11 false positives, 7 false negatives.
    EvalMetrics skewed = metrics_from_counts(281, 11, 7);
    CHECK(*skewed.precision == doctest::Approx(0.962).epsilon(0.0011));
    CHECK(*skewed.recall == doctest::Approx(0.976).epsilon(0.0011));
    CHECK(!skewed.accuracy.has_value()); // tn unknown

    EvalMetrics one_wrong = metrics_from_counts(2, 1, 0, 1);
    CHECK(*one_wrong.accuracy == 0.75);

    EvalMetrics degenerate = metrics_from_counts(0, 0, 0, 4);
    CHECK(!degenerate.precision.has_value());
    CHECK(!degenerate.recall.has_value());
    CHECK(*degenerate.accuracy == 1.0);
}

TEST_CASE("evaluate counts the confusion matrix") {
    std::vector<Shapelet> shapelets{make_shapelet({10, 10, 10})};
    std::vector<FeatureVector> features{{0.0}, {0.1}, {300.0}, {310.0}};
    std::vector<Label> labels{Label::Event, Label::Event, Label::Other, Label::Other};
    ForestParams params;
    params.n_trees = 9;
    params.seed = 2;
    Forest forest = fit_forest(features, labels, params);
    forest.shapelets = shapelets;

    std::vector<LabeledWindow> windows;
    windows.push_back({TimeSeries({10, 10, 10, 0}, 1.0), Label::Event}); // near
    windows.push_back({TimeSeries({0, 0, 0, 0}, 1.0), Label::Other});    // far
    EvalMetrics m = evaluate(forest, windows);
    CHECK(m.tp == 1);
    CHECK(m.tn == 1);
    CHECK(m.fp == 0);
    CHECK(m.fn == 0);
    CHECK(*m.accuracy == 1.0);

    CHECK_THROWS_AS(evaluate(forest, std::span<const LabeledWindow>()), UsageError);
}
