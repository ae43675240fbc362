#include "eqs/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "eqs/distance.hpp"
#include "eqs/parallel.hpp"

namespace eqs {

void ForestParams::validate() const {
    if (n_trees < 1)
        throw UsageError("forest: n_trees must be >= 1");
    if (min_leaf < 1)
        throw UsageError("forest: min_leaf must be >= 1");
    if (!(decision_threshold > 0.0 && decision_threshold < 1.0))
        throw UsageError("forest: decision_threshold must be in (0, 1)");
}

FeatureVector shapelet_transform(std::span<const Shapelet> shapelets,
                                 const TimeSeries& window, bool znorm) {
    FeatureVector out;
    out.reserve(shapelets.size());
    for (const auto& s : shapelets) {
        if (s.values.size() > window.size())
            throw UsageError("shapelet_transform: shapelet longer than window");
        double d = znorm ? min_subsequence_distance_znorm(s.values, window.view())
                         : min_subsequence_distance(s.values, window.view());
        out.push_back(d);
    }
    return out;
}

FeatureSet shapelet_transform_set(std::span<const Shapelet> shapelets,
                                  const LearningSet& set, bool znorm,
                                  unsigned threads) {
    FeatureSet fs;
    fs.rows.resize(set.size());
    fs.labels = set.labels();
    parallel_for(set.size(), threads, [&](std::size_t i) {
        fs.rows[i] = shapelet_transform(shapelets, set[i].series, znorm);
    });
    return fs;
}

std::vector<std::size_t> choose_features(Rng& rng, std::size_t k, std::size_t count) {
    std::vector<std::size_t> all(k);
    for (std::size_t i = 0; i < k; ++i) all[i] = i;
    if (count > k) count = k;
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.bounded(k - i));
        std::swap(all[i], all[j]);
    }
    all.resize(count);
    return all;
}

namespace {

double gini(std::size_t n_event, std::size_t n_other) {
    const double n = static_cast<double>(n_event + n_other);
    if (n == 0.0) return 0.0;
    double pe = static_cast<double>(n_event) / n;
    double po = static_cast<double>(n_other) / n;
    return 1.0 - pe * pe - po * po;
}

} // namespace

std::optional<SplitChoice> find_best_split(const std::vector<FeatureVector>& features,
                                           std::span<const Label> labels,
                                           std::span<const std::size_t> sample_indices,
                                           std::span<const std::size_t> feature_subset,
                                           std::size_t min_leaf) {
    const std::size_t n = sample_indices.size();
    std::size_t parent_event = 0;
    for (std::size_t idx : sample_indices)
        if (labels[idx] == Label::Event) ++parent_event;
    const std::size_t parent_other = n - parent_event;
    const double parent_gini = gini(parent_event, parent_other);

    std::optional<SplitChoice> best;
    std::vector<std::pair<double, bool>> column(n); // (value, is_event)
    for (std::size_t f : feature_subset) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t idx = sample_indices[i];
            column[i] = {features[idx][f], labels[idx] == Label::Event};
        }
        std::sort(column.begin(), column.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        std::size_t left_event = 0, left_other = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            (column[i].second ? left_event : left_other)++;
            if (column[i].first == column[i + 1].first)
                continue;
            const std::size_t n_left = i + 1;
            const std::size_t n_right = n - n_left;
            if (n_left < min_leaf || n_right < min_leaf)
                continue;
            double weighted =
                (static_cast<double>(n_left) / static_cast<double>(n)) *
                    gini(left_event, left_other) +
                (static_cast<double>(n_right) / static_cast<double>(n)) *
                    gini(parent_event - left_event, parent_other - left_other);
            double decrease = parent_gini - weighted;
            if (!best || decrease > best->gini_decrease) {
                best = SplitChoice{f, (column[i].first + column[i + 1].first) / 2.0,
                                   decrease};
            }
        }
    }
    if (best && best->gini_decrease <= 0.0)
        return std::nullopt;
    return best;
}

namespace {

struct TreeBuilder {
    const std::vector<FeatureVector>& features;
    std::span<const Label> labels;
    Rng& rng;
    std::size_t max_depth;
    std::size_t min_leaf;
    std::size_t n_subset;
    Tree tree;

    int build(std::vector<std::size_t>& indices, std::size_t depth) {
        std::size_t n_event = 0;
        for (std::size_t idx : indices)
            if (labels[idx] == Label::Event) ++n_event;
        const std::size_t n_other = indices.size() - n_event;

        const bool pure = n_event == 0 || n_other == 0;
        const bool can_split = indices.size() >= 2 * min_leaf &&
                               (max_depth == 0 || depth < max_depth) && !pure;

        int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({});
        tree.nodes[node_id].n_event = static_cast<std::uint32_t>(n_event);
        tree.nodes[node_id].n_other = static_cast<std::uint32_t>(n_other);
        if (!can_split)
            return node_id;

        const std::size_t k = features.empty() ? 0 : features[0].size();
        if (k == 0)
            return node_id;
        auto subset = choose_features(rng, k, n_subset);
        auto choice = find_best_split(features, labels, indices, subset, min_leaf);
        if (!choice)
            return node_id;

        std::vector<std::size_t> left_idx, right_idx;
        for (std::size_t idx : indices) {
            if (features[idx][choice->feature] < choice->threshold)
                left_idx.push_back(idx);
            else
                right_idx.push_back(idx);
        }
        indices.clear();
        indices.shrink_to_fit();

        tree.nodes[node_id].feature = static_cast<int>(choice->feature);
        tree.nodes[node_id].threshold = choice->threshold;
        int left = build(left_idx, depth + 1);
        tree.nodes[node_id].left = left;
        int right = build(right_idx, depth + 1);
        tree.nodes[node_id].right = right;
        return node_id;
    }
};

std::size_t sqrt_subset(std::size_t k) {
    if (k == 0) return 0;
    auto r = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(k))));
    return r < 1 ? 1 : r;
}

double tree_prob_event(const Tree& tree, const FeatureVector& x) {
    int node = 0;
    while (tree.nodes[static_cast<std::size_t>(node)].feature >= 0) {
        const TreeNode& nd = tree.nodes[static_cast<std::size_t>(node)];
        node = x[static_cast<std::size_t>(nd.feature)] < nd.threshold ? nd.left : nd.right;
    }
    const TreeNode& leaf = tree.nodes[static_cast<std::size_t>(node)];
    double total = static_cast<double>(leaf.n_event) + static_cast<double>(leaf.n_other);
    return total > 0.0 ? static_cast<double>(leaf.n_event) / total : 0.0;
}

} // namespace

Tree fit_tree(const std::vector<FeatureVector>& features, std::span<const Label> labels,
              Rng& rng, std::size_t max_depth, std::size_t min_leaf) {
    if (features.empty() || features.size() != labels.size())
        throw UsageError("fit_tree: features and labels must align and be non-empty");
    std::vector<std::size_t> indices(features.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    TreeBuilder builder{features, labels, rng, max_depth,
                        min_leaf, sqrt_subset(features[0].size()), Tree{}};
    builder.build(indices, 0);
    return std::move(builder.tree);
}

Forest fit_forest(const std::vector<FeatureVector>& features,
                  std::span<const Label> labels, const ForestParams& params,
                  unsigned threads) {
    params.validate();
    if (features.empty() || features.size() != labels.size())
        throw UsageError("fit_forest: features and labels must align and be non-empty");
    bool has_event = false, has_other = false;
    for (Label l : labels)
        (l == Label::Event ? has_event : has_other) = true;
    if (!has_event || !has_other)
        throw UsageError("fit_forest: both classes must be present");

    const std::size_t n = features.size();
    Forest forest;
    forest.params = params;
    forest.trees.resize(params.n_trees);

    forest.n_features = features[0].size();

    const Rng root(params.seed);
    parallel_for(params.n_trees, threads, [&](std::size_t t) {
        Rng rng = root.derive(t);
        std::vector<Label> sample_labels(n);
        std::vector<FeatureVector> sample_features(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t pick = static_cast<std::size_t>(rng.bounded(n));
            sample_labels[i] = labels[pick];
            sample_features[i] = features[pick];
        }
        forest.trees[t] = fit_tree(sample_features, sample_labels, rng,
                                   params.max_depth, params.min_leaf);
    });
    return forest;
}

Prediction predict_proba(const Forest& forest, const FeatureVector& feature) {
    if (forest.trees.empty())
        throw UsageError("predict: forest has no trees");
    if (feature.size() != forest.n_features)
        throw UsageError("predict: feature dimension mismatch");
    double sum = 0.0;
    for (const auto& tree : forest.trees)
        sum += tree_prob_event(tree, feature);
    double p = sum / static_cast<double>(forest.trees.size());
    Prediction pred;
    pred.prob_event = p;
    pred.prob_other = 1.0 - p;
    pred.label = p >= forest.params.decision_threshold ? Label::Event : Label::Other;
    return pred;
}

Prediction predict_window(const Forest& forest, const TimeSeries& window) {
    return predict_proba(forest,
                         shapelet_transform(forest.shapelets, window, forest.znormalize));
}

EvalMetrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn,
                                std::optional<std::size_t> tn) {
    EvalMetrics m;
    m.tp = tp;
    m.fp = fp;
    m.fn = fn;
    m.tn = tn.value_or(0);
    if (tp + fp > 0)
        m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (tp + fn > 0)
        m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    if (tn.has_value()) {
        std::size_t total = tp + fp + fn + *tn;
        if (total > 0)
            m.accuracy = static_cast<double>(tp + *tn) / static_cast<double>(total);
    }
    return m;
}

EvalMetrics evaluate(const Forest& forest, std::span<const LabeledWindow> windows,
                     unsigned threads) {
    if (windows.empty())
        throw UsageError("evaluate: no windows");
    std::vector<Label> predicted(windows.size());
    parallel_for(windows.size(), threads, [&](std::size_t i) {
        predicted[i] = predict_window(forest, windows[i].series).label;
    });
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        bool actual = windows[i].label == Label::Event;
        bool pred = predicted[i] == Label::Event;
        if (actual && pred) ++tp;
        else if (!actual && pred) ++fp;
        else if (actual && !pred) ++fn;
        else ++tn;
    }
    return metrics_from_counts(tp, fp, fn, tn);
}

} // namespace eqs
