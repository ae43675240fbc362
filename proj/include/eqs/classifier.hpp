#ifndef EQS_CLASSIFIER_HPP
#define EQS_CLASSIFIER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "eqs/discovery.hpp"
#include "eqs/rng.hpp"
#include "eqs/time_series.hpp"

namespace eqs {

// Distance of one window to each shapelet, in shapelet order.
using FeatureVector = std::vector<double>;

// Binary decision node; feature < 0 marks a leaf carrying class counts.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::uint32_t n_event = 0;
    std::uint32_t n_other = 0;
};

struct Tree {
    std::vector<TreeNode> nodes; // root at index 0
};

struct ForestParams {
    std::size_t n_trees = 100;
    std::size_t max_depth = 0; // 0 = unlimited
    std::size_t min_leaf = 1;
    std::uint64_t seed = 0;
    double decision_threshold = 0.5;

    void validate() const;
};

// Bootstrap-trained tree ensemble over shapelet-distance features. Carries
// the shapelets that define its feature space so a bare window can be
// classified directly.
struct Forest {
    std::vector<Tree> trees;
    std::vector<Shapelet> shapelets;
    ForestParams params;
    bool znormalize = false;
    std::size_t n_features = 0;
};

struct Prediction {
    Label label = Label::Other;
    double prob_event = 0.0;
    double prob_other = 1.0;
};

struct EvalMetrics {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    std::optional<double> accuracy;
    std::optional<double> precision;
    std::optional<double> recall;
};

// features[i] = min distance of the window to shapelet i.
FeatureVector shapelet_transform(std::span<const Shapelet> shapelets,
                                 const TimeSeries& window, bool znorm = false);

// One feature / class pair per sample, row-major.
struct FeatureSet {
    std::vector<FeatureVector> rows;
    std::vector<Label> labels;
};

FeatureSet shapelet_transform_set(std::span<const Shapelet> shapelets,
                                  const LearningSet& set, bool znorm = false,
                                  unsigned threads = 1);

// The first `count` entries of a partial Fisher-Yates shuffle of [0, k):
// the per-node feature subset.
std::vector<std::size_t> choose_features(Rng& rng, std::size_t k, std::size_t count);

// Best (feature, midpoint-threshold) by Gini impurity decrease over the
// given feature subset and sample indices. Returns nothing when no split
// improves. Ties keep the earliest feature in subset order, then the
// smaller threshold.
struct SplitChoice {
    std::size_t feature = 0;
    double threshold = 0.0;
    double gini_decrease = 0.0;
};
std::optional<SplitChoice> find_best_split(const std::vector<FeatureVector>& features,
                                           std::span<const Label> labels,
                                           std::span<const std::size_t> sample_indices,
                                           std::span<const std::size_t> feature_subset,
                                           std::size_t min_leaf);

// CART-style tree: each node splits on the best of sqrt(k) randomly chosen
// features; recursion stops on purity, the depth limit, or min_leaf.
Tree fit_tree(const std::vector<FeatureVector>& features, std::span<const Label> labels,
              Rng& rng, std::size_t max_depth, std::size_t min_leaf);

// n_trees trees, each grown on a bootstrap resample drawn from a stream
// derived from (seed, tree index); reproducible for any thread count.
Forest fit_forest(const std::vector<FeatureVector>& features,
                  std::span<const Label> labels, const ForestParams& params,
                  unsigned threads = 1);

// Mean of per-tree leaf class frequencies; Event when prob_event reaches
// the decision threshold.
Prediction predict_proba(const Forest& forest, const FeatureVector& feature);

Prediction predict_window(const Forest& forest, const TimeSeries& window);

// Confusion-count metrics with Event as the positive class. Ratios whose
// denominator is zero are absent; accuracy needs tn to be meaningful.
EvalMetrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn,
                                std::optional<std::size_t> tn = std::nullopt);

EvalMetrics evaluate(const Forest& forest, std::span<const LabeledWindow> windows,
                     unsigned threads = 1);

} // namespace eqs

#endif
