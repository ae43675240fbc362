#include "eqs/sweep.hpp"

#include <algorithm>
#include <chrono>

namespace eqs {

std::vector<SweepRow> ig_threshold_sweep(const LearningSet& train,
                                         const LearningSet& test,
                                         std::vector<double> thresholds,
                                         const DiscoveryConfig& cfg,
                                         const ForestParams& forest_params) {
    if (thresholds.empty())
        throw UsageError("sweep: threshold list is empty");
    std::sort(thresholds.begin(), thresholds.end());

    std::vector<SweepRow> rows;
    rows.reserve(thresholds.size());
    for (double t : thresholds) {
        auto started = std::chrono::steady_clock::now();

        DiscoveryConfig step_cfg = cfg;
        step_cfg.quality_threshold = t;
        std::vector<Shapelet> shapelets = discover(train, step_cfg);

        // With zero shapelets the forest degenerates to class priors; the
        // row still gets an honest accuracy number.
        FeatureSet train_fs =
            shapelet_transform_set(shapelets, train, cfg.znormalize, cfg.threads);
        Forest forest =
            fit_forest(train_fs.rows, train_fs.labels, forest_params, cfg.threads);
        forest.shapelets = shapelets;
        forest.znormalize = cfg.znormalize;

        EvalMetrics m = evaluate(forest, test.windows(), cfg.threads);

        SweepRow row;
        row.ig_threshold = t;
        row.shapelet_count = shapelets.size();
        row.test_accuracy = m.accuracy.value_or(0.0);
        row.runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                .count();
        rows.push_back(row);
    }
    return rows;
}

} // namespace eqs
