#ifndef EQS_SWEEP_HPP
#define EQS_SWEEP_HPP

#include <vector>

#include "eqs/classifier.hpp"
#include "eqs/discovery.hpp"

namespace eqs {

// For each quality threshold (sorted ascending): rediscover shapelets on the
// training set, fit a forest, score accuracy on the test set, and record the
// shapelet count and wall time. Shapelet counts are non-increasing in the
// threshold because qualifying candidates only shrink.
std::vector<SweepRow> ig_threshold_sweep(const LearningSet& train,
                                         const LearningSet& test,
                                         std::vector<double> thresholds,
                                         const DiscoveryConfig& cfg,
                                         const ForestParams& forest_params);

} // namespace eqs

#endif
