#ifndef EQS_DISTANCE_HPP
#define EQS_DISTANCE_HPP

#include <optional>
#include <span>

#include "eqs/time_series.hpp"

namespace eqs {

// Squared Euclidean distance, sum over (x_i - y_i)^2 accumulated left to
// right in double precision. Raw values, no normalization.
double sq_euclidean(std::span<const double> x, std::span<const double> y);

inline double sq_euclidean(const Subsequence& x, const Subsequence& y) {
    return sq_euclidean(x.view(), y.view());
}

// Minimum squared Euclidean distance between s and any length-|s| slice of t
// (the best matching location). Each alignment is early-abandoned once its
// partial sum exceeds the best total seen so far; completed alignments sum in
// the same order as a naive scan, so the minimum is bit-identical to the
// exhaustive one. When best_so_far is given, alignments are also abandoned
// against it; the result equals the exhaustive minimum whenever that minimum
// is <= best_so_far (otherwise +infinity may be returned).
double min_subsequence_distance(std::span<const double> s,
                                std::span<const double> t,
                                std::optional<double> best_so_far = std::nullopt);

inline double min_subsequence_distance(std::span<const double> s,
                                       const TimeSeries& t,
                                       std::optional<double> best_so_far = std::nullopt) {
    return min_subsequence_distance(s, t.view(), best_so_far);
}

inline double min_subsequence_distance(const Subsequence& s, const TimeSeries& t,
                                       std::optional<double> best_so_far = std::nullopt) {
    return min_subsequence_distance(s.view(), t.view(), best_so_far);
}

// z-normalizes v to zero mean, unit variance; a constant input maps to zeros.
std::vector<double> znormalize(std::span<const double> v);

// Minimum distance with both the query and every aligned slice z-normalized
// before comparison. Opt-in alternative to the raw default.
double min_subsequence_distance_znorm(std::span<const double> s,
                                      std::span<const double> t);

} // namespace eqs

#endif
