#include "eqs/distance.hpp"

#include <cmath>
#include <limits>

namespace eqs {

double sq_euclidean(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw UsageError("sq_euclidean: length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - y[i];
        sum += d * d;
    }
    return sum;
}

double min_subsequence_distance(std::span<const double> s,
                                std::span<const double> t,
                                std::optional<double> best_so_far) {
    const std::size_t l = s.size();
    const std::size_t m = t.size();
    if (l == 0)
        throw UsageError("min_subsequence_distance: empty query");
    if (l > m)
        throw UsageError("min_subsequence_distance: query longer than series");

    double best = std::numeric_limits<double>::infinity();
    double bound = best_so_far.value_or(best);
    for (std::size_t off = 0; off + l <= m; ++off) {
        double limit = best < bound ? best : bound;
        double sum = 0.0;
        bool abandoned = false;
        for (std::size_t i = 0; i < l; ++i) {
            double d = s[i] - t[off + i];
            sum += d * d;
            if (sum > limit) { // strict: alignments tying the bound complete
                abandoned = true;
                break;
            }
        }
        if (!abandoned && sum < best)
            best = sum;
    }
    return best;
}

std::vector<double> znormalize(std::span<const double> v) {
    const std::size_t n = v.size();
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(n);
    std::vector<double> out(n, 0.0);
    if (var > 0.0) {
        double inv = 1.0 / std::sqrt(var);
        for (std::size_t i = 0; i < n; ++i) out[i] = (v[i] - mean) * inv;
    }
    return out;
}

double min_subsequence_distance_znorm(std::span<const double> s,
                                      std::span<const double> t) {
    const std::size_t l = s.size();
    const std::size_t m = t.size();
    if (l == 0)
        throw UsageError("min_subsequence_distance: empty query");
    if (l > m)
        throw UsageError("min_subsequence_distance: query longer than series");

    std::vector<double> sz = znormalize(s);

    // Running sums give each alignment's mean/stddev in O(1).
    std::vector<double> cum(m + 1, 0.0), cum2(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        cum[i + 1] = cum[i] + t[i];
        cum2[i + 1] = cum2[i] + t[i] * t[i];
    }

    const double nl = static_cast<double>(l);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t off = 0; off + l <= m; ++off) {
        double sum = cum[off + l] - cum[off];
        double sum2 = cum2[off + l] - cum2[off];
        double mean = sum / nl;
        double var = sum2 / nl - mean * mean;
        double d = 0.0;
        if (var > 0.0) {
            double inv = 1.0 / std::sqrt(var);
            for (std::size_t i = 0; i < l; ++i) {
                double w = (t[off + i] - mean) * inv - sz[i];
                d += w * w;
            }
        } else {
            for (std::size_t i = 0; i < l; ++i) d += sz[i] * sz[i];
        }
        if (d < best) best = d;
    }
    return best;
}

} // namespace eqs
