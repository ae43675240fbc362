#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "eqs/distance.hpp"
#include "eqs/rng.hpp"
#include "eqs/time_series.hpp"
#include "support/oracles.hpp"

using namespace eqs;
namespace ts = eqs::testsupport;

namespace {

std::vector<double> random_samples(Rng& rng, std::size_t n, double scale = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = scale * rng.normal();
    return v;
}

} // namespace

TEST_CASE("sq_euclidean basics") {
    std::vector<double> a{1, 2, 3};
    CHECK(sq_euclidean(std::span<const double>(a), std::span<const double>(a)) == 0.0);

    std::vector<double> x{0, 0}, y{3, 4};
    CHECK(sq_euclidean(std::span<const double>(x), std::span<const double>(y)) == 25.0);

    std::vector<double> z{1, 2};
    CHECK_THROWS_AS(sq_euclidean(std::span<const double>(a), std::span<const double>(z)),
                    UsageError);
}

TEST_CASE("sq_euclidean matches the naive oracle and is symmetric") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_samples(rng, 16, 3.0);
        auto b = random_samples(rng, 16, 3.0);
        double xy = sq_euclidean(std::span<const double>(a), std::span<const double>(b));
        double yx = sq_euclidean(std::span<const double>(b), std::span<const double>(a));
        double want = ts::naive_sq_euclidean(a, b);
        CHECK(xy == doctest::Approx(want).epsilon(1e-12));
        CHECK(xy == yx);
        CHECK(xy >= 0.0);
    }
}

TEST_CASE("min_subsequence_distance basics") {
    TimeSeries t({5, 1, 2, 3, 9, 9}, 1.0);
    std::vector<double> slice{1, 2, 3};
    CHECK(min_subsequence_distance(std::span<const double>(slice), t) == 0.0);

    std::vector<double> s{1, 1};
    TimeSeries zeros({0, 0, 0}, 1.0);
    CHECK(min_subsequence_distance(std::span<const double>(s), zeros) == 2.0);

    std::vector<double> longer{1, 2, 3, 4};
    TimeSeries tiny({1, 2}, 1.0);
    CHECK_THROWS_AS(min_subsequence_distance(std::span<const double>(longer), tiny),
                    UsageError);
}

TEST_CASE("early abandoning equals the exhaustive scan on 1000 random pairs") {
    Rng rng(29);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t l = 2 + rng.bounded(63);
        std::size_t m = l + rng.bounded(512 - l + 1);
        auto s = random_samples(rng, l, 2.0);
        auto t = random_samples(rng, m, 2.0);
        double got = min_subsequence_distance(std::span<const double>(s),
                                              std::span<const double>(t));
        CHECK(got == ts::naive_min_distance(s, t));
    }
}

TEST_CASE("best_so_far bound never breaks correctness when the minimum beats it") {
    Rng rng(37);
    for (int trial = 0; trial < 300; ++trial) {
        auto s = random_samples(rng, 8, 1.0);
        auto t = random_samples(rng, 64, 1.0);
        double truth = ts::naive_min_distance(s, t);
        double bound = truth * (1.0 + rng.uniform()); // >= truth
        double got = min_subsequence_distance(std::span<const double>(s),
                                              std::span<const double>(t), bound);
        CHECK(got == truth);
    }
}

TEST_CASE("znormalized distance is translation and scale invariant") {
    Rng rng(43);
    auto s = random_samples(rng, 12, 1.0);
    auto t = random_samples(rng, 80, 1.0);
    double base = min_subsequence_distance_znorm(std::span<const double>(s),
                                                 std::span<const double>(t));
    std::vector<double> shifted = t;
    for (auto& v : shifted) v = 3.0 * v + 42.0;
    double moved = min_subsequence_distance_znorm(std::span<const double>(s),
                                                  std::span<const double>(shifted));
    CHECK(moved == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("enumerate_subsequences counts") {
    TimeSeries big(std::vector<double>(6000, 0.0), 20.0);
    CHECK(enumerate_subsequences(big, 3).count() == 5998);
    CHECK(enumerate_subsequences(big, 6000).count() == 1);

    TimeSeries small(std::vector<double>(10, 0.0), 1.0);
    CHECK(enumerate_subsequences(small, 4).count() == 7);

    CHECK_THROWS_AS(enumerate_subsequences(small, 2), UsageError);
    CHECK_THROWS_AS(enumerate_subsequences(small, 11), UsageError);
}

TEST_CASE("subsequence count law |W| = m - l + 1") {
    Rng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t m = 3 + rng.bounded(400);
        std::size_t l = 3 + rng.bounded(m - 2);
        TimeSeries t(std::vector<double>(m, 1.0), 5.0);
        auto range = enumerate_subsequences(t, l);
        CHECK(range.count() == m - l + 1);
        std::size_t seen = 0;
        std::size_t expect_offset = 0;
        for (const Subsequence& s : range) {
            CHECK(s.offset == expect_offset++);
            CHECK(s.length == l);
            ++seen;
        }
        CHECK(seen == m - l + 1);
    }
}

TEST_CASE("subsequence validation") {
    TimeSeries t({1, 2, 3, 4, 5}, 1.0);
    CHECK_THROWS_AS(Subsequence(t, 0, 2), UsageError);
    CHECK_THROWS_AS(Subsequence(t, 3, 3), UsageError);
    Subsequence ok(t, 1, 3);
    CHECK(ok.view()[0] == 2.0);
}

TEST_CASE("segment splits and drops the remainder") {
    TimeSeries r12(std::vector<double>(12000, 1.0), 20.0);
    auto a = segment(r12, 6000);
    CHECK(a.windows.size() == 2);
    CHECK(a.dropped_samples == 0);

    TimeSeries r13(std::vector<double>(13000, 1.0), 20.0);
    auto b = segment(r13, 6000);
    CHECK(b.windows.size() == 2);
    CHECK(b.dropped_samples == 1000);

    CHECK_THROWS_AS(segment(r12, 0), UsageError);
}

TEST_CASE("segment windows concatenate back to a prefix of the record") {
    Rng rng(61);
    auto samples = random_samples(rng, 1037, 1.0);
    TimeSeries record(samples, 50.0, 123.0);
    auto result = segment(record, 100);
    CHECK(result.windows.size() == 10);
    CHECK(result.dropped_samples == 37);
    std::size_t pos = 0;
    for (const auto& w : result.windows) {
        CHECK(w.sample_rate_hz == 50.0);
        CHECK(w.start_time == doctest::Approx(123.0 + pos / 50.0));
        for (double v : w.samples)
            CHECK(v == samples[pos++]);
    }
}

TEST_CASE("series validation catches bad ingestion") {
    TimeSeries empty;
    CHECK_THROWS_AS(validate_series(empty), DataError);

    TimeSeries nan({1.0, std::numeric_limits<double>::quiet_NaN()}, 1.0);
    CHECK_THROWS_AS(validate_series(nan), DataError);

    TimeSeries bad_rate({1.0}, 0.0);
    CHECK_THROWS_AS(validate_series(bad_rate), DataError);

    TimeSeries fine({1.0, 2.0}, 10.0);
    CHECK_NOTHROW(validate_series(fine));
}

TEST_CASE("learning set enforces uniform windows") {
    std::vector<LabeledWindow> mixed;
    mixed.push_back({TimeSeries({1, 2, 3}, 1.0), Label::Event});
    mixed.push_back({TimeSeries({1, 2}, 1.0), Label::Other});
    CHECK_THROWS_AS(LearningSet(std::move(mixed)), UsageError);

    std::vector<LabeledWindow> rates;
    rates.push_back({TimeSeries({1, 2, 3}, 1.0), Label::Event});
    rates.push_back({TimeSeries({1, 2, 3}, 2.0), Label::Other});
    CHECK_THROWS_AS(LearningSet(std::move(rates)), UsageError);

    CHECK_THROWS_AS(LearningSet(std::vector<LabeledWindow>{}), UsageError);
}
