#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finseer/errors.hpp"
#include "finseer/hurst.hpp"
#include "finseer/normalize.hpp"
#include "finseer/windows.hpp"

#include "support/helpers.hpp"

#include <cmath>
#include <vector>

using namespace finseer;

TEST_CASE("default window sizes are powers of two from 16 to len/4") {
    CHECK(default_window_sizes(1460) == std::vector<int>{16, 32, 64, 128, 256});
    CHECK(default_window_sizes(4096) == std::vector<int>{16, 32, 64, 128, 256, 512, 1024});
    CHECK(default_window_sizes(60).empty());
}

TEST_CASE("rs_hurst matches the independent reference implementation") {
    const std::vector<int> sizes{16, 32, 64, 128, 256};
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto noise = test::gaussian_series(seed, 2048);
        const HurstResult mine = rs_hurst(noise, sizes);
        const double ref = test::reference_rs_hurst(noise, sizes);
        CHECK(mine.h == doctest::Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("white noise is classified random (seed 42)") {
    const auto noise = test::gaussian_series(42, 4096);
    const HurstResult result = rs_hurst(noise, {16, 32, 64, 128, 256});
    CHECK(result.h > 0.40);
    CHECK(result.h < 0.60);
    CHECK(result.classification == HurstResult::Class::random);
    CHECK(result.points.size() == 5);
    for (std::size_t i = 1; i < result.points.size(); ++i) {
        CHECK(result.points[i].first > result.points[i - 1].first);
    }
}

TEST_CASE("a linear ramp is strongly persistent") {
    std::vector<double> ramp(2048);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = 0.73 * static_cast<double>(i);
    const HurstResult result = rs_hurst(ramp, default_window_sizes(ramp.size()));
    CHECK(result.h >= 0.9);
    CHECK(result.classification == HurstResult::Class::persistent);
    CHECK(result.h == doctest::Approx(test::reference_rs_hurst(
                          ramp, default_window_sizes(ramp.size()))).epsilon(1e-9));
}

TEST_CASE("constant series raises a degenerate error") {
    const std::vector<double> flat(1024, 3.25);
    CHECK_THROWS_AS(rs_hurst(flat, {16, 32, 64}), DegenerateError);
}

TEST_CASE("rs_hurst validates its inputs") {
    const auto noise = test::gaussian_series(5, 100);
    CHECK_THROWS_AS(rs_hurst(noise, {16, 32}), ParameterError);       // too few sizes
    CHECK_THROWS_AS(rs_hurst(noise, {4, 16, 32}), ParameterError);    // size < 8
    CHECK_THROWS_AS(rs_hurst(noise, {16, 32, 64}), LengthError);      // series too short
}

TEST_CASE("classification trichotomy follows the band") {
    const auto noise = test::gaussian_series(7, 1024);
    auto result = rs_hurst(noise, {16, 32, 64});
    // Band wide enough that any estimate is "random"; then force the others.
    result = rs_hurst(noise, {16, 32, 64}, 10.0);
    CHECK(result.classification == HurstResult::Class::random);

    std::vector<double> ramp(1024);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i);
    CHECK(rs_hurst(ramp, {16, 32, 64}, 0.05).classification ==
          HurstResult::Class::persistent);
}

TEST_CASE("screen_predictability is strict at 0.5") {
    HurstResult r;
    r.h = 0.7;
    CHECK(screen_predictability(r));
    r.h = 0.5;
    CHECK_FALSE(screen_predictability(r));
    r.h = 0.3;
    CHECK_FALSE(screen_predictability(r));
}

TEST_CASE("fit_normalizer captures per-feature extremes") {
    SeriesDataset ds;
    ds.records.push_back({Date{2010, 1, 4}, 2102.5, 2110.0, 2100.0, 2105.0, 900000});
    ds.records.push_back({Date{2010, 1, 5}, 2200.0, 2210.0, 2190.0, 2205.0, 1100000});
    ds.records.push_back({Date{2010, 1, 6}, 2528.5, 2530.0, 2500.0, 2510.0, 1000000});

    const Normalizer n = fit_normalizer(ds);
    const auto open = static_cast<std::size_t>(Feature::open);
    CHECK(n.min[open] == 2102.5);
    CHECK(n.max[open] == 2528.5);
    CHECK(n.lo == 0.1);
    CHECK(n.hi == 0.9);
    const auto vol = static_cast<std::size_t>(Feature::volume);
    CHECK(n.min[vol] == 900000);
    CHECK(n.max[vol] == 1100000);
}

TEST_CASE("fit_normalizer rejects degenerate features") {
    SeriesDataset single;
    single.records.push_back({Date{2010, 1, 4}, 10, 11, 9, 10, 100});
    CHECK_THROWS_AS(fit_normalizer(single), DegenerateError);

    SeriesDataset ds = test::make_persistent_fixture(13, 20);
    for (auto& r : ds.records) r.volume = 5000;
    CHECK_THROWS_WITH_AS(fit_normalizer(ds), doctest::Contains("volume"), DegenerateError);

    CHECK_THROWS_AS(fit_normalizer(SeriesDataset{}), ParameterError);
    CHECK_THROWS_AS(fit_normalizer(test::make_persistent_fixture(1, 20), 0.9, 0.1),
                    ParameterError);
}

TEST_CASE("normalize maps extremes onto the output range") {
    const SeriesDataset ds = test::make_persistent_fixture(17, 64);
    const Normalizer n = fit_normalizer(ds);
    const auto open = static_cast<std::size_t>(Feature::open);
    CHECK(normalize(n, Feature::open, n.min[open]) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(normalize(n, Feature::open, n.max[open]) == doctest::Approx(0.9).epsilon(1e-12));
    const double mid = (n.min[open] + n.max[open]) / 2;
    CHECK(normalize(n, Feature::open, mid) == doctest::Approx(0.5).epsilon(1e-12));
    // No clamping outside the fitted range.
    CHECK(normalize(n, Feature::open, n.max[open] * 2) > 0.9);
    CHECK(normalize(n, Feature::open, n.min[open] / 2) < 0.1);
}

TEST_CASE("build_windows pairs day t with day t+lead") {
    const SeriesDataset ds = test::make_persistent_fixture(21, 1460);
    const Normalizer n = fit_normalizer(ds);

    const SupervisedWindowSet w = build_windows(ds, n, 730);
    CHECK(w.size() == 730);
    CHECK(w.split_index == 584);
    for (std::size_t i : {std::size_t{0}, std::size_t{400}, std::size_t{729}}) {
        CHECK(w.raw_targets[i] == ds.records[i + 730].open); // exact by construction
        CHECK(w.inputs[i][0] ==
              normalize(n, Feature::open, ds.records[i].open));
    }

    SeriesDataset small = ds;
    small.records.resize(731);
    CHECK(build_windows(small, n, 730).size() == 1);
    small.records.resize(730);
    CHECK_THROWS_AS(build_windows(small, n, 730), LengthError);
    CHECK_THROWS_AS(build_windows(ds, n, 0), ParameterError);
}

TEST_CASE("split is a chronological partition") {
    const SeriesDataset ds = test::make_persistent_fixture(23, 1460);
    const Normalizer n = fit_normalizer(ds);
    const SupervisedWindowSet w = build_windows(ds, n, 730);

    const SplitViews views = split(w, 0.8);
    CHECK(views.train.size() == 584);
    CHECK(views.test.size() == 146);
    CHECK(views.train.first == 0);
    CHECK(views.train.last == views.test.first);
    CHECK(views.test.last == w.size());

    const SupervisedWindowSet tiny = build_windows(ds, n, 1455); // 5 pairs
    const SplitViews tiny_views = split(tiny, 0.9);
    CHECK(tiny_views.train.size() == 4);
    CHECK(tiny_views.test.size() == 1);

    const SupervisedWindowSet one = build_windows(ds, n, 1459); // 1 pair
    CHECK_THROWS_AS(split(one, 0.5), SplitError);
    CHECK_THROWS_AS(split(w, 0.0), ParameterError);
    CHECK_THROWS_AS(split(w, 1.0), ParameterError);
}

TEST_CASE("delay_window pads the sequence start by repeating the first row") {
    const SeriesDataset ds = test::make_persistent_fixture(29, 40);
    const Normalizer n = fit_normalizer(ds);
    const SupervisedWindowSet w = build_windows(ds, n, 1);

    const auto at_start = delay_window(w, 0, 3);
    REQUIRE(at_start.size() == 3);
    CHECK(at_start[0] == w.inputs[0]);
    CHECK(at_start[1] == w.inputs[0]);
    CHECK(at_start[2] == w.inputs[0]);

    const auto mid = delay_window(w, 10, 3);
    CHECK(mid[0] == w.inputs[8]);
    CHECK(mid[1] == w.inputs[9]);
    CHECK(mid[2] == w.inputs[10]);
}
