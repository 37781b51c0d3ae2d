#pragma once

// Shared test utilities: portable random series, synthetic OHLCV fixtures,
// and independent reference implementations used as oracles. Everything here
// is deliberately separate from the library code paths it checks.

#include "finseer/ohlcv.hpp"
#include "finseer/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace finseer::test {

// Deterministic standard Gaussian via Box-Muller over the portable uniform
// stream (both draws consumed per sample).
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        double u1;
        do {
            u1 = rng_.uniform01();
        } while (u1 <= 0.0);
        const double u2 = rng_.uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::acos(-1.0) * u2);
    }

    double uniform01() { return rng_.uniform01(); }

private:
    UniformRng rng_;
};

inline std::vector<double> gaussian_series(std::uint64_t seed, std::size_t len) {
    GaussianRng g(seed);
    std::vector<double> out(len);
    for (double& x : out) x = g();
    return out;
}

// Levels of a random walk with AR(1) increments: persistent for phi > 0.
inline std::vector<double> ar1_cumulative(std::uint64_t seed, std::size_t len,
                                          double phi = 0.7) {
    GaussianRng g(seed);
    std::vector<double> out(len);
    double eps = 0, level = 0;
    for (std::size_t i = 0; i < len; ++i) {
        eps = phi * eps + g();
        level += eps;
        out[i] = level;
    }
    return out;
}

// days -> y/m/d for consecutive trading-calendar-agnostic daily dates.
inline Date date_from_serial(long serial) {
    // Days since 1970-01-01 (civil calendar).
    long z = serial + 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long y = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

// Synthetic OHLCV fixture whose open follows an affine map of a persistent
// AR(1) cumulative series into a NASDAQ-like price band. All OHLC invariants
// hold by construction.
inline SeriesDataset make_persistent_fixture(std::uint64_t seed, std::size_t len = 1460,
                                             double phi = 0.7) {
    const std::vector<double> walk = ar1_cumulative(seed, len, phi);
    const auto [lo_it, hi_it] = std::minmax_element(walk.begin(), walk.end());
    const double lo = *lo_it, hi = *hi_it;

    GaussianRng noise(seed ^ 0xD1CEBA5EULL);
    SeriesDataset dataset;
    dataset.symbol = "FIXTURE";
    dataset.records.reserve(len);
    const long base_serial = 14613; // 2010-01-04
    for (std::size_t i = 0; i < len; ++i) {
        const double u = (walk[i] - lo) / (hi - lo);
        OhlcvRecord r;
        r.date = date_from_serial(base_serial + static_cast<long>(i));
        r.open = 2000.0 + 600.0 * u;
        r.close = r.open * (1.0 + 0.004 * noise());
        r.high = std::max(r.open, r.close) * (1.0 + 0.002 * std::fabs(noise()));
        r.low = std::min(r.open, r.close) * (1.0 - 0.002 * std::fabs(noise()));
        r.volume = std::floor(1e6 * (1.0 + 0.3 * noise.uniform01()));
        dataset.records.push_back(r);
    }
    return dataset;
}

// Independent R/S implementation used as the Hurst oracle. Differs from the
// library path on purpose: explicit prefix-sum arrays, two-pass moments and a
// base-10 log-log fit (the slope is base invariant).
inline double reference_rs_hurst(const std::vector<double>& v, const std::vector<int>& sizes) {
    std::vector<double> lx, ly;
    for (int n : sizes) {
        const std::size_t chunks = v.size() / static_cast<std::size_t>(n);
        double total = 0;
        std::size_t used = 0;
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t off = c * static_cast<std::size_t>(n);
            double lo = v[off], hi = v[off];
            double sum = 0;
            for (int i = 0; i < n; ++i) {
                sum += v[off + i];
                lo = std::min(lo, v[off + i]);
                hi = std::max(hi, v[off + i]);
            }
            if (lo == hi) continue;
            const double mean = sum / n;
            double ss = 0;
            for (int i = 0; i < n; ++i) ss += (v[off + i] - mean) * (v[off + i] - mean);
            const double sd = std::sqrt(ss / n);

            std::vector<double> prefix(static_cast<std::size_t>(n));
            double acc = 0;
            for (int i = 0; i < n; ++i) {
                acc += v[off + i] - mean;
                prefix[static_cast<std::size_t>(i)] = acc;
            }
            const double r = *std::max_element(prefix.begin(), prefix.end()) -
                             *std::min_element(prefix.begin(), prefix.end());
            total += r / sd;
            ++used;
        }
        if (used == 0) continue;
        lx.push_back(std::log10(static_cast<double>(n)));
        ly.push_back(std::log10(total / static_cast<double>(used)));
    }
    const double n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

// Minimal independent online-backprop trainer for 2-2-1 sigmoid networks,
// used as the convergence oracle. Flat arrays and its own loops; weights can
// be injected so both implementations start from the same point.
struct ReferenceXorNet {
    // hidden weights [unit][input], hidden bias, output weights, output bias
    double hw[2][2]{}, hb[2]{}, ow[2]{}, ob = 0;

    static double act(double x) { return 1.0 / (1.0 + std::exp(-x)); }

    double forward(double x0, double x1, double h[2]) const {
        h[0] = act(hb[0] + hw[0][0] * x0 + hw[0][1] * x1);
        h[1] = act(hb[1] + hw[1][0] * x0 + hw[1][1] * x1);
        return act(ob + ow[0] * h[0] + ow[1] * h[1]);
    }

    // One online epoch over the four XOR rows; returns mean pre-update error.
    double epoch(double eta) {
        static constexpr double rows[4][3] = {
            {0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
        double err_sum = 0;
        for (const auto& row : rows) {
            double h[2];
            const double o = forward(row[0], row[1], h);
            err_sum += 0.5 * (row[2] - o) * (row[2] - o);
            const double dk = o * (1 - o) * (row[2] - o);
            const double dh0 = h[0] * (1 - h[0]) * ow[0] * dk;
            const double dh1 = h[1] * (1 - h[1]) * ow[1] * dk;
            ow[0] += eta * dk * h[0];
            ow[1] += eta * dk * h[1];
            ob += eta * dk;
            hw[0][0] += eta * dh0 * row[0];
            hw[0][1] += eta * dh0 * row[1];
            hb[0] += eta * dh0;
            hw[1][0] += eta * dh1 * row[0];
            hw[1][1] += eta * dh1 * row[1];
            hb[1] += eta * dh1;
        }
        return err_sum / 4.0;
    }
};

// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        namespace fs = std::filesystem;
        static std::uint64_t counter = 0;
        path_ = fs::temp_directory_path() /
                ("finseer_" + tag + "_" + std::to_string(++counter) + "_" +
                 std::to_string(static_cast<std::uint64_t>(
                     reinterpret_cast<std::uintptr_t>(this))));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::string str(const char* name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

} // namespace finseer::test
