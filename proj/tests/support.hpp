#pragma once

// Test-only oracles. They evaluate the set-cover objective directly from the
// preference matrix and never go through the library's QUBO or sampler code.

#include "qumf/preference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace qumf::testing {

inline PreferenceMatrix matrix(const std::vector<std::vector<int>> &rows) {
    const std::size_t n = rows.size();
    const std::size_t m = n == 0 ? 0 : rows.front().size();
    std::vector<std::uint8_t> bits;
    for (const auto &r : rows) {
        for (const int v : r) {
            bits.push_back(static_cast<std::uint8_t>(v));
        }
    }
    return PreferenceMatrix{n, m, std::move(bits)};
}

inline PreferenceMatrix random_matrix(std::mt19937_64 &rng, const std::size_t n, const std::size_t m, const double density = 0.3) {
    std::bernoulli_distribution bit(density);
    std::vector<std::uint8_t> bits(n * m);
    for (auto &b : bits) {
        b = bit(rng) ? 1 : 0;
    }
    return PreferenceMatrix{n, m, std::move(bits)};
}

/// count(z) + lambda * ||P z - 1||^2 - lambda * n, evaluated from P.
inline double cover_objective(const PreferenceMatrix &P, const std::vector<std::uint8_t> &z, const double lambda) {
    double value = 0.0;
    for (const auto b : z) {
        value += b;
    }
    for (std::size_t i = 0; i < P.n(); ++i) {
        double covered = 0.0;
        for (std::size_t j = 0; j < P.m(); ++j) {
            covered += P(i, j) && z[j] ? 1.0 : 0.0;
        }
        value += lambda * (covered - 1.0) * (covered - 1.0);
    }
    return value - lambda * static_cast<double>(P.n());
}

inline std::vector<std::uint8_t> bits_of(const std::uint64_t mask, const std::size_t m) {
    std::vector<std::uint8_t> z(m);
    for (std::size_t j = 0; j < m; ++j) {
        z[j] = static_cast<std::uint8_t>((mask >> j) & 1U);
    }
    return z;
}

struct BruteForce {
    double best{std::numeric_limits<double>::infinity()};
    std::size_t optima{0};  ///< number of assignments within 1e-9 of best
    std::vector<std::uint8_t> argmin;
};

inline BruteForce brute_force(const PreferenceMatrix &P, const double lambda) {
    BruteForce out;
    const std::size_t m = P.m();
    std::vector<double> values(std::size_t{1} << m);
    for (std::uint64_t mask = 0; mask < values.size(); ++mask) {
        values[mask] = cover_objective(P, bits_of(mask, m), lambda);
        if (values[mask] < out.best) {
            out.best = values[mask];
            out.argmin = bits_of(mask, m);
        }
    }
    for (const double v : values) {
        out.optima += std::abs(v - out.best) <= 1e-9 ? 1 : 0;
    }
    return out;
}

inline bool is_exact_cover(const PreferenceMatrix &P, const std::vector<int> &selected) {
    for (std::size_t i = 0; i < P.n(); ++i) {
        int covered = 0;
        for (const int j : selected) {
            covered += P(i, static_cast<std::size_t>(j)) ? 1 : 0;
        }
        if (covered != 1) {
            return false;
        }
    }
    return true;
}

/// Largest agreement over every injective relabelling of predicted clusters to ground-truth clusters.
inline std::size_t brute_force_matching(const std::vector<int> &pred, const std::vector<int> &gt) {
    std::vector<int> p_ids;
    std::vector<int> g_ids;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] >= 0) p_ids.push_back(pred[i]);
        if (gt[i] >= 0) g_ids.push_back(gt[i]);
    }
    std::sort(p_ids.begin(), p_ids.end());
    p_ids.erase(std::unique(p_ids.begin(), p_ids.end()), p_ids.end());
    std::sort(g_ids.begin(), g_ids.end());
    g_ids.erase(std::unique(g_ids.begin(), g_ids.end()), g_ids.end());
    // counts[a][b]: points with predicted cluster p_ids[a] and ground truth g_ids[b].
    std::vector<std::vector<std::size_t>> counts(p_ids.size(), std::vector<std::size_t>(g_ids.size(), 0));
    std::size_t outliers_agree = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] < 0 || gt[i] < 0) {
            outliers_agree += pred[i] < 0 && gt[i] < 0 ? 1 : 0;
            continue;
        }
        const auto a = static_cast<std::size_t>(std::lower_bound(p_ids.begin(), p_ids.end(), pred[i]) - p_ids.begin());
        const auto b = static_cast<std::size_t>(std::lower_bound(g_ids.begin(), g_ids.end(), gt[i]) - g_ids.begin());
        ++counts[a][b];
    }
    std::vector<bool> used(g_ids.size(), false);
    std::size_t best = 0;
    // Each predicted cluster goes to an unused ground-truth cluster or stays unmatched.
    auto recurse = [&](auto &self, const std::size_t a, const std::size_t acc) -> void {
        if (a == p_ids.size()) {
            best = std::max(best, acc);
            return;
        }
        self(self, a + 1, acc);
        for (std::size_t b = 0; b < g_ids.size(); ++b) {
            if (!used[b]) {
                used[b] = true;
                self(self, a + 1, acc + counts[a][b]);
                used[b] = false;
            }
        }
    };
    recurse(recurse, 0, 0);
    return best + outliers_agree;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("qumf_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace qumf::testing
