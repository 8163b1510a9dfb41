#pragma once

#include "qumf/geometry.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qumf {

/// Points plus optional per-point ground-truth structure labels (-1 marks an outlier).
struct Dataset {
    std::vector<Point2D> points;
    std::vector<int> gt_labels;
};

struct SyntheticSpec {
    int k{5};
    int n{250};
    double noise_sigma{0.0025};
    std::uint64_t seed{0};
};

/// Inlier threshold paired with the default noise level.
inline constexpr double default_epsilon = 0.01;

struct SyntheticData {
    Dataset data;
    std::vector<ModelHypothesis> gt_models;  ///< gt_models[l] generated the points labelled l
};

/**
 * Star-polygon line structures on the unit circle.
 *
 * For k >= 3 structure i is the segment from vertex i to vertex
 * i + (k - 1) / 2 (mod k), vertices at angles 2*pi*i/k; k = 5 gives the
 * pentagram. For k <= 2 the structures are diameters at angles pi*i/k.
 * Points are spread as evenly as possible over the structures, placed
 * uniformly along each segment and perturbed by isotropic Gaussian noise.
 * Points are stored grouped by structure.
 */
[[nodiscard]] SyntheticData generate_star(const SyntheticSpec &spec);

struct HypothesisPoolSpec {
    int m{100};
    bool include_ground_truth{true};
    std::uint64_t seed{0};
    ModelFamily family{ModelFamily::line};
};

/// Consecutive degenerate draws tolerated before giving up.
inline constexpr int max_degenerate_redraws = 1000;

/**
 * RANSAC-style pool: random minimal samples from the whole point set,
 * optionally together with the ground-truth models, in seeded random order.
 */
[[nodiscard]] std::vector<ModelHypothesis> sample_hypotheses(std::span<const Point2D> points,
                                                             std::span<const ModelHypothesis> gt_models,
                                                             const HypothesisPoolSpec &spec);

}  // namespace qumf
