#pragma once

#include "qumf/preference.hpp"
#include "qumf/solver.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace qumf {

/// Per-point cluster ids; -1 means unassigned. Cluster c belongs to model cluster_models[c].
struct Labeling {
    std::vector<int> labels;
    std::vector<int> cluster_models;
};

struct EvalReport {
    double misclassification_error{};  ///< percent of points wrongly labelled, in [0, 100]
    std::size_t n{0};
    std::size_t matched{0};                       ///< correctly labelled points under the matching
    std::vector<std::pair<int, int>> matched_pairs;  ///< (predicted cluster, ground-truth cluster)
    std::vector<int> pred_clusters;               ///< confusion row labels
    std::vector<int> gt_clusters;                 ///< confusion column labels
    std::vector<std::vector<std::size_t>> confusion;
};

/**
 * Assigns every point to the selected model covering it. Points covered by
 * several selected models go to the one with the smallest residual (ties and
 * geometry-free matrices: lowest model index). Uncovered points get -1.
 */
[[nodiscard]] Labeling label_points(const PreferenceMatrix &P, const ModelSelection &sel);

/**
 * Misclassification error under the one-to-one cluster matching that
 * maximizes agreement. Predicted -1 is never matched to a cluster; it only
 * counts as correct where the ground truth is also -1.
 */
[[nodiscard]] EvalReport misclassification(std::span<const int> predicted, std::span<const int> gt_labels);
[[nodiscard]] EvalReport misclassification(const Labeling &predicted, std::span<const int> gt_labels);

/// Percent of points whose inlier/outlier status disagrees with the ground-truth inlier set.
[[nodiscard]] double single_model_error(std::span<const int> inliers, std::span<const int> outliers, std::span<const int> gt_inlier_ids);

/// Maximum-weight one-to-one assignment (Hungarian method). Result[r] is the column matched to row r, or -1.
[[nodiscard]] std::vector<int> max_weight_assignment(const std::vector<std::vector<double>> &weights);

}  // namespace qumf
