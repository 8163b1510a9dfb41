#include "qumf/eval.hpp"

#include "qumf/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace qumf {

Labeling label_points(const PreferenceMatrix &P, const ModelSelection &sel) {
    Labeling out;
    out.labels.assign(P.n(), -1);
    std::vector<int> models = sel.selected;
    std::sort(models.begin(), models.end());
    for (const int j : models) {
        if (j < 0 || static_cast<std::size_t>(j) >= P.m()) {
            throw index_out_of_range("selected model index out of range");
        }
    }
    out.cluster_models = models;

    const bool geometric = P.has_geometry();
    for (std::size_t i = 0; i < P.n(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < models.size(); ++c) {
            const auto j = static_cast<std::size_t>(models[c]);
            if (!P(i, j)) {
                continue;
            }
            const double r = geometric ? residual(P.models()[j], (*P.points())[i]) : 0.0;
            if (out.labels[i] < 0 || r < best) {
                out.labels[i] = static_cast<int>(c);
                best = r;
            }
        }
    }
    return out;
}

std::vector<int> max_weight_assignment(const std::vector<std::vector<double>> &weights) {
    const std::size_t rows = weights.size();
    const std::size_t cols = rows == 0 ? 0 : weights.front().size();
    if (rows == 0 || cols == 0) {
        return std::vector<int>(rows, -1);
    }
    for (const auto &r : weights) {
        if (r.size() != cols) {
            throw dimension_mismatch("weight matrix rows differ in length");
        }
    }
    // Square minimization problem on a zero-padded matrix.
    const std::size_t size = std::max(rows, cols);
    double top = 0.0;
    for (const auto &r : weights) {
        for (const double w : r) {
            top = std::max(top, w);
        }
    }
    const auto cost = [&](const std::size_t r, const std::size_t c) {
        return (r < rows && c < cols) ? top - weights[r][c] : top;
    };

    // Potentials-based Hungarian method, 1-based with a virtual column 0.
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(size + 1, 0.0);
    std::vector<double> v(size + 1, 0.0);
    std::vector<std::size_t> match(size + 1, 0);  // match[col] = row
    std::vector<std::size_t> way(size + 1, 0);
    for (std::size_t r = 1; r <= size; ++r) {
        match[0] = r;
        std::size_t col0 = 0;
        std::vector<double> minv(size + 1, inf);
        std::vector<bool> used(size + 1, false);
        do {
            used[col0] = true;
            const std::size_t r0 = match[col0];
            double delta = inf;
            std::size_t col1 = 0;
            for (std::size_t c = 1; c <= size; ++c) {
                if (used[c]) {
                    continue;
                }
                const double cur = cost(r0 - 1, c - 1) - u[r0] - v[c];
                if (cur < minv[c]) {
                    minv[c] = cur;
                    way[c] = col0;
                }
                if (minv[c] < delta) {
                    delta = minv[c];
                    col1 = c;
                }
            }
            for (std::size_t c = 0; c <= size; ++c) {
                if (used[c]) {
                    u[match[c]] += delta;
                    v[c] -= delta;
                } else {
                    minv[c] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        do {
            const std::size_t col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }

    std::vector<int> out(rows, -1);
    for (std::size_t c = 1; c <= size; ++c) {
        const std::size_t r = match[c] - 1;
        if (r < rows && c - 1 < cols) {
            out[r] = static_cast<int>(c - 1);
        }
    }
    return out;
}

EvalReport misclassification(const std::span<const int> predicted, const std::span<const int> gt_labels) {
    if (predicted.size() != gt_labels.size()) {
        throw length_mismatch("predicted and ground-truth labelings differ in length");
    }
    if (predicted.empty()) {
        throw length_mismatch("labelings must not be empty");
    }

    EvalReport report;
    report.n = predicted.size();
    std::map<int, std::size_t> pred_index;
    std::map<int, std::size_t> gt_index;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i] >= 0) {
            pred_index.emplace(predicted[i], 0);
        }
        if (gt_labels[i] >= 0) {
            gt_index.emplace(gt_labels[i], 0);
        }
    }
    for (auto &[label, idx] : pred_index) {
        idx = report.pred_clusters.size();
        report.pred_clusters.push_back(label);
    }
    for (auto &[label, idx] : gt_index) {
        idx = report.gt_clusters.size();
        report.gt_clusters.push_back(label);
    }

    report.confusion.assign(report.pred_clusters.size(), std::vector<std::size_t>(report.gt_clusters.size(), 0));
    std::size_t outliers_agree = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const int p = predicted[i];
        const int g = gt_labels[i];
        if (p >= 0 && g >= 0) {
            ++report.confusion[pred_index.at(p)][gt_index.at(g)];
        } else if (p < 0 && g < 0) {
            ++outliers_agree;
        }
    }

    std::vector<std::vector<double>> weights(report.pred_clusters.size(), std::vector<double>(report.gt_clusters.size()));
    for (std::size_t r = 0; r < weights.size(); ++r) {
        for (std::size_t c = 0; c < weights[r].size(); ++c) {
            weights[r][c] = static_cast<double>(report.confusion[r][c]);
        }
    }
    const std::vector<int> assignment = max_weight_assignment(weights);
    report.matched = outliers_agree;
    for (std::size_t r = 0; r < assignment.size(); ++r) {
        if (assignment[r] < 0) {
            continue;
        }
        const auto c = static_cast<std::size_t>(assignment[r]);
        if (report.confusion[r][c] > 0) {
            report.matched_pairs.emplace_back(report.pred_clusters[r], report.gt_clusters[c]);
            report.matched += report.confusion[r][c];
        }
    }
    report.misclassification_error = 100.0 * static_cast<double>(report.n - report.matched) / static_cast<double>(report.n);
    return report;
}

EvalReport misclassification(const Labeling &predicted, const std::span<const int> gt_labels) {
    return misclassification(std::span<const int>(predicted.labels), gt_labels);
}

double single_model_error(const std::span<const int> inliers, const std::span<const int> outliers, const std::span<const int> gt_inlier_ids) {
    const std::size_t n = inliers.size() + outliers.size();
    if (n == 0) {
        throw length_mismatch("no points to classify");
    }
    std::vector<int> predicted(n, -1);  // 1 inlier, 0 outlier
    const auto mark = [&](const std::span<const int> ids, const int value) {
        for (const int id : ids) {
            if (id < 0 || static_cast<std::size_t>(id) >= n || predicted[static_cast<std::size_t>(id)] != -1) {
                throw length_mismatch("inliers and outliers must partition the point ids 0..n-1");
            }
            predicted[static_cast<std::size_t>(id)] = value;
        }
    };
    mark(inliers, 1);
    mark(outliers, 0);

    std::vector<int> truth(n, 0);
    for (const int id : gt_inlier_ids) {
        if (id < 0 || static_cast<std::size_t>(id) >= n) {
            throw length_mismatch("ground-truth inlier id out of range");
        }
        truth[static_cast<std::size_t>(id)] = 1;
    }
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < n; ++i) {
        wrong += predicted[i] != truth[i] ? 1 : 0;
    }
    return 100.0 * static_cast<double>(wrong) / static_cast<double>(n);
}

}  // namespace qumf
