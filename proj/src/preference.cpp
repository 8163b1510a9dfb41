#include "qumf/preference.hpp"

#include "qumf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qumf {

namespace {

void check_build_inputs(const std::span<const Point2D> points, const std::span<const ModelHypothesis> models, const double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw data_error("epsilon must be a positive finite number");
    }
    if (points.empty() || models.empty()) {
        throw data_error("preference matrix needs at least one point and one model");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].id != static_cast<int>(i)) {
            throw data_error("point ids must be contiguous from 0 in storage order");
        }
        if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y)) {
            throw data_error("point coordinates must be finite");
        }
    }
}

// Writes column j into the row-major buffer. Distinct columns touch disjoint entries.
void fill_column(const std::span<const Point2D> points, const ModelHypothesis &model, const double epsilon,
                 const std::size_t j, const std::size_t m, std::vector<std::uint8_t> &rows) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        rows[i * m + j] = residual(model, points[i]) < epsilon ? 1 : 0;
    }
}

PreferenceMatrix assemble(const std::span<const Point2D> points, const std::span<const ModelHypothesis> models,
                          const double epsilon, std::vector<std::uint8_t> rows) {
    auto shared = std::make_shared<const std::vector<Point2D>>(points.begin(), points.end());
    return PreferenceMatrix{points.size(), models.size(), std::move(rows),
                            std::vector<ModelHypothesis>(models.begin(), models.end()), std::move(shared), epsilon};
}

}  // namespace

PreferenceMatrix::PreferenceMatrix(const std::size_t n, const std::size_t m, std::vector<std::uint8_t> row_major,
                                   std::vector<ModelHypothesis> models, std::shared_ptr<const std::vector<Point2D>> points,
                                   const double epsilon)
    : n_(n), m_(m), rows_(std::move(row_major)), models_(std::move(models)), points_(std::move(points)), epsilon_(epsilon) {
    if (rows_.size() != n_ * m_) {
        throw dimension_mismatch("preference entries do not match n*m");
    }
    if (!models_.empty() && models_.size() != m_) {
        throw dimension_mismatch("model list length does not match column count");
    }
    if (points_ != nullptr && points_->size() != n_) {
        throw dimension_mismatch("point list length does not match row count");
    }
    cols_.resize(rows_.size());
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < m_; ++j) {
            const std::uint8_t v = rows_[i * m_ + j];
            if (v > 1) {
                throw data_error("preference entries must be 0 or 1");
            }
            cols_[j * n_ + i] = v;
        }
    }
}

PreferenceMatrix build_preference(const std::span<const Point2D> points, const std::span<const ModelHypothesis> models, const double epsilon) {
    check_build_inputs(points, models, epsilon);
    const std::size_t m = models.size();
    std::vector<std::uint8_t> rows(points.size() * m);
    const auto columns = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < columns; ++j) {
        fill_column(points, models[static_cast<std::size_t>(j)], epsilon, static_cast<std::size_t>(j), m, rows);
    }
    return assemble(points, models, epsilon, std::move(rows));
}

namespace reference {

PreferenceMatrix build_preference(const std::span<const Point2D> points, const std::span<const ModelHypothesis> models, const double epsilon) {
    check_build_inputs(points, models, epsilon);
    std::vector<std::uint8_t> rows(points.size() * models.size());
    for (std::size_t j = 0; j < models.size(); ++j) {
        fill_column(points, models[j], epsilon, j, models.size(), rows);
    }
    return assemble(points, models, epsilon, std::move(rows));
}

}  // namespace reference

std::size_t consensus_size(const PreferenceMatrix &P, const std::size_t j) {
    if (j >= P.m()) {
        throw index_out_of_range("column index " + std::to_string(j) + " out of range");
    }
    const auto col = P.column(j);
    return static_cast<std::size_t>(std::count(col.begin(), col.end(), std::uint8_t{1}));
}

PreferenceMatrix restrict_columns(const PreferenceMatrix &P, const std::span<const int> columns) {
    if (columns.empty()) {
        throw index_out_of_range("column restriction needs at least one column");
    }
    std::vector<bool> seen(P.m(), false);
    for (const int j : columns) {
        if (j < 0 || static_cast<std::size_t>(j) >= P.m()) {
            throw index_out_of_range("column index " + std::to_string(j) + " out of range");
        }
        if (seen[static_cast<std::size_t>(j)]) {
            throw index_out_of_range("duplicate column index " + std::to_string(j));
        }
        seen[static_cast<std::size_t>(j)] = true;
    }
    const std::size_t k = columns.size();
    std::vector<std::uint8_t> rows(P.n() * k);
    for (std::size_t i = 0; i < P.n(); ++i) {
        const auto src = P.row(i);
        for (std::size_t c = 0; c < k; ++c) {
            rows[i * k + c] = src[static_cast<std::size_t>(columns[c])];
        }
    }
    std::vector<ModelHypothesis> models;
    if (!P.models().empty()) {
        models.reserve(k);
        for (const int j : columns) {
            models.push_back(P.models()[static_cast<std::size_t>(j)]);
        }
    }
    return PreferenceMatrix{P.n(), k, std::move(rows), std::move(models), P.points(), P.epsilon()};
}

std::vector<int> empty_columns(const PreferenceMatrix &P) {
    std::vector<int> out;
    for (std::size_t j = 0; j < P.m(); ++j) {
        const auto col = P.column(j);
        if (std::none_of(col.begin(), col.end(), [](const std::uint8_t v) { return v != 0; })) {
            out.push_back(static_cast<int>(j));
        }
    }
    return out;
}

std::vector<int> orphan_rows(const PreferenceMatrix &P) {
    std::vector<int> out;
    for (std::size_t i = 0; i < P.n(); ++i) {
        const auto r = P.row(i);
        if (std::none_of(r.begin(), r.end(), [](const std::uint8_t v) { return v != 0; })) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

}  // namespace qumf
