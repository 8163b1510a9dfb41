#pragma once

#include "qumf/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace qumf {

/**
 * Binary n x m point-vs-model matrix. Entry (i, j) is 1 when point i lies in
 * the consensus set of model j.
 *
 * The entries are kept twice, row-major and column-major, so that both the
 * preference set of a point and the consensus set of a model are contiguous.
 * A matrix may be built from raw bits without geometry; `models()` is then
 * empty and `points()` is null.
 */
class PreferenceMatrix {
  public:
    PreferenceMatrix() = default;

    /// Takes ownership of `row_major` (size n*m, entries 0 or 1).
    PreferenceMatrix(std::size_t n, std::size_t m, std::vector<std::uint8_t> row_major,
                     std::vector<ModelHypothesis> models = {},
                     std::shared_ptr<const std::vector<Point2D>> points = nullptr,
                     double epsilon = 0.0);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t m() const noexcept { return m_; }
    [[nodiscard]] bool operator()(const std::size_t i, const std::size_t j) const noexcept { return rows_[i * m_ + j] != 0; }

    [[nodiscard]] std::span<const std::uint8_t> row(std::size_t i) const noexcept { return {rows_.data() + i * m_, m_}; }
    [[nodiscard]] std::span<const std::uint8_t> column(std::size_t j) const noexcept { return {cols_.data() + j * n_, n_}; }
    [[nodiscard]] const std::vector<std::uint8_t> &row_major() const noexcept { return rows_; }

    [[nodiscard]] const std::vector<ModelHypothesis> &models() const noexcept { return models_; }
    [[nodiscard]] const std::shared_ptr<const std::vector<Point2D>> &points() const noexcept { return points_; }
    [[nodiscard]] bool has_geometry() const noexcept { return points_ != nullptr && models_.size() == m_; }
    /// Inlier threshold used at construction, 0 for raw matrices.
    [[nodiscard]] double epsilon() const noexcept { return epsilon_; }

    friend bool operator==(const PreferenceMatrix &lhs, const PreferenceMatrix &rhs) noexcept {
        return lhs.n_ == rhs.n_ && lhs.m_ == rhs.m_ && lhs.rows_ == rhs.rows_;
    }

  private:
    std::size_t n_{0};
    std::size_t m_{0};
    std::vector<std::uint8_t> rows_;
    std::vector<std::uint8_t> cols_;
    std::vector<ModelHypothesis> models_;
    std::shared_ptr<const std::vector<Point2D>> points_;
    double epsilon_{0.0};
};

/// P[i, j] = 1 iff residual(models[j], points[i]) < epsilon. Columns are filled in parallel.
[[nodiscard]] PreferenceMatrix build_preference(std::span<const Point2D> points, std::span<const ModelHypothesis> models, double epsilon);

[[nodiscard]] std::size_t consensus_size(const PreferenceMatrix &P, std::size_t j);

/// Keeps the listed columns in the listed order; throws index_out_of_range on bad or duplicate indices.
[[nodiscard]] PreferenceMatrix restrict_columns(const PreferenceMatrix &P, std::span<const int> columns);

/// Columns with an empty consensus set.
[[nodiscard]] std::vector<int> empty_columns(const PreferenceMatrix &P);
/// Rows covered by no column.
[[nodiscard]] std::vector<int> orphan_rows(const PreferenceMatrix &P);

namespace reference {

/// Serial column-by-column construction; kept to check the parallel kernel.
[[nodiscard]] PreferenceMatrix build_preference(std::span<const Point2D> points, std::span<const ModelHypothesis> models, double epsilon);

}  // namespace reference

}  // namespace qumf
