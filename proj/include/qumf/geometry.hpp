#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace qumf {

struct Point2D {
    double x{};
    double y{};
    int id{};
};

/// Normalized implicit line a*x + b*y + c = 0 with a^2 + b^2 = 1.
///
/// Canonical sign: a > 0, or a == 0 and b > 0.
struct LineModel {
    double a{};
    double b{};
    double c{};
};

struct CircleModel {
    double cx{};
    double cy{};
    double r{};
};

enum class ModelFamily { line, circle };

[[nodiscard]] std::string_view to_string(ModelFamily family) noexcept;
[[nodiscard]] ModelFamily family_from_string(std::string_view name);

/// Number of points needed to instantiate one model of the family.
[[nodiscard]] constexpr std::size_t minimal_arity(const ModelFamily family) noexcept {
    return family == ModelFamily::line ? 2 : 3;
}

/**
 * A parametric model instance plus the ids of the points it was fitted to.
 *
 * Hypotheses from random minimal samples always carry exactly
 * `minimal_arity(family())` source ids. Models supplied from outside
 * (ground truth, files) may carry none.
 */
class ModelHypothesis {
  public:
    using parameters = std::variant<LineModel, CircleModel>;

    ModelHypothesis() = default;
    explicit ModelHypothesis(parameters params, std::vector<int> source_ids = {});

    [[nodiscard]] ModelFamily family() const noexcept {
        return std::holds_alternative<LineModel>(params_) ? ModelFamily::line : ModelFamily::circle;
    }
    [[nodiscard]] const parameters &params() const noexcept { return params_; }
    [[nodiscard]] const std::vector<int> &source_ids() const noexcept { return source_ids_; }

    /// Flat parameter list: (a, b, c) for lines, (cx, cy, r) for circles.
    [[nodiscard]] std::vector<double> param_vector() const;
    [[nodiscard]] static ModelHypothesis from_param_vector(ModelFamily family, std::span<const double> values, std::vector<int> source_ids = {});

  private:
    parameters params_{LineModel{1.0, 0.0, 0.0}};
    std::vector<int> source_ids_;
};

/// Line through two points in canonical form; throws degenerate_sample for coincident points.
[[nodiscard]] LineModel line_through(const Point2D &p, const Point2D &q);
/// Circle through three points; throws degenerate_sample for collinear points.
[[nodiscard]] CircleModel circle_through(const Point2D &p, const Point2D &q, const Point2D &r);

/// Instantiates a model from a minimal sample. The point count must equal the family arity.
[[nodiscard]] ModelHypothesis fit_minimal(ModelFamily family, std::span<const Point2D> points);

/// Orthogonal distance for lines, |dist(p, center) - r| for circles.
[[nodiscard]] double residual(const LineModel &model, const Point2D &p) noexcept;
[[nodiscard]] double residual(const CircleModel &model, const Point2D &p) noexcept;
[[nodiscard]] double residual(const ModelHypothesis &model, const Point2D &p) noexcept;

/// Rotation by `angle` followed by translation by (tx, ty).
struct RigidTransform {
    double angle{};
    double tx{};
    double ty{};

    [[nodiscard]] Point2D apply(const Point2D &p) const noexcept;
    [[nodiscard]] ModelHypothesis apply(const ModelHypothesis &model) const;
};

}  // namespace qumf
