#include "qumf/geometry.hpp"

#include "qumf/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qumf {

namespace {

// Minimal samples whose defining determinant falls below this are rejected.
constexpr double degeneracy_threshold = 1e-12;

LineModel canonical(double a, double b, double c) noexcept {
    if (a < 0.0 || (a == 0.0 && b < 0.0)) {
        a = -a;
        b = -b;
        c = -c;
    }
    return {a, b, c};
}

}  // namespace

std::string_view to_string(const ModelFamily family) noexcept {
    return family == ModelFamily::line ? "line" : "circle";
}

ModelFamily family_from_string(const std::string_view name) {
    if (name == "line") {
        return ModelFamily::line;
    }
    if (name == "circle") {
        return ModelFamily::circle;
    }
    throw data_error("unknown model family '" + std::string(name) + "'");
}

ModelHypothesis::ModelHypothesis(parameters params, std::vector<int> source_ids)
    : params_(params), source_ids_(std::move(source_ids)) {
    if (!source_ids_.empty() && source_ids_.size() != minimal_arity(family())) {
        throw data_error("source sample size does not match the family arity");
    }
}

std::vector<double> ModelHypothesis::param_vector() const {
    if (const auto *line = std::get_if<LineModel>(&params_)) {
        return {line->a, line->b, line->c};
    }
    const auto &circle = std::get<CircleModel>(params_);
    return {circle.cx, circle.cy, circle.r};
}

ModelHypothesis ModelHypothesis::from_param_vector(const ModelFamily family, const std::span<const double> values, std::vector<int> source_ids) {
    if (values.size() != 3) {
        throw data_error("model parameter list must have 3 entries");
    }
    for (const double v : values) {
        if (!std::isfinite(v)) {
            throw data_error("model parameters must be finite");
        }
    }
    if (family == ModelFamily::line) {
        const double norm = std::hypot(values[0], values[1]);
        if (norm < degeneracy_threshold) {
            throw data_error("line normal must be nonzero");
        }
        // Already-unit normals are kept bit for bit so that stored models read back unchanged.
        const double scale = std::abs(norm - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon() ? 1.0 : norm;
        return ModelHypothesis{canonical(values[0] / scale, values[1] / scale, values[2] / scale), std::move(source_ids)};
    }
    if (values[2] <= 0.0) {
        throw data_error("circle radius must be positive");
    }
    return ModelHypothesis{CircleModel{values[0], values[1], values[2]}, std::move(source_ids)};
}

LineModel line_through(const Point2D &p, const Point2D &q) {
    const double dx = q.x - p.x;
    const double dy = q.y - p.y;
    const double len = std::hypot(dx, dy);
    if (!(len >= degeneracy_threshold)) {
        throw degenerate_sample("line sample points coincide");
    }
    // Swapping p and q flips (dx, dy) exactly, and the sums below commute, so
    // both orders produce bit-identical coefficients after canonicalization.
    LineModel m = canonical(-dy / len, dx / len, 0.0);
    m.c = -(m.a * (p.x + q.x) + m.b * (p.y + q.y)) / 2.0;
    return m;
}

CircleModel circle_through(const Point2D &p, const Point2D &q, const Point2D &r) {
    const double bx = q.x - p.x;
    const double by = q.y - p.y;
    const double cx = r.x - p.x;
    const double cy = r.y - p.y;
    const double det = 2.0 * (bx * cy - by * cx);
    if (!(std::abs(det) >= degeneracy_threshold)) {
        throw degenerate_sample("circle sample points are collinear");
    }
    const double b2 = bx * bx + by * by;
    const double c2 = cx * cx + cy * cy;
    const double ux = (cy * b2 - by * c2) / det;
    const double uy = (bx * c2 - cx * b2) / det;
    const double radius = std::hypot(ux, uy);
    if (!std::isfinite(radius) || radius <= 0.0) {
        throw degenerate_sample("circle sample does not determine a finite circle");
    }
    return {p.x + ux, p.y + uy, radius};
}

ModelHypothesis fit_minimal(const ModelFamily family, const std::span<const Point2D> points) {
    if (points.size() != minimal_arity(family)) {
        throw degenerate_sample("minimal sample has the wrong number of points");
    }
    std::vector<int> ids;
    ids.reserve(points.size());
    for (const auto &p : points) {
        ids.push_back(p.id);
    }
    if (family == ModelFamily::line) {
        return ModelHypothesis{line_through(points[0], points[1]), std::move(ids)};
    }
    return ModelHypothesis{circle_through(points[0], points[1], points[2]), std::move(ids)};
}

double residual(const LineModel &model, const Point2D &p) noexcept {
    return std::abs(model.a * p.x + model.b * p.y + model.c);
}

double residual(const CircleModel &model, const Point2D &p) noexcept {
    return std::abs(std::hypot(p.x - model.cx, p.y - model.cy) - model.r);
}

double residual(const ModelHypothesis &model, const Point2D &p) noexcept {
    return std::visit([&p](const auto &m) { return residual(m, p); }, model.params());
}

Point2D RigidTransform::apply(const Point2D &p) const noexcept {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * p.x - s * p.y + tx, s * p.x + c * p.y + ty, p.id};
}

ModelHypothesis RigidTransform::apply(const ModelHypothesis &model) const {
    const double co = std::cos(angle);
    const double si = std::sin(angle);
    if (const auto *line = std::get_if<LineModel>(&model.params())) {
        const double a = co * line->a - si * line->b;
        const double b = si * line->a + co * line->b;
        const double c = line->c - a * tx - b * ty;
        return ModelHypothesis{canonical(a, b, c), model.source_ids()};
    }
    const auto &circle = std::get<CircleModel>(model.params());
    const Point2D center = apply(Point2D{circle.cx, circle.cy, 0});
    return ModelHypothesis{CircleModel{center.x, center.y, circle.r}, model.source_ids()};
}

}  // namespace qumf
