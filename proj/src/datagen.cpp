#include "qumf/datagen.hpp"

#include "qumf/errors.hpp"
#include "qumf/seed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qumf {

namespace {

struct Segment {
    Point2D from;
    Point2D to;
};

std::vector<Segment> star_segments(const int k) {
    std::vector<Segment> out;
    const auto vertex = [](const double angle) { return Point2D{std::cos(angle), std::sin(angle), 0}; };
    if (k <= 2) {
        for (int i = 0; i < k; ++i) {
            const double angle = std::numbers::pi * i / k;
            out.push_back({vertex(angle), vertex(angle + std::numbers::pi)});
        }
        return out;
    }
    const int step = (k - 1) / 2;
    for (int i = 0; i < k; ++i) {
        out.push_back({vertex(2.0 * std::numbers::pi * i / k), vertex(2.0 * std::numbers::pi * ((i + step) % k) / k)});
    }
    return out;
}

}  // namespace

SyntheticData generate_star(const SyntheticSpec &spec) {
    if (spec.k < 1) {
        throw invalid_spec("k must be at least 1");
    }
    if (spec.n < 2 * spec.k) {
        throw invalid_spec("n must be at least 2k");
    }
    if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma)) {
        throw invalid_spec("noise_sigma must be a nonnegative finite number");
    }

    std::mt19937_64 rng(derive_seed(spec.seed, "data"));
    std::uniform_real_distribution<double> along(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 1.0);

    SyntheticData out;
    const auto segments = star_segments(spec.k);
    for (const auto &seg : segments) {
        out.gt_models.emplace_back(line_through(seg.from, seg.to));
    }

    const int base = spec.n / spec.k;
    const int extra = spec.n % spec.k;
    int id = 0;
    for (int s = 0; s < spec.k; ++s) {
        const auto &seg = segments[static_cast<std::size_t>(s)];
        const int count = base + (s < extra ? 1 : 0);
        for (int c = 0; c < count; ++c) {
            const double t = along(rng);
            double x = seg.from.x + t * (seg.to.x - seg.from.x);
            double y = seg.from.y + t * (seg.to.y - seg.from.y);
            if (spec.noise_sigma > 0.0) {
                x += spec.noise_sigma * noise(rng);
                y += spec.noise_sigma * noise(rng);
            }
            out.data.points.push_back({x, y, id++});
            out.data.gt_labels.push_back(s);
        }
    }
    return out;
}

std::vector<ModelHypothesis> sample_hypotheses(const std::span<const Point2D> points,
                                               const std::span<const ModelHypothesis> gt_models,
                                               const HypothesisPoolSpec &spec) {
    const std::size_t arity = minimal_arity(spec.family);
    const int k = spec.include_ground_truth ? static_cast<int>(gt_models.size()) : 0;
    if (spec.m < 1) {
        throw invalid_spec("pool size m must be at least 1");
    }
    if (spec.m < k) {
        throw invalid_spec("pool size m must be at least the number of ground-truth models");
    }
    const int random_count = spec.m - k;
    if (random_count > 0 && points.size() < arity) {
        throw invalid_spec("not enough points for a minimal sample");
    }

    std::vector<ModelHypothesis> pool;
    pool.reserve(static_cast<std::size_t>(spec.m));
    if (spec.include_ground_truth) {
        pool.insert(pool.end(), gt_models.begin(), gt_models.end());
    }

    std::mt19937_64 rng(derive_seed(spec.seed, "pool"));
    std::vector<Point2D> sample(arity);
    std::vector<std::size_t> picked;
    int failures = 0;
    while (static_cast<int>(pool.size()) < spec.m) {
        // Uniform draw without replacement within the sample.
        picked.clear();
        for (std::size_t a = 0; a < arity; ++a) {
            std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1 - a);
            std::size_t idx = pick(rng);
            // `picked` stays sorted; skip over indices already taken.
            for (const std::size_t prev : picked) {
                if (idx >= prev) {
                    ++idx;
                }
            }
            picked.insert(std::upper_bound(picked.begin(), picked.end(), idx), idx);
            sample[a] = points[idx];
        }
        try {
            pool.push_back(fit_minimal(spec.family, sample));
            failures = 0;
        } catch (const degenerate_sample &) {
            if (++failures >= max_degenerate_redraws) {
                throw exhausted_redraws("too many consecutive degenerate minimal samples");
            }
        }
    }

    std::mt19937_64 shuffle_rng(derive_seed(spec.seed, "shuffle"));
    std::shuffle(pool.begin(), pool.end(), shuffle_rng);
    return pool;
}

}  // namespace qumf
