#include "qumf/datagen.hpp"
#include "qumf/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

using namespace qumf;

namespace {

bool same_points(const std::vector<Point2D> &a, const std::vector<Point2D> &b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                      [](const Point2D &p, const Point2D &q) { return p.x == q.x && p.y == q.y && p.id == q.id; });
}

}  // namespace

TEST_CASE("star generation") {
    SUBCASE("noiseless points lie on their lines") {
        SyntheticSpec spec;
        spec.noise_sigma = 0.0;
        spec.seed = 3;
        const auto synth = generate_star(spec);
        REQUIRE(synth.gt_models.size() == 5);
        for (std::size_t i = 0; i < synth.data.points.size(); ++i) {
            const auto &model = synth.gt_models[static_cast<std::size_t>(synth.data.gt_labels[i])];
            CHECK(residual(model, synth.data.points[i]) <= 1e-12);
            CHECK(synth.data.points[i].id == static_cast<int>(i));
        }
    }
    SUBCASE("even split over the structures") {
        const auto synth = generate_star(SyntheticSpec{});
        std::vector<int> histogram(5, 0);
        for (const int label : synth.data.gt_labels) {
            ++histogram[static_cast<std::size_t>(label)];
        }
        CHECK(histogram == std::vector<int>{50, 50, 50, 50, 50});

        SyntheticSpec ragged;
        ragged.n = 32;
        const auto r = generate_star(ragged);
        std::vector<int> counts(5, 0);
        for (const int label : r.data.gt_labels) {
            ++counts[static_cast<std::size_t>(label)];
        }
        CHECK(*std::max_element(counts.begin(), counts.end()) - *std::min_element(counts.begin(), counts.end()) <= 1);
        CHECK(std::is_sorted(r.data.gt_labels.begin(), r.data.gt_labels.end()));
    }
    SUBCASE("pentagram edges join every second vertex") {
        SyntheticSpec spec;
        spec.noise_sigma = 0.0;
        const auto synth = generate_star(spec);
        for (int i = 0; i < 5; ++i) {
            const double a0 = 2.0 * std::numbers::pi * i / 5.0;
            const double a1 = 2.0 * std::numbers::pi * ((i + 2) % 5) / 5.0;
            const auto &line = synth.gt_models[static_cast<std::size_t>(i)];
            CHECK(residual(line, Point2D{std::cos(a0), std::sin(a0), 0}) <= 1e-12);
            CHECK(residual(line, Point2D{std::cos(a1), std::sin(a1), 0}) <= 1e-12);
            CHECK(line.source_ids().empty());
        }
    }
    SUBCASE("same seed, same points") {
        SyntheticSpec spec;
        spec.seed = 11;
        CHECK(same_points(generate_star(spec).data.points, generate_star(spec).data.points));
        SyntheticSpec other = spec;
        other.seed = 12;
        CHECK_FALSE(same_points(generate_star(spec).data.points, generate_star(other).data.points));
    }
    SUBCASE("invalid specs") {
        CHECK_THROWS_AS((void)generate_star(SyntheticSpec{0, 10, 0.0, 0}), invalid_spec);
        CHECK_THROWS_AS((void)generate_star(SyntheticSpec{5, 9, 0.0, 0}), invalid_spec);
        CHECK_THROWS_AS((void)generate_star(SyntheticSpec{5, 10, -1.0, 0}), invalid_spec);
        CHECK_NOTHROW((void)generate_star(SyntheticSpec{5, 10, 0.0, 0}));
        CHECK_NOTHROW((void)generate_star(SyntheticSpec{1, 2, 0.0, 0}));
        CHECK_NOTHROW((void)generate_star(SyntheticSpec{2, 4, 0.0, 0}));
    }
}

TEST_CASE("hypothesis pool") {
    const auto synth = generate_star(SyntheticSpec{});
    SUBCASE("m = k is exactly the ground truth") {
        HypothesisPoolSpec spec;
        spec.m = 5;
        const auto pool = sample_hypotheses(synth.data.points, synth.gt_models, spec);
        REQUIRE(pool.size() == 5);
        std::set<std::vector<double>> want;
        std::set<std::vector<double>> got;
        for (int i = 0; i < 5; ++i) {
            want.insert(synth.gt_models[static_cast<std::size_t>(i)].param_vector());
            got.insert(pool[static_cast<std::size_t>(i)].param_vector());
        }
        CHECK(got == want);
    }
    SUBCASE("m = 100 holds 95 random lines and the 5 true ones") {
        HypothesisPoolSpec spec;
        spec.seed = 4;
        const auto pool = sample_hypotheses(synth.data.points, synth.gt_models, spec);
        REQUIRE(pool.size() == 100);
        int truth = 0;
        std::set<std::pair<int, int>> samples;
        std::vector<std::size_t> truth_positions;
        for (std::size_t j = 0; j < pool.size(); ++j) {
            const auto &ids = pool[j].source_ids();
            if (ids.empty()) {
                ++truth;
                truth_positions.push_back(j);
                continue;
            }
            REQUIRE(ids.size() == 2);
            CHECK(ids[0] != ids[1]);
            const auto &p = synth.data.points[static_cast<std::size_t>(ids[0])];
            const auto &q = synth.data.points[static_cast<std::size_t>(ids[1])];
            CHECK(residual(pool[j], p) <= 1e-12);
            CHECK(residual(pool[j], q) <= 1e-12);
            samples.insert(std::minmax(ids[0], ids[1]));
        }
        CHECK(truth == 5);
        CHECK(samples.size() == 95);
        CHECK(truth_positions != std::vector<std::size_t>{95, 96, 97, 98, 99});
        CHECK(truth_positions != std::vector<std::size_t>{0, 1, 2, 3, 4});
    }
    SUBCASE("ground truth can be left out") {
        HypothesisPoolSpec spec;
        spec.m = 20;
        spec.include_ground_truth = false;
        for (const auto &h : sample_hypotheses(synth.data.points, synth.gt_models, spec)) {
            CHECK(h.source_ids().size() == 2);
        }
    }
    SUBCASE("too small a pool for the ground truth") {
        HypothesisPoolSpec spec;
        spec.m = 4;
        CHECK_THROWS_AS((void)sample_hypotheses(synth.data.points, synth.gt_models, spec), invalid_spec);
    }
    SUBCASE("coincident points exhaust the redraws") {
        const std::vector<Point2D> same{{0.5, 0.5, 0}, {0.5, 0.5, 1}, {0.5, 0.5, 2}};
        HypothesisPoolSpec spec;
        spec.m = 3;
        spec.include_ground_truth = false;
        CHECK_THROWS_AS((void)sample_hypotheses(same, {}, spec), exhausted_redraws);
    }
}

TEST_SUITE("invariants") {
    TEST_CASE("noiseless generation has zero residual") {
        for (int k = 1; k <= 8; ++k) {
            SyntheticSpec spec{k, 40, 0.0, static_cast<std::uint64_t>(k)};
            const auto synth = generate_star(spec);
            double worst = 0.0;
            for (std::size_t i = 0; i < synth.data.points.size(); ++i) {
                worst = std::max(worst, residual(synth.gt_models[static_cast<std::size_t>(synth.data.gt_labels[i])],
                                                 synth.data.points[i]));
            }
            CHECK(worst <= 1e-12);
        }
    }

    TEST_CASE("an inlier band of four sigma keeps nearly every point") {
        for (const double sigma : {0.001, 0.0025, 0.0075}) {
            std::size_t inliers = 0;
            std::size_t total = 0;
            for (std::uint64_t seed = 0; seed < 20; ++seed) {
                const auto synth = generate_star(SyntheticSpec{5, 250, sigma, seed});
                for (std::size_t i = 0; i < synth.data.points.size(); ++i) {
                    const auto &model = synth.gt_models[static_cast<std::size_t>(synth.data.gt_labels[i])];
                    inliers += residual(model, synth.data.points[i]) < 4.0 * sigma ? 1 : 0;
                    ++total;
                }
            }
            CHECK(static_cast<double>(inliers) >= 0.99 * static_cast<double>(total));
        }
    }

    TEST_CASE("generation and pool are pure functions of the seeds") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto a = generate_star(SyntheticSpec{5, 60, 0.0025, seed});
            const auto b = generate_star(SyntheticSpec{5, 60, 0.0025, seed});
            CHECK(same_points(a.data.points, b.data.points));
            CHECK(a.data.gt_labels == b.data.gt_labels);
            HypothesisPoolSpec spec;
            spec.m = 30;
            spec.seed = seed;
            const auto pa = sample_hypotheses(a.data.points, a.gt_models, spec);
            const auto pb = sample_hypotheses(b.data.points, b.gt_models, spec);
            REQUIRE(pa.size() == pb.size());
            for (std::size_t j = 0; j < pa.size(); ++j) {
                CHECK(pa[j].param_vector() == pb[j].param_vector());
                CHECK(pa[j].source_ids() == pb[j].source_ids());
            }
        }
    }
}
