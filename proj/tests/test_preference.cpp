#include "qumf/errors.hpp"
#include "qumf/preference.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace qumf;

namespace {

const std::vector<Point2D> two_points{{0, 0, 0}, {0, 5, 1}};
const std::vector<ModelHypothesis> two_axes{ModelHypothesis{LineModel{0, 1, 0}}, ModelHypothesis{LineModel{1, 0, 0}}};

std::vector<Point2D> random_points(std::mt19937_64 &rng, const int n) {
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::vector<Point2D> pts;
    for (int i = 0; i < n; ++i) {
        pts.push_back({coord(rng), coord(rng), i});
    }
    return pts;
}

std::vector<ModelHypothesis> random_lines(std::mt19937_64 &rng, const std::vector<Point2D> &pts, const int m) {
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    std::vector<ModelHypothesis> models;
    while (static_cast<int>(models.size()) < m) {
        const std::size_t a = pick(rng);
        const std::size_t b = pick(rng);
        if (a != b) {
            models.emplace_back(line_through(pts[a], pts[b]), std::vector<int>{pts[a].id, pts[b].id});
        }
    }
    return models;
}

}  // namespace

TEST_CASE("preference entries follow the strict inlier test") {
    const auto P = build_preference(two_points, two_axes, 0.1);
    CHECK(P.n() == 2);
    CHECK(P.m() == 2);
    CHECK(P == testing::matrix({{1, 1}, {0, 1}}));
    CHECK(P.has_geometry());
    CHECK(P.epsilon() == 0.1);

    // residual of (0, 0.5) to the x-axis is exactly 0.5
    const std::vector<Point2D> boundary{{0, 0.5, 0}};
    const std::vector<ModelHypothesis> x_axis{two_axes[0]};
    CHECK_FALSE(build_preference(boundary, x_axis, 0.5)(0, 0));
    CHECK(build_preference(boundary, x_axis, 0.5000001)(0, 0));
    CHECK(build_preference(two_points, x_axis, 1e-300)(0, 0));
}

TEST_CASE("preference construction rejects bad input") {
    CHECK_THROWS_AS((void)build_preference(two_points, two_axes, 0.0), data_error);
    CHECK_THROWS_AS((void)build_preference(two_points, {}, 0.1), data_error);
    const std::vector<Point2D> bad_ids{{0, 0, 1}};
    CHECK_THROWS_AS((void)build_preference(bad_ids, two_axes, 0.1), data_error);
    CHECK_THROWS_AS((PreferenceMatrix{2, 2, {1, 0, 1}}), dimension_mismatch);
    CHECK_THROWS_AS((PreferenceMatrix{1, 1, {2}}), data_error);
}

TEST_CASE("consensus sizes") {
    const auto P = testing::matrix({{1, 1, 0}, {0, 1, 0}});
    CHECK(consensus_size(P, 0) == 1);
    CHECK(consensus_size(P, 1) == 2);
    CHECK(consensus_size(P, 2) == 0);
    CHECK_THROWS_AS((void)consensus_size(P, 3), index_out_of_range);
    CHECK(empty_columns(P) == std::vector<int>{2});
    CHECK(orphan_rows(testing::matrix({{1, 0}, {0, 0}})) == std::vector<int>{1});
}

TEST_CASE("column restriction") {
    const auto P = build_preference(two_points, two_axes, 0.1);
    const std::vector<int> all{0, 1};
    CHECK(restrict_columns(P, all) == P);
    const std::vector<int> second{1};
    const auto R = restrict_columns(P, second);
    CHECK(R == testing::matrix({{1}, {1}}));
    REQUIRE(R.models().size() == 1);
    CHECK(std::get<LineModel>(R.models()[0].params()).a == 1.0);
    CHECK(R.points() == P.points());

    const std::vector<int> reversed{1, 0};
    CHECK(restrict_columns(P, reversed) == testing::matrix({{1, 1}, {1, 0}}));
    CHECK_THROWS_AS((void)restrict_columns(P, std::vector<int>{}), index_out_of_range);
    CHECK_THROWS_AS((void)restrict_columns(P, std::vector<int>{2}), index_out_of_range);
    CHECK_THROWS_AS((void)restrict_columns(P, std::vector<int>{-1}), index_out_of_range);
    CHECK_THROWS_AS((void)restrict_columns(P, std::vector<int>{0, 0}), index_out_of_range);
}

TEST_SUITE("invariants") {
    TEST_CASE("preference construction is deterministic and matches the serial kernel") {
        std::mt19937_64 rng(21);
        for (int trial = 0; trial < 20; ++trial) {
            const auto pts = random_points(rng, 60);
            const auto models = random_lines(rng, pts, 90);
            const auto a = build_preference(pts, models, 0.05);
            const auto b = build_preference(pts, models, 0.05);
            CHECK(a.row_major() == b.row_major());
            CHECK(a == reference::build_preference(pts, models, 0.05));
            for (std::size_t j = 0; j < a.m(); ++j) {
                for (std::size_t i = 0; i < a.n(); ++i) {
                    CHECK(a(i, j) == (residual(models[j], pts[i]) < 0.05));
                    CHECK(a.column(j)[i] == a.row(i)[j]);
                }
            }
        }
    }

    TEST_CASE("preference bits grow monotonically with epsilon") {
        std::mt19937_64 rng(22);
        std::uniform_real_distribution<double> eps(0.001, 0.3);
        for (int trial = 0; trial < 50; ++trial) {
            const auto pts = random_points(rng, 40);
            const auto models = random_lines(rng, pts, 30);
            double e1 = eps(rng);
            double e2 = eps(rng);
            if (e1 > e2) {
                std::swap(e1, e2);
            }
            const auto small = build_preference(pts, models, e1);
            const auto large = build_preference(pts, models, e2);
            for (std::size_t k = 0; k < small.row_major().size(); ++k) {
                CHECK(small.row_major()[k] <= large.row_major()[k]);
            }
        }
    }

    TEST_CASE("restriction to a union equals the union of restrictions") {
        std::mt19937_64 rng(23);
        for (int trial = 0; trial < 100; ++trial) {
            const auto P = testing::random_matrix(rng, 12, 15);
            std::vector<int> perm(15);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            const std::vector<int> j1(perm.begin(), perm.begin() + 5);
            const std::vector<int> j2(perm.begin() + 3, perm.begin() + 10);
            std::set<int> uni(j1.begin(), j1.end());
            uni.insert(j2.begin(), j2.end());
            const std::vector<int> ju(uni.begin(), uni.end());

            const auto columns_of = [&](const PreferenceMatrix &R) {
                std::set<std::vector<std::uint8_t>> cols;
                for (std::size_t j = 0; j < R.m(); ++j) {
                    cols.emplace(R.column(j).begin(), R.column(j).end());
                }
                return cols;
            };
            auto parts = columns_of(restrict_columns(P, j1));
            const auto second = columns_of(restrict_columns(P, j2));
            parts.insert(second.begin(), second.end());
            CHECK(columns_of(restrict_columns(P, ju)) == parts);
            CHECK(restrict_columns(P, ju).m() == ju.size());
        }
    }
}
