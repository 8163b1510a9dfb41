#include "qumf/experiment.hpp"

#include "qumf/errors.hpp"
#include "qumf/preference.hpp"
#include "qumf/seed.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace qumf {

TrialResult run_star_trial(TrialSpec spec, const std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    spec.data.seed = seed;
    const SyntheticData synth = generate_star(spec.data);

    HypothesisPoolSpec pool_spec;
    pool_spec.m = spec.m;
    pool_spec.include_ground_truth = spec.include_ground_truth;
    pool_spec.seed = seed;
    const auto pool = sample_hypotheses(synth.data.points, synth.gt_models, pool_spec);

    const PreferenceMatrix P = build_preference(synth.data.points, pool, spec.epsilon);
    spec.solve.anneal.seed = seed;
    if (spec.solve.decomposition) {
        spec.solve.decomposition->partition_seed = seed;
    }

    TrialResult out;
    out.selection = solve(P, spec.solve);
    out.report = misclassification(label_points(P, out.selection), synth.data.gt_labels);
    out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

namespace {

// Shortest text that reads back to the same double.
std::string num(const double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

}  // namespace

std::string to_csv(const BenchRow &row) {
    std::ostringstream out;
    out << row.dataset << ',' << row.method << ',' << row.backend << ',' << num(row.lambda) << ',' << num(row.epsilon) << ','
        << row.n << ',' << row.m << ',' << row.k << ',' << row.seed << ',';
    if (row.failed()) {
        out << "nan,nan,0,";
    } else {
        out << num(row.error_percent) << ',' << num(row.energy) << ',' << row.iterations << ',';
    }
    out.precision(6);
    out << std::fixed << row.wall_ms;
    return out.str();
}

std::string to_csv(const BenchSummary &summary) {
    std::ostringstream out;
    out << summary.m << ',' << summary.trials << ',' << summary.failed << ',' << num(summary.mean) << ',' << num(summary.median)
        << ',' << num(summary.ci95_low) << ',' << num(summary.ci95_high);
    return out.str();
}

std::vector<BenchSummary> summarize(const std::span<const BenchRow> rows) {
    std::map<std::size_t, std::vector<const BenchRow *>> by_m;
    for (const auto &row : rows) {
        by_m[row.m].push_back(&row);
    }
    std::vector<BenchSummary> out;
    for (const auto &[m, group] : by_m) {
        BenchSummary s;
        s.m = m;
        s.trials = group.size();
        std::vector<double> errors;
        for (const BenchRow *row : group) {
            if (row->failed()) {
                ++s.failed;
            } else {
                errors.push_back(row->error_percent);
            }
        }
        if (errors.empty()) {
            s.mean = s.median = s.ci95_low = s.ci95_high = std::numeric_limits<double>::quiet_NaN();
            out.push_back(s);
            continue;
        }
        double sum = 0.0;
        for (const double e : errors) {
            sum += e;
        }
        const auto count = static_cast<double>(errors.size());
        s.mean = sum / count;
        std::sort(errors.begin(), errors.end());
        const std::size_t mid = errors.size() / 2;
        s.median = errors.size() % 2 == 1 ? errors[mid] : 0.5 * (errors[mid - 1] + errors[mid]);
        if (errors.size() > 1) {
            double ss = 0.0;
            for (const double e : errors) {
                ss += (e - s.mean) * (e - s.mean);
            }
            const double sd = std::sqrt(ss / (count - 1.0));
            const boost::math::students_t dist(count - 1.0);
            const double half = boost::math::quantile(boost::math::complement(dist, 0.025)) * sd / std::sqrt(count);
            s.ci95_low = s.mean - half;
            s.ci95_high = s.mean + half;
        } else {
            s.ci95_low = s.ci95_high = s.mean;
        }
        out.push_back(s);
    }
    return out;
}

std::vector<BenchRow> run_bench(const TrialSpec &base, const std::span<const int> m_values, const int trials, const std::uint64_t seed) {
    if (m_values.empty() || trials < 1) {
        throw invalid_spec("benchmark grid is empty");
    }
    std::vector<int> ms(m_values.begin(), m_values.end());
    std::sort(ms.begin(), ms.end());
    std::vector<BenchRow> rows;
    for (const int m : ms) {
        for (int t = 0; t < trials; ++t) {
            TrialSpec spec = base;
            spec.m = m;
            BenchRow row;
            row.method = spec.solve.decomposition ? "dequmf" : "qumf";
            row.backend = std::string(to_string(spec.solve.backend));
            row.lambda = spec.solve.lambda;
            row.epsilon = spec.epsilon;
            row.n = static_cast<std::size_t>(spec.data.n);
            row.m = static_cast<std::size_t>(m);
            row.k = static_cast<std::size_t>(spec.data.k);
            row.seed = derive_seed(seed, "trial", static_cast<std::uint64_t>(t));
            try {
                const TrialResult result = run_star_trial(spec, row.seed);
                row.error_percent = result.report.misclassification_error;
                row.energy = result.selection.final_energy;
                row.iterations = result.selection.iterations;
                row.wall_ms = result.wall_ms;
            } catch (const error &e) {
                row.failure = e.what();
                row.error_percent = std::numeric_limits<double>::quiet_NaN();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace qumf
