#pragma once

#include "qumf/datagen.hpp"
#include "qumf/eval.hpp"
#include "qumf/solver.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qumf {

/// One synthetic fitting trial: star data, hypothesis pool, preference matrix, solve, evaluation.
struct TrialSpec {
    SyntheticSpec data{};
    int m{100};
    bool include_ground_truth{true};
    double epsilon{default_epsilon};
    SolveConfig solve{};
};

struct TrialResult {
    EvalReport report;
    ModelSelection selection;
    double wall_ms{};
};

/// Runs a trial with every seed (data, pool, anneal, partition) set to `seed`.
[[nodiscard]] TrialResult run_star_trial(TrialSpec spec, std::uint64_t seed);

/// Per-trial benchmark record. error_percent is NaN for a failed trial.
struct BenchRow {
    std::string dataset{"star"};
    std::string method;
    std::string backend;
    double lambda{};
    double epsilon{};
    std::size_t n{};
    std::size_t m{};
    std::size_t k{};
    std::uint64_t seed{};
    double error_percent{};
    double energy{};
    std::size_t iterations{};
    double wall_ms{};
    std::string failure;  ///< empty on success

    [[nodiscard]] bool failed() const noexcept { return !failure.empty(); }
};

inline constexpr const char *bench_csv_header = "dataset,method,backend,lambda,epsilon,n,m,k,seed,error_percent,energy,iterations,wall_ms";
[[nodiscard]] std::string to_csv(const BenchRow &row);

/// Mean, median and a two-sided 95% Student-t interval of the successful trials for one m.
struct BenchSummary {
    std::size_t m{};
    std::size_t trials{};
    std::size_t failed{};
    double mean{};
    double median{};
    double ci95_low{};
    double ci95_high{};
};

inline constexpr const char *summary_csv_header = "m,trials,failed,mean,median,ci95_low,ci95_high";
[[nodiscard]] std::string to_csv(const BenchSummary &summary);

/// Groups rows by m (ascending) and summarizes error_percent.
[[nodiscard]] std::vector<BenchSummary> summarize(std::span<const BenchRow> rows);

/// Runs the m x trial grid in (m, trial) order. Trial t uses derive_seed(seed, "trial", t).
/// Failed trials produce flagged rows and the run continues.
[[nodiscard]] std::vector<BenchRow> run_bench(const TrialSpec &base, std::span<const int> m_values, int trials, std::uint64_t seed);

}  // namespace qumf
