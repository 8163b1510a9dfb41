#pragma once

#include "qumf/annealer.hpp"
#include "qumf/preference.hpp"
#include "qumf/qubo.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace qumf {

enum class Backend { sa, exhaustive };

[[nodiscard]] std::string_view to_string(Backend backend) noexcept;
[[nodiscard]] Backend backend_from_string(std::string_view name);

struct Decomposition {
    std::size_t subproblem_size{40};
    std::uint64_t partition_seed{0};
};

struct SolveConfig {
    double lambda{default_lambda};
    Backend backend{Backend::sa};
    AnnealConfig anneal{};
    std::optional<Decomposition> decomposition{};

    void validate() const;
};

/// Models chosen by a solve, as indices into the columns of the input matrix.
struct ModelSelection {
    std::vector<int> selected;  ///< sorted ascending
    double final_energy{};      ///< energy of `selected` on the input matrix's QUBO
    std::size_t iterations{0};  ///< pruning rounds (0 for a one-sweep solve)
    /// Surviving column count entering each pruning round, then entering the final solve.
    std::vector<std::size_t> history;
    /// Surviving columns after each pruning round.
    std::vector<std::vector<int>> round_survivors;
    std::vector<int> forced;         ///< variables fixed by the forced-variable reduction in the final solve
    std::vector<int> orphan_points;  ///< rows no column covers
    std::vector<int> empty_models;   ///< columns with empty consensus
};

/// One QUBO solve over all columns: build, reduce, sample, extend.
/// `samples_out`, when given, receives the sampler output lifted to full-size assignments.
[[nodiscard]] ModelSelection qumf(const PreferenceMatrix &P, const SolveConfig &cfg, SampleSet *samples_out = nullptr);

/// Seeded random permutation of 0..m-1 cut into consecutive groups of `s` (last group may be smaller).
[[nodiscard]] std::vector<std::vector<int>> column_partition(std::size_t m, std::size_t s, std::uint64_t seed);

/**
 * Iterative pruning: while more than s columns survive, partition them,
 * solve each group against all rows and keep only the selected columns.
 * Once at most s remain, solve those directly.
 *
 * Round r partitions with derive_seed(partition_seed, "partition", r).
 * Throws stalled_pruning when a round keeps every column.
 */
[[nodiscard]] ModelSelection dequmf(const PreferenceMatrix &P, const SolveConfig &cfg, SampleSet *samples_out = nullptr);

/// Dispatches to dequmf when cfg.decomposition is set, qumf otherwise.
[[nodiscard]] ModelSelection solve(const PreferenceMatrix &P, const SolveConfig &cfg, SampleSet *samples_out = nullptr);

struct SingleModelResult {
    int model{-1};
    std::vector<int> inliers;
    std::vector<int> outliers;
};

/// Keeps the selected model with the largest consensus (ties: lowest index); every other point is an outlier.
[[nodiscard]] SingleModelResult extract_single_model(const PreferenceMatrix &P, const ModelSelection &sel);

}  // namespace qumf
