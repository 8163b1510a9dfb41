#pragma once

#include "qumf/qubo.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qumf {

/// Simulated annealing parameters. Inverse temperature moves geometrically from beta_start to beta_end
/// over the Metropolis sweeps; each anneal then finishes with a greedy descent to a single-flip local minimum.
struct AnnealConfig {
    int num_anneals{100};
    int sweeps_per_anneal{1000};
    double beta_start{0.1};
    double beta_end{10.0};
    std::uint64_t seed{0};

    /// Throws data_error when a field is out of range.
    void validate() const;
};

struct Sample {
    Assignment bits;
    double energy{};
    std::size_t multiplicity{1};
};

/// Distinct final states, sorted by energy then lexicographically by bits.
struct SampleSet {
    std::vector<Sample> samples;
    std::size_t best{0};

    [[nodiscard]] const Sample &best_sample() const { return samples.at(best); }
    /// Sum of multiplicities, i.e. the number of anneals (or 1 for the exhaustive sampler).
    [[nodiscard]] std::size_t total_count() const noexcept;
};

/// Largest dimension the exhaustive sampler accepts.
inline constexpr std::size_t exhaustive_limit = 25;

/// Inverse temperature per sweep.
[[nodiscard]] std::vector<double> beta_schedule(const AnnealConfig &cfg);

/// Result of a single anneal.
struct AnnealRun {
    Assignment final_state;
    double final_energy{};
    /// Lowest energy seen so far, recorded after every sweep (only when tracing).
    std::vector<double> best_so_far;
};

/// Runs anneal number `index` of `cfg`. Its random stream depends only on (cfg.seed, index).
[[nodiscard]] AnnealRun anneal_once(const Qubo &q, const AnnealConfig &cfg, std::size_t index, bool trace = false);

/// Runs cfg.num_anneals independent anneals in parallel. The result does not depend on the thread count.
[[nodiscard]] SampleSet sample_sa(const Qubo &q, const AnnealConfig &cfg);

/// Exact minimum by enumeration, ties broken toward the lexicographically smallest bits.
/// Throws too_large above exhaustive_limit variables.
[[nodiscard]] SampleSet sample_exhaustive(const Qubo &q);

/// Fraction of anneals whose final energy is within 1e-9 of (or below) `reference_energy`.
[[nodiscard]] double optimal_solution_probability(const SampleSet &samples, double reference_energy);
[[nodiscard]] double optimal_solution_probability(const Qubo &q, const AnnealConfig &cfg, double reference_energy);

namespace reference {

/// Serial anneal loop; kept to check sample_sa.
[[nodiscard]] SampleSet sample_sa(const Qubo &q, const AnnealConfig &cfg);

}  // namespace reference

}  // namespace qumf
