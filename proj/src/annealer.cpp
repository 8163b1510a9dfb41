#include "qumf/annealer.hpp"

#include "qumf/errors.hpp"
#include "qumf/seed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

namespace qumf {

void AnnealConfig::validate() const {
    if (num_anneals < 1) {
        throw data_error("num_anneals must be at least 1");
    }
    if (sweeps_per_anneal < 1) {
        throw data_error("sweeps_per_anneal must be at least 1");
    }
    if (!(beta_start > 0.0) || !(beta_start < beta_end) || !std::isfinite(beta_end)) {
        throw data_error("beta schedule needs 0 < beta_start < beta_end");
    }
}

std::size_t SampleSet::total_count() const noexcept {
    std::size_t total = 0;
    for (const auto &s : samples) {
        total += s.multiplicity;
    }
    return total;
}

std::vector<double> beta_schedule(const AnnealConfig &cfg) {
    cfg.validate();
    const auto sweeps = static_cast<std::size_t>(cfg.sweeps_per_anneal);
    std::vector<double> betas(sweeps, cfg.beta_start);
    if (sweeps > 1) {
        const double ratio = cfg.beta_end / cfg.beta_start;
        for (std::size_t t = 0; t < sweeps; ++t) {
            betas[t] = cfg.beta_start * std::pow(ratio, static_cast<double>(t) / static_cast<double>(sweeps - 1));
        }
    }
    return betas;
}

namespace {

// Local fields h_i = sum_{j != i} Q_ij z_j.
std::vector<double> local_fields(const Qubo &q, const Assignment &z) {
    const std::size_t d = q.d();
    std::vector<double> h(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        if (z[j] == 0) {
            continue;
        }
        const auto row = q.quadratic_row(j);
        for (std::size_t i = 0; i < d; ++i) {
            if (i != j) {
                h[i] += row[i];
            }
        }
    }
    return h;
}

// Flips bit i and keeps the local fields consistent.
void flip(const Qubo &q, Assignment &z, std::vector<double> &h, const std::size_t i) {
    const double sign = z[i] != 0 ? -1.0 : 1.0;
    z[i] ^= 1U;
    const auto row = q.quadratic_row(i);
    for (std::size_t j = 0; j < h.size(); ++j) {
        if (j != i) {
            h[j] += sign * row[j];
        }
    }
}

double flip_delta(const Qubo &q, const Assignment &z, const std::vector<double> &h, const std::size_t i) {
    const double gain = q.quadratic(i, i) + q.linear()[i] + 2.0 * h[i];
    return z[i] != 0 ? -gain : gain;
}

AnnealRun run_anneal(const Qubo &q, const AnnealConfig &cfg, const std::vector<double> &betas, const std::size_t index, const bool trace) {
    std::mt19937_64 rng(derive_seed(cfg.seed, "anneal", index));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t d = q.d();

    AnnealRun run;
    Assignment z(d);
    for (auto &bit : z) {
        bit = static_cast<std::uint8_t>(rng() >> 63);
    }
    std::vector<double> h = local_fields(q, z);
    double current = energy(q, z);
    double best = current;
    if (trace) {
        run.best_so_far.reserve(betas.size());
    }

    for (const double beta : betas) {
        for (std::size_t i = 0; i < d; ++i) {
            const double delta = flip_delta(q, z, h, i);
            if (delta <= 0.0 || unit(rng) < std::exp(-beta * delta)) {
                flip(q, z, h, i);
                current += delta;
                best = std::min(best, current);
            }
        }
        if (trace) {
            run.best_so_far.push_back(best);
        }
    }
    // Zero-temperature quench: the final state is a single-flip local minimum.
    for (bool improved = true; improved;) {
        improved = false;
        for (std::size_t i = 0; i < d; ++i) {
            if (flip_delta(q, z, h, i) < 0.0) {
                flip(q, z, h, i);
                improved = true;
            }
        }
    }
    run.final_energy = energy(q, z);
    run.final_state = std::move(z);
    return run;
}

// Merges identical final states and orders them by (energy, bits).
SampleSet aggregate(const Qubo &q, std::vector<Assignment> finals) {
    std::sort(finals.begin(), finals.end());
    SampleSet out;
    for (auto &bits : finals) {
        if (!out.samples.empty() && out.samples.back().bits == bits) {
            ++out.samples.back().multiplicity;
            continue;
        }
        const double e = energy(q, bits);
        out.samples.push_back(Sample{std::move(bits), e, 1});
    }
    std::stable_sort(out.samples.begin(), out.samples.end(),
                     [](const Sample &a, const Sample &b) { return a.energy < b.energy; });
    out.best = 0;
    return out;
}

void check_sa_inputs(const Qubo &q, const AnnealConfig &cfg) {
    cfg.validate();
    if (q.d() == 0) {
        throw data_error("simulated annealing needs at least one variable");
    }
}

}  // namespace

AnnealRun anneal_once(const Qubo &q, const AnnealConfig &cfg, const std::size_t index, const bool trace) {
    check_sa_inputs(q, cfg);
    return run_anneal(q, cfg, beta_schedule(cfg), index, trace);
}

SampleSet sample_sa(const Qubo &q, const AnnealConfig &cfg) {
    check_sa_inputs(q, cfg);
    const std::vector<double> betas = beta_schedule(cfg);
    std::vector<Assignment> finals(static_cast<std::size_t>(cfg.num_anneals));
    const auto anneals = static_cast<std::ptrdiff_t>(cfg.num_anneals);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < anneals; ++k) {
        finals[static_cast<std::size_t>(k)] = run_anneal(q, cfg, betas, static_cast<std::size_t>(k), false).final_state;
    }
    return aggregate(q, std::move(finals));
}

namespace reference {

SampleSet sample_sa(const Qubo &q, const AnnealConfig &cfg) {
    check_sa_inputs(q, cfg);
    const std::vector<double> betas = beta_schedule(cfg);
    std::vector<Assignment> finals;
    finals.reserve(static_cast<std::size_t>(cfg.num_anneals));
    for (int k = 0; k < cfg.num_anneals; ++k) {
        finals.push_back(run_anneal(q, cfg, betas, static_cast<std::size_t>(k), false).final_state);
    }
    return aggregate(q, std::move(finals));
}

}  // namespace reference

SampleSet sample_exhaustive(const Qubo &q) {
    const std::size_t d = q.d();
    if (d > exhaustive_limit) {
        throw too_large("exhaustive sampler limited to " + std::to_string(exhaustive_limit) + " variables, got " + std::to_string(d));
    }
    constexpr double tie_tolerance = 1e-9;
    constexpr std::uint64_t resync_period = 1024;

    Assignment z(d, 0);
    std::vector<double> h(d, 0.0);
    double current = q.offset();
    Assignment best = z;
    double best_energy = current;

    // Gray-code walk: step k flips the lowest set bit of k.
    const std::uint64_t total = std::uint64_t{1} << d;
    for (std::uint64_t k = 1; k < total; ++k) {
        const auto i = static_cast<std::size_t>(std::countr_zero(k));
        current += flip_delta(q, z, h, i);
        flip(q, z, h, i);
        if (k % resync_period == 0) {
            current = energy(q, z);
        }
        if (current < best_energy - tie_tolerance) {
            best = z;
            best_energy = current;
        } else if (current <= best_energy + tie_tolerance) {
            const double exact = energy(q, z);
            const double exact_best = energy(q, best);
            if (exact < exact_best - tie_tolerance || (exact <= exact_best + tie_tolerance && z < best)) {
                best = z;
                best_energy = exact;
            }
        }
    }

    SampleSet out;
    const double e = energy(q, best);
    out.samples.push_back(Sample{std::move(best), e, 1});
    return out;
}

double optimal_solution_probability(const SampleSet &samples, const double reference_energy) {
    const std::size_t total = samples.total_count();
    if (total == 0) {
        return 0.0;
    }
    std::size_t hits = 0;
    for (const auto &s : samples.samples) {
        if (s.energy <= reference_energy + 1e-9) {
            hits += s.multiplicity;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

double optimal_solution_probability(const Qubo &q, const AnnealConfig &cfg, const double reference_energy) {
    return optimal_solution_probability(sample_sa(q, cfg), reference_energy);
}

}  // namespace qumf
