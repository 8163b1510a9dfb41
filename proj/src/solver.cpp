#include "qumf/solver.hpp"

#include "qumf/errors.hpp"
#include "qumf/seed.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace qumf {

std::string_view to_string(const Backend backend) noexcept {
    return backend == Backend::sa ? "sa" : "exhaustive";
}

Backend backend_from_string(const std::string_view name) {
    if (name == "sa") {
        return Backend::sa;
    }
    if (name == "exhaustive") {
        return Backend::exhaustive;
    }
    throw data_error("unknown backend '" + std::string(name) + "'");
}

void SolveConfig::validate() const {
    if (!(lambda > 0.0)) {
        throw data_error("lambda must be positive");
    }
    anneal.validate();
    if (decomposition && decomposition->subproblem_size < 2) {
        throw data_error("subproblem size must be at least 2");
    }
}

namespace {

// Build, reduce, sample, extend. `anneal_seed` replaces cfg.anneal.seed.
ModelSelection solve_direct(const PreferenceMatrix &P, const SolveConfig &cfg, const std::uint64_t anneal_seed, SampleSet *samples_out) {
    const Qubo q = build_mmf_qubo(P, cfg.lambda);
    const Reduction red = reduce_forced(P, q);

    SampleSet reduced_samples;
    if (red.reduced.d() == 0) {
        reduced_samples.samples.push_back(Sample{Assignment{}, red.reduced.offset(), 1});
    } else if (cfg.backend == Backend::exhaustive) {
        reduced_samples = sample_exhaustive(red.reduced);
    } else {
        AnnealConfig anneal = cfg.anneal;
        anneal.seed = anneal_seed;
        reduced_samples = sample_sa(red.reduced, anneal);
    }

    const Assignment z = red.extend(reduced_samples.best_sample().bits);
    ModelSelection sel;
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (z[j] != 0) {
            sel.selected.push_back(static_cast<int>(j));
        }
    }
    sel.final_energy = energy(q, z);
    sel.forced = red.forced_ones;
    sel.history = {P.m()};
    if (samples_out != nullptr) {
        SampleSet lifted;
        for (const auto &s : reduced_samples.samples) {
            Assignment full = red.extend(s.bits);
            const double e = energy(q, full);
            lifted.samples.push_back(Sample{std::move(full), e, s.multiplicity});
        }
        *samples_out = std::move(lifted);
    }
    return sel;
}

}  // namespace

ModelSelection qumf(const PreferenceMatrix &P, const SolveConfig &cfg, SampleSet *samples_out) {
    cfg.validate();
    if (cfg.decomposition) {
        throw data_error("qumf solves the full matrix; use dequmf for a decomposed solve");
    }
    ModelSelection sel = solve_direct(P, cfg, cfg.anneal.seed, samples_out);
    sel.orphan_points = orphan_rows(P);
    sel.empty_models = empty_columns(P);
    return sel;
}

std::vector<std::vector<int>> column_partition(const std::size_t m, const std::size_t s, const std::uint64_t seed) {
    if (s == 0) {
        throw data_error("subproblem size must be positive");
    }
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<int>> groups;
    for (std::size_t start = 0; start < m; start += s) {
        const std::size_t stop = std::min(m, start + s);
        groups.emplace_back(perm.begin() + static_cast<std::ptrdiff_t>(start), perm.begin() + static_cast<std::ptrdiff_t>(stop));
    }
    return groups;
}

ModelSelection dequmf(const PreferenceMatrix &P, const SolveConfig &cfg, SampleSet *samples_out) {
    cfg.validate();
    if (!cfg.decomposition) {
        throw data_error("dequmf needs a decomposition config");
    }
    const std::size_t s = cfg.decomposition->subproblem_size;

    std::vector<int> alive(P.m());
    std::iota(alive.begin(), alive.end(), 0);
    ModelSelection out;
    std::size_t round = 0;

    while (alive.size() > s) {
        out.history.push_back(alive.size());
        const auto groups = column_partition(alive.size(), s, derive_seed(cfg.decomposition->partition_seed, "partition", round));
        const std::uint64_t round_seed = derive_seed(cfg.anneal.seed, "round", round);

        // Groups are independent; survivors are merged by original index so order does not matter.
        std::vector<int> next;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            std::vector<int> columns;
            columns.reserve(groups[g].size());
            for (const int local : groups[g]) {
                columns.push_back(alive[static_cast<std::size_t>(local)]);
            }
            const PreferenceMatrix sub = restrict_columns(P, columns);
            const ModelSelection sub_sel = solve_direct(sub, cfg, derive_seed(round_seed, "group", g), nullptr);
            for (const int k : sub_sel.selected) {
                next.push_back(columns[static_cast<std::size_t>(k)]);
            }
        }
        std::sort(next.begin(), next.end());
        if (next.size() == alive.size()) {
            throw stalled_pruning("pruning round " + std::to_string(round) + " kept all " + std::to_string(alive.size()) + " columns", alive);
        }
        alive = std::move(next);
        out.round_survivors.push_back(alive);
        ++round;
    }
    out.history.push_back(alive.size());
    out.iterations = round;
    out.orphan_points = orphan_rows(P);
    out.empty_models = empty_columns(P);

    if (alive.empty()) {
        const Qubo q = build_mmf_qubo(P, cfg.lambda);
        out.final_energy = energy(q, Assignment(P.m(), 0));
        if (samples_out != nullptr) {
            *samples_out = SampleSet{{Sample{Assignment(P.m(), 0), out.final_energy, 1}}, 0};
        }
        return out;
    }

    const PreferenceMatrix survivors = restrict_columns(P, alive);
    SampleSet local_samples;
    const ModelSelection fin = solve_direct(survivors, cfg, derive_seed(cfg.anneal.seed, "final", round),
                                            samples_out != nullptr ? &local_samples : nullptr);
    for (const int k : fin.selected) {
        out.selected.push_back(alive[static_cast<std::size_t>(k)]);
    }
    for (const int k : fin.forced) {
        out.forced.push_back(alive[static_cast<std::size_t>(k)]);
    }
    std::sort(out.selected.begin(), out.selected.end());
    // Unselected columns contribute nothing, so the survivor energy equals the full-matrix energy.
    out.final_energy = fin.final_energy;

    if (samples_out != nullptr) {
        SampleSet lifted;
        for (auto &smp : local_samples.samples) {
            Assignment full(P.m(), 0);
            for (std::size_t k = 0; k < smp.bits.size(); ++k) {
                full[static_cast<std::size_t>(alive[k])] = smp.bits[k];
            }
            lifted.samples.push_back(Sample{std::move(full), smp.energy, smp.multiplicity});
        }
        *samples_out = std::move(lifted);
    }
    return out;
}

ModelSelection solve(const PreferenceMatrix &P, const SolveConfig &cfg, SampleSet *samples_out) {
    return cfg.decomposition ? dequmf(P, cfg, samples_out) : qumf(P, cfg, samples_out);
}

SingleModelResult extract_single_model(const PreferenceMatrix &P, const ModelSelection &sel) {
    if (sel.selected.empty()) {
        throw empty_selection("no model was selected");
    }
    SingleModelResult out;
    std::size_t best_size = 0;
    for (const int j : sel.selected) {
        const std::size_t size = consensus_size(P, static_cast<std::size_t>(j));
        if (out.model < 0 || size > best_size || (size == best_size && j < out.model)) {
            out.model = j;
            best_size = size;
        }
    }
    const auto col = P.column(static_cast<std::size_t>(out.model));
    for (std::size_t i = 0; i < P.n(); ++i) {
        (col[i] != 0 ? out.inliers : out.outliers).push_back(static_cast<int>(i));
    }
    return out;
}

}  // namespace qumf
