#pragma once

#include "qumf/annealer.hpp"
#include "qumf/datagen.hpp"
#include "qumf/eval.hpp"
#include "qumf/preference.hpp"
#include "qumf/qubo.hpp"
#include "qumf/solver.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

// JSON and CSV encodings of the pipeline's data. Readers throw data_error on malformed input.
namespace qumf::io {

using json = nlohmann::json;

// {"points": [{"id", "x", "y"}...], "gt_labels": [...]}; gt_labels omitted when empty.
[[nodiscard]] json dataset_to_json(const Dataset &data);
[[nodiscard]] Dataset dataset_from_json(const json &j);

// {"models": [{"family", "params", "source_ids"}...]}
[[nodiscard]] json models_to_json(const std::vector<ModelHypothesis> &models);
[[nodiscard]] std::vector<ModelHypothesis> models_from_json(const json &j);

// {"n", "m", "epsilon", "entries": row-major 0/1 list, "models": [...]}
[[nodiscard]] json preference_to_json(const PreferenceMatrix &P);
[[nodiscard]] PreferenceMatrix preference_from_json(const json &j);
/// One line per point, comma-separated 0/1 entries.
[[nodiscard]] std::string preference_to_csv(const PreferenceMatrix &P);
[[nodiscard]] PreferenceMatrix preference_from_csv(std::string_view text);

// {"d", "q": [[i, j, Q_ij] for i <= j, nonzero], "s", "offset"}. Energy = sum_i Q_ii z_i + 2 sum_{i<j} Q_ij z_i z_j + s.z + offset.
[[nodiscard]] json qubo_to_json(const Qubo &q);
[[nodiscard]] Qubo qubo_from_json(const json &j);

// {"best", "samples": [{"bits": "0101", "energy", "multiplicity"}...]}
[[nodiscard]] json samples_to_json(const SampleSet &samples);
[[nodiscard]] SampleSet samples_from_json(const json &j);

/// Selection with model parameters taken from P when it carries models.
[[nodiscard]] json selection_to_json(const ModelSelection &sel, const PreferenceMatrix &P);
[[nodiscard]] ModelSelection selection_from_json(const json &j);

[[nodiscard]] json labeling_to_json(const Labeling &labels);
[[nodiscard]] Labeling labeling_from_json(const json &j);

[[nodiscard]] json report_to_json(const EvalReport &report);

/// Header for report_csv_line.
inline constexpr std::string_view report_csv_header = "dataset,method,seed,m,n,k,error_percent";
[[nodiscard]] std::string report_csv_line(std::string_view dataset, std::string_view method, std::uint64_t seed,
                                          std::size_t m, std::size_t n, std::size_t k, const EvalReport &report);

[[nodiscard]] std::string read_text(const std::filesystem::path &path);
void write_text(const std::filesystem::path &path, std::string_view text);
[[nodiscard]] json read_json(const std::filesystem::path &path);
/// Two-space indented JSON with a trailing newline.
void write_json(const std::filesystem::path &path, const json &j);

}  // namespace qumf::io
