#include "qumf/io.hpp"

#include "qumf/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qumf::io {

namespace {

template <typename T>
T get(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw data_error(std::string("missing JSON field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw data_error(std::string("bad JSON field '") + key + "': " + e.what());
    }
}

json model_record(const ModelHypothesis &model) {
    return json{{"family", std::string(to_string(model.family()))},
                {"params", model.param_vector()},
                {"source_ids", model.source_ids()}};
}

ModelHypothesis model_from_record(const json &rec) {
    const auto family = family_from_string(get<std::string>(rec, "family"));
    const auto params = get<std::vector<double>>(rec, "params");
    std::vector<int> ids = rec.contains("source_ids") ? get<std::vector<int>>(rec, "source_ids") : std::vector<int>{};
    return ModelHypothesis::from_param_vector(family, params, std::move(ids));
}

std::string bits_to_string(const Assignment &bits) {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) {
        s[i] = bits[i] != 0 ? '1' : '0';
    }
    return s;
}

Assignment bits_from_string(const std::string &s) {
    Assignment bits(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1') {
            throw data_error("bit strings may only contain 0 and 1");
        }
        bits[i] = s[i] == '1' ? 1 : 0;
    }
    return bits;
}

}  // namespace

json dataset_to_json(const Dataset &data) {
    json points = json::array();
    for (const auto &p : data.points) {
        points.push_back(json{{"id", p.id}, {"x", p.x}, {"y", p.y}});
    }
    json j{{"points", std::move(points)}};
    if (!data.gt_labels.empty()) {
        j["gt_labels"] = data.gt_labels;
    }
    return j;
}

Dataset dataset_from_json(const json &j) {
    Dataset data;
    const auto points = get<json>(j, "points");
    if (!points.is_array()) {
        throw data_error("'points' must be an array");
    }
    data.points.resize(points.size());
    std::vector<bool> seen(points.size(), false);
    for (const auto &rec : points) {
        const int id = get<int>(rec, "id");
        if (id < 0 || static_cast<std::size_t>(id) >= points.size() || seen[static_cast<std::size_t>(id)]) {
            throw data_error("point ids must be unique and contiguous from 0");
        }
        seen[static_cast<std::size_t>(id)] = true;
        const Point2D p{get<double>(rec, "x"), get<double>(rec, "y"), id};
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw data_error("point coordinates must be finite");
        }
        data.points[static_cast<std::size_t>(id)] = p;
    }
    if (j.contains("gt_labels")) {
        data.gt_labels = get<std::vector<int>>(j, "gt_labels");
        if (data.gt_labels.size() != data.points.size()) {
            throw data_error("gt_labels length does not match the point count");
        }
    }
    return data;
}

json models_to_json(const std::vector<ModelHypothesis> &models) {
    json arr = json::array();
    for (const auto &m : models) {
        arr.push_back(model_record(m));
    }
    return json{{"models", std::move(arr)}};
}

std::vector<ModelHypothesis> models_from_json(const json &j) {
    const auto arr = get<json>(j, "models");
    if (!arr.is_array()) {
        throw data_error("'models' must be an array");
    }
    std::vector<ModelHypothesis> out;
    out.reserve(arr.size());
    for (const auto &rec : arr) {
        out.push_back(model_from_record(rec));
    }
    return out;
}

json preference_to_json(const PreferenceMatrix &P) {
    std::vector<int> entries(P.row_major().begin(), P.row_major().end());
    json j{{"n", P.n()}, {"m", P.m()}, {"epsilon", P.epsilon()}, {"entries", std::move(entries)}};
    j["models"] = models_to_json(P.models())["models"];
    return j;
}

PreferenceMatrix preference_from_json(const json &j) {
    const auto n = get<std::size_t>(j, "n");
    const auto m = get<std::size_t>(j, "m");
    const auto entries = get<std::vector<int>>(j, "entries");
    if (entries.size() != n * m) {
        throw data_error("'entries' length does not match n*m");
    }
    std::vector<std::uint8_t> bits(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i] != 0 && entries[i] != 1) {
            throw data_error("preference entries must be 0 or 1");
        }
        bits[i] = static_cast<std::uint8_t>(entries[i]);
    }
    std::vector<ModelHypothesis> models;
    if (j.contains("models")) {
        models = models_from_json(json{{"models", j.at("models")}});
    }
    const double epsilon = j.contains("epsilon") ? get<double>(j, "epsilon") : 0.0;
    return PreferenceMatrix{n, m, std::move(bits), std::move(models), nullptr, epsilon};
}

std::string preference_to_csv(const PreferenceMatrix &P) {
    std::string out;
    out.reserve(P.n() * (2 * P.m() + 1));
    for (std::size_t i = 0; i < P.n(); ++i) {
        for (std::size_t j = 0; j < P.m(); ++j) {
            if (j > 0) {
                out += ',';
            }
            out += P(i, j) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

PreferenceMatrix preference_from_csv(const std::string_view text) {
    std::vector<std::uint8_t> bits;
    std::size_t n = 0;
    std::size_t m = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::size_t count = 0;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            if (cell != "0" && cell != "1") {
                throw data_error("preference CSV cells must be 0 or 1");
            }
            bits.push_back(cell == "1" ? 1 : 0);
            ++count;
        }
        if (n == 0) {
            m = count;
        } else if (count != m) {
            throw data_error("preference CSV rows differ in length");
        }
        ++n;
    }
    if (n == 0 || m == 0) {
        throw data_error("preference CSV is empty");
    }
    return PreferenceMatrix{n, m, std::move(bits)};
}

json qubo_to_json(const Qubo &q) {
    json terms = json::array();
    for (std::size_t i = 0; i < q.d(); ++i) {
        for (std::size_t j = i; j < q.d(); ++j) {
            if (q.quadratic(i, j) != 0.0) {
                terms.push_back(json::array({i, j, q.quadratic(i, j)}));
            }
        }
    }
    return json{{"d", q.d()}, {"q", std::move(terms)}, {"s", q.linear()}, {"offset", q.offset()}};
}

Qubo qubo_from_json(const json &j) {
    const auto d = get<std::size_t>(j, "d");
    std::vector<double> quad(d * d, 0.0);
    const auto terms = get<json>(j, "q");
    if (!terms.is_array()) {
        throw data_error("'q' must be an array");
    }
    for (const auto &t : terms) {
        if (!t.is_array() || t.size() != 3) {
            throw data_error("QUBO terms must be [i, j, value] triples");
        }
        const auto i = t[0].get<std::size_t>();
        const auto k = t[1].get<std::size_t>();
        const auto v = t[2].get<double>();
        if (i >= d || k >= d) {
            throw data_error("QUBO term index out of range");
        }
        if (i > k) {
            throw data_error("QUBO terms must list the upper triangle (i <= j)");
        }
        quad[i * d + k] = v;
        quad[k * d + i] = v;
    }
    return Qubo{d, std::move(quad), get<std::vector<double>>(j, "s"), j.contains("offset") ? get<double>(j, "offset") : 0.0};
}

json samples_to_json(const SampleSet &samples) {
    json arr = json::array();
    for (const auto &s : samples.samples) {
        arr.push_back(json{{"bits", bits_to_string(s.bits)}, {"energy", s.energy}, {"multiplicity", s.multiplicity}});
    }
    return json{{"best", samples.best}, {"samples", std::move(arr)}};
}

SampleSet samples_from_json(const json &j) {
    SampleSet out;
    out.best = get<std::size_t>(j, "best");
    for (const auto &rec : get<json>(j, "samples")) {
        out.samples.push_back(Sample{bits_from_string(get<std::string>(rec, "bits")), get<double>(rec, "energy"),
                                     get<std::size_t>(rec, "multiplicity")});
    }
    if (!out.samples.empty() && out.best >= out.samples.size()) {
        throw data_error("'best' index out of range");
    }
    return out;
}

json selection_to_json(const ModelSelection &sel, const PreferenceMatrix &P) {
    json models = json::array();
    if (!P.models().empty()) {
        for (const int idx : sel.selected) {
            json rec = model_record(P.models().at(static_cast<std::size_t>(idx)));
            rec["index"] = idx;
            models.push_back(std::move(rec));
        }
    }
    return json{{"selected", sel.selected},
                {"models", std::move(models)},
                {"energy", sel.final_energy},
                {"iterations", sel.iterations},
                {"history", sel.history},
                {"round_survivors", sel.round_survivors},
                {"forced", sel.forced},
                {"orphan_points", sel.orphan_points},
                {"empty_models", sel.empty_models}};
}

ModelSelection selection_from_json(const json &j) {
    ModelSelection sel;
    sel.selected = get<std::vector<int>>(j, "selected");
    sel.final_energy = get<double>(j, "energy");
    sel.iterations = j.contains("iterations") ? get<std::size_t>(j, "iterations") : 0;
    if (j.contains("history")) {
        sel.history = get<std::vector<std::size_t>>(j, "history");
    }
    if (j.contains("round_survivors")) {
        sel.round_survivors = get<std::vector<std::vector<int>>>(j, "round_survivors");
    }
    if (j.contains("forced")) {
        sel.forced = get<std::vector<int>>(j, "forced");
    }
    return sel;
}

json labeling_to_json(const Labeling &labels) {
    return json{{"labels", labels.labels}, {"cluster_models", labels.cluster_models}};
}

Labeling labeling_from_json(const json &j) {
    Labeling out{get<std::vector<int>>(j, "labels"), get<std::vector<int>>(j, "cluster_models")};
    for (const int l : out.labels) {
        if (l >= static_cast<int>(out.cluster_models.size())) {
            throw data_error("label refers to an unknown cluster");
        }
    }
    return out;
}

json report_to_json(const EvalReport &report) {
    json pairs = json::array();
    for (const auto &[p, g] : report.matched_pairs) {
        pairs.push_back(json::array({p, g}));
    }
    return json{{"misclassification_error", report.misclassification_error},
                {"n", report.n},
                {"matched", report.matched},
                {"matched_pairs", std::move(pairs)},
                {"confusion", json{{"pred_clusters", report.pred_clusters},
                                   {"gt_clusters", report.gt_clusters},
                                   {"counts", report.confusion}}}};
}

std::string report_csv_line(const std::string_view dataset, const std::string_view method, const std::uint64_t seed,
                            const std::size_t m, const std::size_t n, const std::size_t k, const EvalReport &report) {
    std::ostringstream out;
    out.precision(17);
    out << dataset << ',' << method << ',' << seed << ',' << m << ',' << n << ',' << k << ',' << report.misclassification_error;
    return out.str();
}

std::string read_text(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw data_error("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::filesystem::path &path, const std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw data_error("cannot write '" + path.string() + "'");
    }
    out << text;
}

json read_json(const std::filesystem::path &path) {
    try {
        return json::parse(read_text(path));
    } catch (const json::parse_error &e) {
        throw data_error("cannot parse '" + path.string() + "': " + e.what());
    }
}

void write_json(const std::filesystem::path &path, const json &j) {
    write_text(path, j.dump(2) + "\n");
}

}  // namespace qumf::io
