#include "cli.hpp"

#include "qumf/datagen.hpp"
#include "qumf/errors.hpp"
#include "qumf/eval.hpp"
#include "qumf/experiment.hpp"
#include "qumf/io.hpp"
#include "qumf/preference.hpp"
#include "qumf/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace qumf::cli {

namespace {

namespace fs = std::filesystem;

struct GenerateArgs {
    SyntheticSpec spec{};
    std::string points_out;
    std::string models_out;
};

struct HypothesizeArgs {
    std::string points;
    std::string gt_models;
    std::string family{"line"};
    HypothesisPoolSpec pool{};
    bool no_ground_truth{false};
    std::string out;
};

struct SolveArgs {
    std::string method{"qumf"};
    std::string backend{"sa"};
    double lambda{default_lambda};
    int anneals{100};
    int sweeps{1000};
    double beta_start{0.1};
    double beta_end{10.0};
    std::size_t subproblem_size{40};
    std::uint64_t seed{0};

    [[nodiscard]] SolveConfig config() const {
        SolveConfig cfg;
        cfg.lambda = lambda;
        cfg.backend = backend_from_string(backend);
        cfg.anneal.num_anneals = anneals;
        cfg.anneal.sweeps_per_anneal = sweeps;
        cfg.anneal.beta_start = beta_start;
        cfg.anneal.beta_end = beta_end;
        cfg.anneal.seed = seed;
        if (method == "dequmf") {
            cfg.decomposition = Decomposition{subproblem_size, seed};
        }
        return cfg;
    }
};

struct FitArgs {
    std::string points;
    std::string models;
    double epsilon{default_epsilon};
    SolveArgs solve{};
    std::string out;
    std::string labels_out;
    std::string report_out;
    std::string samples_out;
    std::string preference_out;
    std::string preference_csv_out;
    std::string qubo_out;
};

struct EvalArgs {
    std::string points;
    std::string labels;
    std::string out;
    std::string dataset;
    std::string method{"qumf"};
    std::uint64_t seed{0};
    std::size_t m{0};
    bool csv{false};
};

struct BenchArgs {
    std::vector<int> m_values;
    int trials{20};
    SyntheticSpec data{5, 30, 0.0025, 0};
    double epsilon{default_epsilon};
    bool no_ground_truth{false};
    SolveArgs solve{};
    std::string out;
    std::string summary_out;
};

void add_solve_options(CLI::App &cmd, SolveArgs &a) {
    cmd.add_option("--method", a.method, "qumf (one QUBO) or dequmf (iterative pruning)")->check(CLI::IsMember({"qumf", "dequmf"}));
    cmd.add_option("--backend", a.backend, "sampler: sa or exhaustive")->check(CLI::IsMember({"sa", "exhaustive"}));
    cmd.add_option("--lambda", a.lambda, "constraint penalty weight")->check(CLI::PositiveNumber);
    cmd.add_option("--anneals", a.anneals, "anneals per QUBO solve")->check(CLI::PositiveNumber);
    cmd.add_option("--sweeps", a.sweeps, "sweeps per anneal")->check(CLI::PositiveNumber);
    cmd.add_option("--beta-start", a.beta_start, "initial inverse temperature")->check(CLI::PositiveNumber);
    cmd.add_option("--beta-end", a.beta_end, "final inverse temperature")->check(CLI::PositiveNumber);
    cmd.add_option("--subproblem-size", a.subproblem_size, "columns per dequmf subproblem")->check(CLI::Range(2, 1 << 20));
    cmd.add_option("--seed", a.seed, "top-level seed");
}

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

bool has_flag(const std::vector<std::string> &args, const std::string &name) {
    return std::any_of(args.begin(), args.end(), [&](const std::string &a) { return a == name || a.rfind(name + "=", 0) == 0; });
}

std::string config_path(const std::vector<std::string> &args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            return args[i + 1];
        }
        if (args[i].rfind("--config=", 0) == 0) {
            return args[i].substr(9);
        }
    }
    return {};
}

// Appends `--key value` for every `key = value` line of the config file whose
// option was not given on the command line, so flags always win.
std::vector<std::string> merge_config(const CLI::App &app, std::vector<std::string> args) {
    if (args.size() < 2) {
        return args;
    }
    const std::string path = config_path(args);
    if (path.empty()) {
        return args;
    }
    const CLI::App *cmd = nullptr;
    try {
        cmd = app.get_subcommand(args[1]);
    } catch (const CLI::OptionNotFound &) {
        return args;
    }
    std::string text;
    try {
        text = io::read_text(path);
    } catch (const data_error &e) {
        throw CLI::FileError(e.what());
    }
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<std::string> extra;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw CLI::ConversionError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string flag = "--" + key;
        const CLI::Option *opt = nullptr;
        try {
            opt = cmd->get_option(flag);
        } catch (const CLI::OptionNotFound &) {
            throw CLI::ConversionError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        if (key == "config" || has_flag(args, flag)) {
            continue;
        }
        if (opt->get_type_size() == 0) {
            if (value == "true" || value == "1") {
                extra.push_back(flag);
            }
        } else {
            extra.push_back(flag);
            extra.push_back(value);
        }
    }
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

void add_config_option(CLI::App &cmd, std::string &path) {
    cmd.add_option("--config", path, "key = value file; command-line flags take precedence")->check(CLI::ExistingFile);
}

int cmd_generate(const GenerateArgs &a, std::ostream &out) {
    const SyntheticData synth = generate_star(a.spec);
    io::write_json(a.points_out, io::dataset_to_json(synth.data));
    if (!a.models_out.empty()) {
        io::write_json(a.models_out, io::models_to_json(synth.gt_models));
    }
    out << "wrote " << synth.data.points.size() << " points on " << synth.gt_models.size() << " structures\n";
    return exit_ok;
}

int cmd_hypothesize(const HypothesizeArgs &a, std::ostream &out) {
    const Dataset data = io::dataset_from_json(io::read_json(a.points));
    std::vector<ModelHypothesis> gt;
    if (!a.gt_models.empty()) {
        gt = io::models_from_json(io::read_json(a.gt_models));
    }
    HypothesisPoolSpec pool = a.pool;
    pool.family = family_from_string(a.family);
    pool.include_ground_truth = !a.no_ground_truth && !gt.empty();
    const auto models = sample_hypotheses(data.points, gt, pool);
    io::write_json(a.out, io::models_to_json(models));
    out << "wrote " << models.size() << " hypotheses\n";
    return exit_ok;
}

int cmd_fit(const FitArgs &a, std::ostream &out) {
    const Dataset data = io::dataset_from_json(io::read_json(a.points));
    const auto models = io::models_from_json(io::read_json(a.models));
    const PreferenceMatrix P = build_preference(data.points, models, a.epsilon);
    const SolveConfig cfg = a.solve.config();

    if (!a.preference_out.empty()) {
        io::write_json(a.preference_out, io::preference_to_json(P));
    }
    if (!a.preference_csv_out.empty()) {
        io::write_text(a.preference_csv_out, io::preference_to_csv(P));
    }
    if (!a.qubo_out.empty()) {
        io::write_json(a.qubo_out, io::qubo_to_json(build_mmf_qubo(P, cfg.lambda)));
    }

    SampleSet samples;
    const ModelSelection sel = solve(P, cfg, a.samples_out.empty() ? nullptr : &samples);
    io::write_json(a.out, io::selection_to_json(sel, P));
    if (!a.samples_out.empty()) {
        io::write_json(a.samples_out, io::samples_to_json(samples));
    }
    const Labeling labels = label_points(P, sel);
    if (!a.labels_out.empty()) {
        io::write_json(a.labels_out, io::labeling_to_json(labels));
    }
    out << "selected " << sel.selected.size() << " of " << P.m() << " models, energy " << sel.final_energy << '\n';
    if (!sel.orphan_points.empty()) {
        out << sel.orphan_points.size() << " points are covered by no hypothesis\n";
    }
    if (!data.gt_labels.empty()) {
        const EvalReport report = misclassification(labels, data.gt_labels);
        if (!a.report_out.empty()) {
            io::write_json(a.report_out, io::report_to_json(report));
        }
        out << "misclassification error " << report.misclassification_error << "%\n";
    }
    return exit_ok;
}

int cmd_eval(const EvalArgs &a, std::ostream &out) {
    const Dataset data = io::dataset_from_json(io::read_json(a.points));
    if (data.gt_labels.empty()) {
        throw data_error("'" + a.points + "' has no gt_labels");
    }
    const Labeling labels = io::labeling_from_json(io::read_json(a.labels));
    const EvalReport report = misclassification(labels, data.gt_labels);
    if (!a.out.empty()) {
        io::write_json(a.out, io::report_to_json(report));
    }
    if (a.csv) {
        std::size_t k = 0;
        std::vector<int> distinct(data.gt_labels);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (const int l : distinct) {
            k += l >= 0 ? 1 : 0;
        }
        const std::string name = a.dataset.empty() ? fs::path(a.points).stem().string() : a.dataset;
        out << io::report_csv_line(name, a.method, a.seed, a.m, data.points.size(), k, report) << '\n';
    } else {
        out << "misclassification error " << report.misclassification_error << "%\n";
    }
    return exit_ok;
}

int cmd_bench(const BenchArgs &a, std::ostream &out, std::ostream &err) {
    TrialSpec base;
    base.data = a.data;
    base.epsilon = a.epsilon;
    base.include_ground_truth = !a.no_ground_truth;
    base.solve = a.solve.config();
    const auto rows = run_bench(base, a.m_values, a.trials, a.solve.seed);

    std::ofstream csv(a.out, std::ios::binary);
    if (!csv) {
        throw data_error("cannot write '" + a.out + "'");
    }
    csv << bench_csv_header << '\n';
    for (const auto &row : rows) {
        csv << to_csv(row) << '\n';
        if (row.failed()) {
            err << "trial m=" << row.m << " seed=" << row.seed << " failed: " << row.failure << '\n';
        }
    }
    std::ostringstream summary;
    summary << summary_csv_header << '\n';
    for (const auto &s : summarize(rows)) {
        summary << to_csv(s) << '\n';
    }
    if (a.summary_out.empty()) {
        out << summary.str();
    } else {
        io::write_text(a.summary_out, summary.str());
    }
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Multi-model fitting as QUBO disjoint set cover", "qumf"};
    app.require_subcommand(1);

    GenerateArgs gen;
    std::string gen_config;
    auto *generate = app.add_subcommand("generate", "synthetic star dataset");
    add_config_option(*generate, gen_config);
    generate->add_option("--k", gen.spec.k, "number of line structures");
    generate->add_option("--n", gen.spec.n, "number of points");
    generate->add_option("--sigma", gen.spec.noise_sigma, "Gaussian noise standard deviation");
    generate->add_option("--seed", gen.spec.seed, "seed");
    generate->add_option("--points-out", gen.points_out, "points JSON to write")->required();
    generate->add_option("--models-out", gen.models_out, "ground-truth models JSON to write");

    HypothesizeArgs hyp;
    std::string hyp_config;
    auto *hypothesize = app.add_subcommand("hypothesize", "RANSAC-style hypothesis pool");
    add_config_option(*hypothesize, hyp_config);
    hypothesize->add_option("--points", hyp.points, "points JSON")->required()->check(CLI::ExistingFile);
    hypothesize->add_option("--gt-models", hyp.gt_models, "ground-truth models JSON to include in the pool")->check(CLI::ExistingFile);
    hypothesize->add_option("--m", hyp.pool.m, "pool size")->check(CLI::PositiveNumber);
    hypothesize->add_option("--seed", hyp.pool.seed, "seed");
    hypothesize->add_option("--family", hyp.family, "line or circle")->check(CLI::IsMember({"line", "circle"}));
    hypothesize->add_flag("--no-ground-truth", hyp.no_ground_truth, "sample all m hypotheses");
    hypothesize->add_option("--out", hyp.out, "models JSON to write")->required();

    FitArgs fit;
    std::string fit_config;
    auto *fitcmd = app.add_subcommand("fit", "build the preference matrix and select models");
    add_config_option(*fitcmd, fit_config);
    fitcmd->add_option("--points", fit.points, "points JSON")->required()->check(CLI::ExistingFile);
    fitcmd->add_option("--models", fit.models, "hypotheses JSON")->required()->check(CLI::ExistingFile);
    fitcmd->add_option("--epsilon", fit.epsilon, "inlier threshold")->check(CLI::PositiveNumber);
    add_solve_options(*fitcmd, fit.solve);
    fitcmd->add_option("--out", fit.out, "selection JSON to write")->required();
    fitcmd->add_option("--labels-out", fit.labels_out, "labeling JSON to write");
    fitcmd->add_option("--report-out", fit.report_out, "evaluation report JSON to write (needs gt_labels)");
    fitcmd->add_option("--dump-samples", fit.samples_out, "sample set JSON of the final solve");
    fitcmd->add_option("--preference-out", fit.preference_out, "preference matrix JSON to write");
    fitcmd->add_option("--preference-csv-out", fit.preference_csv_out, "preference matrix CSV to write");
    fitcmd->add_option("--qubo-out", fit.qubo_out, "full QUBO JSON to write");

    EvalArgs ev;
    std::string ev_config;
    auto *evalcmd = app.add_subcommand("eval", "misclassification error of a labeling");
    add_config_option(*evalcmd, ev_config);
    evalcmd->add_option("--points", ev.points, "points JSON with gt_labels")->required()->check(CLI::ExistingFile);
    evalcmd->add_option("--labels", ev.labels, "labeling JSON")->required()->check(CLI::ExistingFile);
    evalcmd->add_option("--out", ev.out, "report JSON to write");
    evalcmd->add_flag("--csv", ev.csv, "print a one-line CSV record");
    evalcmd->add_option("--dataset", ev.dataset, "dataset name for the CSV record");
    evalcmd->add_option("--method", ev.method, "method name for the CSV record");
    evalcmd->add_option("--seed", ev.seed, "seed for the CSV record");
    evalcmd->add_option("--m", ev.m, "model count for the CSV record");

    BenchArgs bench;
    std::string bench_config;
    auto *benchcmd = app.add_subcommand("bench", "seeded trial grid over m with CSV output");
    add_config_option(*benchcmd, bench_config);
    benchcmd->add_option("--m-values", bench.m_values, "comma-separated pool sizes")->required()->delimiter(',')->check(CLI::PositiveNumber);
    benchcmd->add_option("--trials", bench.trials, "trials per m")->check(CLI::PositiveNumber);
    benchcmd->add_option("--n", bench.data.n, "points per dataset");
    benchcmd->add_option("--k", bench.data.k, "structures per dataset");
    benchcmd->add_option("--sigma", bench.data.noise_sigma, "noise standard deviation");
    benchcmd->add_option("--epsilon", bench.epsilon, "inlier threshold")->check(CLI::PositiveNumber);
    benchcmd->add_flag("--no-ground-truth", bench.no_ground_truth, "do not seed pools with the true models");
    add_solve_options(*benchcmd, bench.solve);
    benchcmd->add_option("--out", bench.out, "per-trial CSV to write")->required();
    benchcmd->add_option("--summary-out", bench.summary_out, "summary CSV to write (default: stdout)");

    std::vector<std::string> merged;
    std::vector<const char *> argv;
    try {
        merged = merge_config(app, args);
        argv.reserve(merged.size());
        for (const auto &a : merged) {
            argv.push_back(a.c_str());
        }
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (benchcmd->parsed() && bench.m_values.empty()) {
            throw CLI::ValidationError("--m-values", "grid must not be empty");
        }
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (generate->parsed()) {
            return cmd_generate(gen, out);
        }
        if (hypothesize->parsed()) {
            return cmd_hypothesize(hyp, out);
        }
        if (fitcmd->parsed()) {
            return cmd_fit(fit, out);
        }
        if (evalcmd->parsed()) {
            return cmd_eval(ev, out);
        }
        return cmd_bench(bench, out, err);
    } catch (const solver_guard_error &e) {
        err << "solver guard: " << e.what() << '\n';
        return exit_guard;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    }
}

}  // namespace qumf::cli
