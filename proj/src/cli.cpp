#include "dpercol/cli.hpp"

#include <fstream>
#include <memory>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpercol/components.hpp"
#include "dpercol/configmodel.hpp"
#include "dpercol/distribution_io.hpp"
#include "dpercol/error.hpp"
#include "dpercol/experiments.hpp"
#include "dpercol/graph_io.hpp"
#include "dpercol/percolation.hpp"
#include "dpercol/rng.hpp"
#include "dpercol/theory.hpp"

namespace dpercol::cli {

using Json = nlohmann::ordered_json;

DegreeDistribution resolve_distribution(const std::string &text) {
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const auto family = text.substr(0, colon);
        if (family == "poisson" || family == "const" || family == "geometric" || family == "file")
            return parse_distribution_spec(text);
    }
    return load_distribution(text);
}

namespace {

struct TheoryArgs {
    std::string dist;
    double pi = 1.0;
    std::string mode = "bond";
};

struct SampleArgs {
    std::string dist;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t max_attempts = default_max_attempts;
    std::string out_path;
};

struct PercolateArgs {
    std::string graph;
    double pi = 1.0;
    std::string mode = "bond";
    std::uint64_t seed = 0;
    std::string out_path;
};

struct SccArgs {
    std::string graph;
    std::string labels_path;
};

struct ExperimentArgs {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
};

struct CheckArgs {
    std::string seq;
};

/// Writes to `path`, or to `fallback` when the path is empty.
class Sink {
public:
    Sink(const std::string &path, std::ostream &fallback) {
        if (path.empty()) {
            stream_ = &fallback;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_)
            throw Error(ErrorKind::io_error, "cannot write '" + path + "'");
        stream_ = file_.get();
    }

    std::ostream &get() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream *stream_ = nullptr;
};

int run_theory(const TheoryArgs &a, std::ostream &out, std::ostream &err) {
    const auto dist = resolve_distribution(a.dist);
    const auto mode = parse_theory_mode(a.mode);
    const auto pred = gscc_fraction(dist, a.pi, mode);
    if (pred.at_threshold)
        err << "note: pi equals pi_c; the giant-component fraction is reported as 0 at the threshold\n";
    if (!pred.boundary_positive)
        err << "warning: U^-(0) or U^+(0) is zero; the giant-component formula does not apply\n";
    if (!pred.converged)
        err << "warning: fixed-point iteration did not converge (residual " << pred.solver_residual << ")\n";

    Json j;
    j["pi"] = pred.pi;
    j["pi_c"] = pred.pi_c;
    j["x_star"] = pred.x_star;
    j["y_star"] = pred.y_star;
    j["c_bond"] = pred.c_bond;
    j["c_site"] = pred.c_site;
    j["zeta"] = pred.zeta;
    j["solver_iters"] = pred.solver_iters;
    j["solver_residual"] = pred.solver_residual;
    out << j.dump(2) << '\n';
    return exit_ok;
}

int run_sample(const SampleArgs &a, std::ostream &out, std::ostream &err) {
    const auto dist = resolve_distribution(a.dist);
    Stream seq_rng(derive_key(a.seed, Purpose::sequence));
    const auto seq = realize_sequence(dist, a.n, seq_rng);
    Stream match_rng(derive_key(a.seed, Purpose::matching));
    const auto sample = sample_simple(seq, match_rng, a.max_attempts);
    err << "sampled simple digraph after " << sample.attempts << " attempt(s)\n";
    Sink sink(a.out_path, out);
    write_edge_list(sink.get(), sample.graph, {a.seed, {}, false});
    return exit_ok;
}

int run_percolate(const PercolateArgs &a, std::ostream &out) {
    const auto input = load_edge_list(a.graph);
    const auto mode = parse_percolation_mode(a.mode);
    const auto outcome = percolate(input.graph, a.pi, mode, derive_key(a.seed, Purpose::percolation));
    Sink sink(a.out_path, out);
    write_edge_list(sink.get(), outcome.graph, {a.seed, outcome.deleted_vertices, mode == PercolationMode::site});
    return exit_ok;
}

int run_scc(const SccArgs &a, std::ostream &out) {
    const auto input = load_edge_list(a.graph);
    const auto partition = strongly_connected_components(input.graph);
    out << partition.count() << " component(s); largest = " << partition.largest_size << '\n';
    if (!a.labels_path.empty()) {
        Sink sink(a.labels_path, out);
        write_component_labels(sink.get(), partition);
    }
    return exit_ok;
}

int run_experiment_cmd(const ExperimentArgs &a, std::ostream &out, std::ostream &err) {
    ExperimentConfig config = a.config_path.empty() ? ExperimentConfig{} : load_config(a.config_path);
    for (const auto &[key, value] : a.overrides)
        apply_config_setting(config, key, value);
    const auto dist = resolve_distribution(config.distribution);
    const auto result = run_experiment(config, dist);

    std::size_t failed = 0;
    for (const auto &r : result.records)
        failed += r.ok ? 0 : 1;
    if (failed > 0)
        err << failed << " trial(s) failed after " << max_trial_retries << " retries\n";

    {
        Sink csv(config.csv_path, out);
        write_csv(csv.get(), result.records);
    }
    if (!config.summary_path.empty()) {
        Sink summary(config.summary_path, out);
        write_summary_json(summary.get(), result.summary);
    } else if (!config.csv_path.empty()) {
        write_summary_json(out, result.summary);
    }
    return exit_ok;
}

int run_check(const CheckArgs &a, std::ostream &out) {
    const auto seq = load_sequence(a.seq);
    const auto validity = validate(seq);
    Json j;
    j["n"] = seq.size();
    j["valid"] = validity.valid;
    j["in_sum"] = validity.in_sum;
    j["out_sum"] = validity.out_sum;
    if (!validity.valid) {
        out << j.dump(2) << '\n';
        return exit_runtime;
    }
    const auto report = properness_report(seq);
    j["graphical"] = report.graphical;
    j["d_max"] = report.d_max;
    j["d_max_bound"] = report.d_max_bound;
    j["d_max_ok"] = report.d_max_ok;
    j["rho"] = report.rho;
    j["rho_vs_dmax_ratio"] = report.rho_vs_dmax_ratio;
    Json moments;
    for (int i = 0; i < 3; ++i)
        for (int l = 0; l < 3; ++l)
            moments["mu" + std::to_string(i) + std::to_string(l)] = report.empirical_moments(i, l);
    j["empirical_moments"] = moments;
    out << j.dump(2) << '\n';
    return exit_ok;
}

} // namespace

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Percolation on directed configuration-model graphs", "dpercol"};
    app.set_version_flag("--version", std::string(version));
    app.require_subcommand(1);
    std::size_t threads = 1;
    auto *threads_opt = app.add_option("--threads", threads, "Maximum worker threads")->check(CLI::PositiveNumber);

    TheoryArgs theory;
    auto *theory_cmd = app.add_subcommand("theory", "Print the predicted threshold and GSCC fractions as JSON");
    theory_cmd->add_option("--dist", theory.dist, "Degree distribution")->required();
    theory_cmd->add_option("--pi", theory.pi, "Percolation probability");
    theory_cmd->add_option("--mode", theory.mode, "bond | site | none");

    SampleArgs sample;
    auto *sample_cmd = app.add_subcommand("sample", "Sample a uniform simple digraph and write its edge list");
    sample_cmd->add_option("--dist", sample.dist, "Degree distribution")->required();
    sample_cmd->add_option("--n", sample.n, "Number of vertices")->required()->check(CLI::PositiveNumber);
    sample_cmd->add_option("--seed", sample.seed, "Random seed");
    sample_cmd->add_option("--max-attempts", sample.max_attempts, "Rejection cap")->check(CLI::PositiveNumber);
    sample_cmd->add_option("--out", sample.out_path, "Output file (default stdout)");

    PercolateArgs perc;
    auto *perc_cmd = app.add_subcommand("percolate", "Percolate an edge list");
    perc_cmd->add_option("--graph", perc.graph, "Edge-list file")->required();
    perc_cmd->add_option("--pi", perc.pi, "Percolation probability")->required();
    perc_cmd->add_option("--mode", perc.mode, "bond | site");
    perc_cmd->add_option("--seed", perc.seed, "Random seed");
    perc_cmd->add_option("--out", perc.out_path, "Output file (default stdout)");

    SccArgs scc;
    auto *scc_cmd = app.add_subcommand("scc", "Strongly connected component sizes");
    scc_cmd->add_option("--graph", scc.graph, "Edge-list file")->required();
    scc_cmd->add_option("--labels", scc.labels_path, "Write `vertex label` lines to this file");

    ExperimentArgs exp;
    auto *exp_cmd = app.add_subcommand("experiment", "Run seeded Monte Carlo trials over a pi grid");
    exp_cmd->add_option("--config", exp.config_path, "Config file of `key = value` lines");
    for (const char *key : {"dist", "n", "mode", "pi", "trials", "seed", "max_attempts", "csv", "summary",
                            "fixed_sequence", "timing"}) {
        std::string flag = std::string("--") + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        exp_cmd->add_option_function<std::string>(
            flag, [&exp, key](const std::string &value) { exp.overrides.emplace_back(key, value); },
            std::string("Overrides config key ") + key);
    }

    CheckArgs check;
    auto *check_cmd = app.add_subcommand("check", "Validity, graphicality and properness report for a sequence");
    check_cmd->add_option("--seq", check.seq, "Degree-sequence file")->required();

    std::vector<const char *> argv;
    argv.reserve(args.size());
    for (const auto &a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success &e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (theory_cmd->parsed())
            return run_theory(theory, out, err);
        if (sample_cmd->parsed())
            return run_sample(sample, out, err);
        if (perc_cmd->parsed())
            return run_percolate(perc, out);
        if (scc_cmd->parsed())
            return run_scc(scc, out);
        if (exp_cmd->parsed()) {
            if (threads_opt->count() > 0)
                exp.overrides.emplace_back("threads", std::to_string(threads));
            return run_experiment_cmd(exp, out, err);
        }
        if (check_cmd->parsed())
            return run_check(check, out);
    } catch (const Error &e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_runtime;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_usage;
}

} // namespace dpercol::cli
