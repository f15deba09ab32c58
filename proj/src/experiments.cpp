#include "dpercol/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dpercol/components.hpp"
#include "dpercol/distribution_io.hpp"
#include "dpercol/error.hpp"
#include "dpercol/rng.hpp"
#include "dpercol/theory.hpp"

namespace dpercol {

void ExperimentConfig::validate() const {
    if (n == 0)
        throw Error(ErrorKind::out_of_range, "n must be at least 1");
    if (trials == 0)
        throw Error(ErrorKind::out_of_range, "trials must be at least 1");
    if (pi_grid.empty())
        throw Error(ErrorKind::out_of_range, "pi grid is empty");
    for (const double pi : pi_grid)
        if (!(pi > 0.0 && pi <= 1.0))
            throw Error(ErrorKind::out_of_range, "pi grid entry " + format_double(pi) + " outside (0, 1]");
    if (max_rejection_attempts == 0)
        throw Error(ErrorKind::out_of_range, "max_attempts must be at least 1");
}

namespace {

std::string trim(const std::string &s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_unsigned(const std::string &key, const std::string &value) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw Error(ErrorKind::parse_error, "invalid value '" + value + "' for " + key);
    return out;
}

double parse_real(const std::string &key, const std::string &value) {
    std::istringstream ss(value);
    double out = 0.0;
    if (!(ss >> out) || !(ss >> std::ws).eof())
        throw Error(ErrorKind::parse_error, "invalid value '" + value + "' for " + key);
    return out;
}

bool parse_bool(const std::string &key, const std::string &value) {
    if (value == "true" || value == "1" || value == "yes")
        return true;
    if (value == "false" || value == "0" || value == "no")
        return false;
    throw Error(ErrorKind::parse_error, "invalid boolean '" + value + "' for " + key);
}

} // namespace

void apply_config_setting(ExperimentConfig &config, const std::string &key, const std::string &value) {
    if (key == "dist" || key == "distribution") {
        config.distribution = value;
    } else if (key == "n") {
        config.n = parse_unsigned<std::size_t>(key, value);
    } else if (key == "mode") {
        config.mode = parse_percolation_mode(value);
    } else if (key == "pi") {
        config.pi_grid.clear();
        std::string list = value;
        std::replace(list.begin(), list.end(), ',', ' ');
        std::istringstream ss(list);
        std::string token;
        while (ss >> token)
            config.pi_grid.push_back(parse_real(key, token));
    } else if (key == "trials") {
        config.trials = parse_unsigned<std::size_t>(key, value);
    } else if (key == "seed") {
        config.master_seed = parse_unsigned<std::uint64_t>(key, value);
    } else if (key == "max_attempts") {
        config.max_rejection_attempts = parse_unsigned<std::uint64_t>(key, value);
    } else if (key == "threads") {
        config.threads = parse_unsigned<std::size_t>(key, value);
    } else if (key == "fixed_sequence") {
        config.fixed_sequence = parse_bool(key, value);
    } else if (key == "timing") {
        config.record_timing = parse_bool(key, value);
    } else if (key == "csv") {
        config.csv_path = value;
    } else if (key == "summary") {
        config.summary_path = value;
    } else {
        throw Error(ErrorKind::parse_error, "unknown config key '" + key + "'");
    }
}

ExperimentConfig read_config(std::istream &in) {
    ExperimentConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::parse_error, "config line " + std::to_string(line_no) + ": expected `key = value`");
        apply_config_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::io_error, "cannot open '" + path + "'");
    return read_config(in);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t pi_index, std::size_t trial) {
    return derive_key(master_seed, pi_index, trial);
}

TrialRecord run_trial(const DegreeDistribution &dist, const ExperimentConfig &config, std::size_t pi_index,
                      std::size_t trial, const DegreeSequence *fixed) {
    const auto start = std::chrono::steady_clock::now();
    TrialRecord record;
    record.pi = config.pi_grid.at(pi_index);
    record.pi_index = pi_index;
    record.trial = trial;
    record.n = config.n;

    std::uint64_t seed = trial_seed(config.master_seed, pi_index, trial);
    for (int retry = 0; retry <= max_trial_retries; ++retry) {
        if (retry > 0)
            seed = derive_key(seed, Purpose::retry, retry);
        record.seed = seed;
        try {
            DegreeSequence realized;
            if (!fixed) {
                Stream seq_rng(derive_key(seed, Purpose::sequence));
                realized = realize_sequence(dist, config.n, seq_rng);
            }
            const DegreeSequence &seq = fixed ? *fixed : realized;
            Stream match_rng(derive_key(seed, Purpose::matching));
            SimpleSample sample = sample_simple(seq, match_rng, config.max_rejection_attempts);
            record.attempts += sample.attempts;

            const auto outcome =
                percolate(sample.graph, record.pi, config.mode, derive_key(seed, Purpose::percolation));
            const auto partition = strongly_connected_components(outcome.graph);
            record.m_before = sample.graph.edge_count();
            record.m_after = outcome.surviving_edges;
            record.deleted = outcome.deleted_vertices.size();
            record.scc_size = partition.largest_size;
            record.scc_fraction = static_cast<double>(partition.largest_size) / static_cast<double>(config.n);
            record.ok = true;
            break;
        } catch (const AttemptsExhausted &e) {
            record.attempts += e.attempts();
        } catch (const Error &) {
            // not graphical or unbalanced realization: retry under a fresh sub-seed
        }
    }
    if (config.record_timing)
        record.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return record;
}

ExperimentResult run_experiment(const ExperimentConfig &config) {
    return run_experiment(config, parse_distribution_spec(config.distribution));
}

ExperimentResult run_experiment(const ExperimentConfig &config, const DegreeDistribution &dist) {
    config.validate();

    DegreeSequence shared;
    if (config.fixed_sequence) {
        Stream rng(derive_key(config.master_seed, Purpose::sequence));
        shared = realize_sequence(dist, config.n, rng);
    }
    const DegreeSequence *fixed = config.fixed_sequence ? &shared : nullptr;

    const std::size_t jobs = config.pi_grid.size() * config.trials;
    ExperimentResult result;
    result.records.resize(jobs);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t job = next++; job < jobs; job = next++)
            result.records[job] = run_trial(dist, config, job / config.trials, job % config.trials, fixed);
    };
    const std::size_t threads = std::clamp<std::size_t>(config.threads, 1, jobs);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }

    result.summary = summarize(result.records, dist, config.mode);
    return result;
}

std::vector<SummaryRow> summarize(std::span<const TrialRecord> records, const DegreeDistribution &dist,
                                  PercolationMode mode) {
    if (records.empty())
        throw Error(ErrorKind::empty_input, "no trial records to summarize");

    std::vector<double> grid;
    for (const auto &r : records)
        if (std::find(grid.begin(), grid.end(), r.pi) == grid.end())
            grid.push_back(r.pi);

    const double pi_c = critical_threshold(dist).pi_c;
    const TheoryMode theory_mode = mode == PercolationMode::bond ? TheoryMode::bond : TheoryMode::site;

    std::vector<SummaryRow> rows;
    for (const double pi : grid) {
        SummaryRow row;
        row.pi = pi;
        row.pi_c = pi_c;
        row.theory_c = gscc_fraction(dist, pi, theory_mode).fraction();
        std::vector<double> values;
        for (const auto &r : records) {
            if (r.pi != pi)
                continue;
            if (r.ok)
                values.push_back(r.scc_fraction);
            else
                ++row.trials_failed;
        }
        row.trials_ok = values.size();
        if (values.empty()) {
            row.mean = row.std = row.min = row.max = std::numeric_limits<double>::quiet_NaN();
        } else {
            double sum = 0.0;
            for (const double v : values)
                sum += v;
            row.mean = sum / static_cast<double>(values.size());
            double ss = 0.0;
            for (const double v : values)
                ss += (v - row.mean) * (v - row.mean);
            row.std = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
            row.min = *std::min_element(values.begin(), values.end());
            row.max = *std::max_element(values.begin(), values.end());
        }
        rows.push_back(row);
    }
    return rows;
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void write_csv(std::ostream &out, std::span<const TrialRecord> records) {
    out << csv_header << '\n';
    for (const auto &r : records) {
        out << format_double(r.pi) << ',' << r.trial << ',' << r.seed << ',' << r.n << ',' << r.m_before << ','
            << r.m_after << ',' << r.deleted << ',' << r.scc_size << ',' << format_double(r.scc_fraction) << ','
            << r.attempts << ',' << format_double(r.elapsed_ms) << ',' << (r.ok ? "ok" : "failed") << '\n';
    }
}

std::vector<TrialRecord> read_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != csv_header)
        throw Error(ErrorKind::parse_error, "missing or unexpected CSV header");
    std::vector<TrialRecord> records;
    std::vector<double> grid;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        std::vector<std::string> fields;
        std::istringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            fields.push_back(trim(field));
        if (fields.size() != 12)
            throw Error(ErrorKind::parse_error, "CSV line " + std::to_string(line_no) + ": expected 12 fields");
        TrialRecord r;
        r.pi = parse_real("pi", fields[0]);
        r.trial = parse_unsigned<std::size_t>("trial", fields[1]);
        r.seed = parse_unsigned<std::uint64_t>("seed", fields[2]);
        r.n = parse_unsigned<std::size_t>("n", fields[3]);
        r.m_before = parse_unsigned<std::size_t>("m_before", fields[4]);
        r.m_after = parse_unsigned<std::size_t>("m_after", fields[5]);
        r.deleted = parse_unsigned<std::size_t>("deleted", fields[6]);
        r.scc_size = parse_unsigned<std::size_t>("scc_size", fields[7]);
        r.scc_fraction = parse_real("scc_fraction", fields[8]);
        r.attempts = parse_unsigned<std::uint64_t>("attempts", fields[9]);
        r.elapsed_ms = parse_real("elapsed_ms", fields[10]);
        r.ok = fields[11] == "ok";
        auto it = std::find(grid.begin(), grid.end(), r.pi);
        if (it == grid.end())
            it = grid.insert(grid.end(), r.pi);
        r.pi_index = static_cast<std::size_t>(it - grid.begin());
        records.push_back(r);
    }
    return records;
}

void write_summary_json(std::ostream &out, std::span<const SummaryRow> summary) {
    using Json = nlohmann::ordered_json;
    auto number = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
    Json rows = Json::array();
    for (const auto &row : summary) {
        Json obj;
        obj["pi"] = row.pi;
        obj["trials_ok"] = row.trials_ok;
        obj["trials_failed"] = row.trials_failed;
        obj["mean"] = number(row.mean);
        obj["std"] = number(row.std);
        obj["min"] = number(row.min);
        obj["max"] = number(row.max);
        obj["theory_c"] = number(row.theory_c);
        obj["pi_c"] = number(row.pi_c);
        rows.push_back(std::move(obj));
    }
    out << rows.dump(2) << '\n';
}

} // namespace dpercol
