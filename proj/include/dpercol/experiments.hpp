#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dpercol/configmodel.hpp"
#include "dpercol/degrees.hpp"
#include "dpercol/percolation.hpp"

namespace dpercol {

struct ExperimentConfig {
    /// `poisson:<l>`, `const:<d>`, `geometric:<p>` or `file:<path>`.
    std::string distribution = "poisson:2";
    std::size_t n = 1000;
    PercolationMode mode = PercolationMode::bond;
    std::vector<double> pi_grid;
    std::size_t trials = 1;
    std::uint64_t master_seed = 0;
    std::uint64_t max_rejection_attempts = default_max_attempts;
    std::size_t threads = 1;
    /// Share one realized degree sequence across all trials.
    bool fixed_sequence = false;
    /// Fill elapsed_ms; off by default so output is byte-reproducible.
    bool record_timing = false;
    std::string csv_path;
    std::string summary_path;

    /// Throws ErrorKind::out_of_range on an empty or out-of-range grid, trials == 0 or n == 0.
    void validate() const;
};

/// `key = value` lines, `#` comments. Keys: dist, n, mode, pi (comma or space
/// separated), trials, seed, max_attempts, threads, fixed_sequence, timing,
/// csv, summary.
ExperimentConfig read_config(std::istream &in);
ExperimentConfig load_config(const std::string &path);

/// Applies one `key = value` setting.
void apply_config_setting(ExperimentConfig &config, const std::string &key, const std::string &value);

/// Retries per trial after a rejection-exhausted (or otherwise failed) sample.
inline constexpr int max_trial_retries = 3;

struct TrialRecord {
    double pi = 0.0;
    std::size_t pi_index = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t m_before = 0;
    std::size_t m_after = 0;
    std::size_t deleted = 0;
    std::size_t scc_size = 0;
    double scc_fraction = 0.0;
    std::uint64_t attempts = 0;
    double elapsed_ms = 0.0;
    bool ok = false;
};

struct SummaryRow {
    double pi = 0.0;
    std::size_t trials_ok = 0;
    std::size_t trials_failed = 0;
    double mean = 0.0;
    double std = 0.0; ///< sample standard deviation; 0 for a single trial
    double min = 0.0;
    double max = 0.0;
    double theory_c = 0.0;
    double pi_c = 0.0;
};

struct ExperimentResult {
    std::vector<TrialRecord> records; ///< ordered by (pi index, trial index)
    std::vector<SummaryRow> summary;
};

/// Seed of trial (pi_index, trial) under `master_seed`.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t pi_index, std::size_t trial);

/// One trial: realize a sequence (unless `fixed` is given), sample a uniform
/// simple digraph, percolate, measure the largest SCC. Failures are retried
/// with fresh sub-seeds up to max_trial_retries times, then recorded as failed.
TrialRecord run_trial(const DegreeDistribution &dist, const ExperimentConfig &config, std::size_t pi_index,
                      std::size_t trial, const DegreeSequence *fixed = nullptr);

ExperimentResult run_experiment(const ExperimentConfig &config);
ExperimentResult run_experiment(const ExperimentConfig &config, const DegreeDistribution &dist);

/// Per-pi statistics over successful trials, with the predicted fraction for
/// `mode` attached. Throws ErrorKind::empty_input on no records.
std::vector<SummaryRow> summarize(std::span<const TrialRecord> records, const DegreeDistribution &dist,
                                  PercolationMode mode);

inline constexpr const char *csv_header =
    "pi,trial,seed,n,m_before,m_after,deleted,scc_size,scc_fraction,attempts,elapsed_ms,status";

void write_csv(std::ostream &out, std::span<const TrialRecord> records);
std::vector<TrialRecord> read_csv(std::istream &in);
void write_summary_json(std::ostream &out, std::span<const SummaryRow> summary);

/// Shortest round-trip decimal form.
std::string format_double(double value);

} // namespace dpercol
