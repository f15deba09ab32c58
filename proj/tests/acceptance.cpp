// Acceptance suite: one PASS/FAIL line per criterion. Each criterion passes
// only if its statistical or exact check holds and it finishes inside its
// runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dpercol/cli.hpp"
#include "dpercol/components.hpp"
#include "dpercol/configmodel.hpp"
#include "dpercol/experiments.hpp"
#include "dpercol/percolation.hpp"
#include "dpercol/theory.hpp"
#include "oracles.hpp"

using namespace dpercol;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

int failures = 0;

void criterion(int id, const char *name, double budget_s, const std::function<Verdict()> &body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception &e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < budget_s;
    const bool ok = v.pass && in_time;
    failures += !ok;
    std::printf("[%s] %2d %s: %s (%.2f s, budget %.0f s%s)\n", ok ? "PASS" : "FAIL", id, name, v.detail.c_str(), secs,
                budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
}

DegreeSequence seq_of(std::initializer_list<DegreePair> pairs) { return DegreeSequence(std::vector<DegreePair>(pairs)); }

ExperimentConfig poisson_run(PercolationMode mode, double pi, std::uint64_t seed) {
    ExperimentConfig c;
    c.distribution = "poisson:2";
    c.n = 100000;
    c.mode = mode;
    c.pi_grid = {pi};
    c.trials = 20;
    c.master_seed = seed;
    return c;
}

/// Multisets of nonzero (in, out) pairs with equal in/out sums between 1 and max_m.
std::vector<DegreeSequence> sequences_up_to(std::uint32_t max_m) {
    std::vector<DegreePair> kinds;
    for (std::uint32_t a = 0; a <= max_m; ++a)
        for (std::uint32_t b = 0; b <= max_m; ++b)
            if (a + b > 0)
                kinds.push_back({a, b});
    std::vector<DegreeSequence> out;
    std::vector<DegreePair> cur;
    std::function<void(std::size_t, std::uint32_t, std::uint32_t)> rec = [&](std::size_t from, std::uint32_t in,
                                                                              std::uint32_t o) {
        if (in == o && in > 0)
            out.emplace_back(cur);
        for (std::size_t i = from; i < kinds.size(); ++i) {
            if (in + kinds[i].in > max_m || o + kinds[i].out > max_m)
                continue;
            cur.push_back(kinds[i]);
            rec(i, in + kinds[i].in, o + kinds[i].out);
            cur.pop_back();
        }
    };
    rec(0, 0, 0);
    return out;
}

} // namespace

int main() {
    std::printf("acceptance suite\n");

    criterion(1, "configuration-model uniformity on [(1,1),(1,1)]", 5, [] {
        const auto seq = seq_of({{1, 1}, {1, 1}});
        Stream rng(derive_key(1001, Purpose::matching));
        double loops = 0, cycles = 0;
        for (int i = 0; i < 100000; ++i) {
            const auto g = sample_configuration(seq, rng);
            (g.edges()[0].source == g.edges()[0].target ? loops : cycles) += 1;
        }
        const double p = oracle::chi_square_p({loops, cycles}, {0.5, 0.5});
        return Verdict{p > 0.001, fmt("self-loops %.0f, 2-cycle %.0f, chi-square p = %.4f", loops, cycles, p)};
    });

    criterion(2, "uniformity conditional on simple, [(1,1)x3]", 10, [] {
        const auto seq = seq_of({{1, 1}, {1, 1}, {1, 1}});
        Stream rng(derive_key(1002, Purpose::matching));
        double forward = 0, backward = 0, other = 0;
        for (int i = 0; i < 100000; ++i) {
            const auto g = sample_simple(seq, rng).graph;
            const auto e = oracle::canonical_edges(g);
            if (e == std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}})
                forward += 1;
            else if (e == std::vector<Edge>{{0, 2}, {1, 0}, {2, 1}})
                backward += 1;
            else
                other += 1;
        }
        const double p = oracle::chi_square_p({forward, backward}, {0.5, 0.5});
        return Verdict{other == 0 && p > 0.001,
                       fmt("0->1->2->0 %.0f, 0->2->1->0 %.0f, other %.0f, chi-square p = %.4f", forward, backward,
                           other, p)};
    });

    criterion(3, "exact matching probabilities sum to 1 for every sequence with m <= 6", 30, [] {
        std::size_t sequences = 0, graphs = 0, bad = 0;
        for (const auto &seq : sequences_up_to(6)) {
            Rational total = 0;
            for (const auto &y : oracle::all_multigraphs(seq)) {
                const auto p = matching_probability(oracle::graph_from_multiplicities(y), seq);
                if (!p.exact)
                    throw std::runtime_error("no exact probability");
                total += *p.exact;
                ++graphs;
            }
            ++sequences;
            bad += total != 1;
        }
        return Verdict{bad == 0 && sequences > 0,
                       fmt("%zu sequences, %zu multigraphs, %zu sums different from 1", sequences, graphs, bad)};
    });

    const double beta = oracle::poisson_survival(1.6);
    const double c_bond_oracle = beta * beta;

    criterion(4, "supercritical bond fraction, Poisson(2), pi = 0.8, n = 1e5", 300, [&] {
        const auto r = run_experiment(poisson_run(PercolationMode::bond, 0.8, 4004));
        const auto &row = r.summary.at(0);
        const bool ok = row.trials_ok == 20 && std::abs(row.mean - c_bond_oracle) <= 0.01;
        return Verdict{ok, fmt("mean %.5f (std %.5f, %zu ok) vs oracle (1-x*)^2 = %.5f; theory module %.5f", row.mean,
                               row.std, row.trials_ok, c_bond_oracle, row.theory_c)};
    });

    criterion(5, "site fraction equals pi times bond fraction, pi = 0.8, n = 1e5", 300, [&] {
        const auto r = run_experiment(poisson_run(PercolationMode::site, 0.8, 5005));
        const auto &row = r.summary.at(0);
        const double target = 0.8 * c_bond_oracle;
        const bool ok = row.trials_ok == 20 && std::abs(row.mean - target) <= 0.01;
        return Verdict{ok, fmt("mean %.5f (std %.5f, %zu ok) vs 0.8 c_bond = %.5f; theory module %.5f", row.mean,
                               row.std, row.trials_ok, target, row.theory_c)};
    });

    criterion(6, "subcritical, pi = 0.4 < pi_c = 0.5, n = 1e5", 180, [] {
        const auto r = run_experiment(poisson_run(PercolationMode::bond, 0.4, 6006));
        double worst = 0.0;
        bool all_ok = true;
        for (const auto &t : r.records) {
            all_ok = all_ok && t.ok;
            worst = std::max(worst, t.scc_fraction);
        }
        const double pi_c = critical_threshold(poisson_distribution(2.0)).pi_c;
        return Verdict{all_ok && worst < 0.01 && std::abs(pi_c - 0.5) < 1e-9,
                       fmt("max trial fraction %.6f over %zu trials, pi_c = %.6f", worst, r.records.size(), pi_c)};
    });

    criterion(7, "bond-percolated degree distribution, n = 1e5, pi = 0.8", 60, [] {
        const auto target = poisson_distribution(2.0);
        Stream seq_rng(derive_key(7007, Purpose::sequence));
        const auto seq = realize_sequence(target, 100000, seq_rng);
        Stream match_rng(derive_key(7007, Purpose::matching));
        const auto g = sample_simple(seq, match_rng).graph;
        const auto o = bond_percolate(g, 0.8, derive_key(7007, Purpose::percolation));
        const auto observed = empirical_distribution(o.induced_sequence).distribution;
        const double tv_target = total_variation(observed, bond_distribution(target, 0.8));
        const double tv_realized =
            total_variation(observed, bond_distribution(empirical_distribution(seq).distribution, 0.8));
        return Verdict{tv_target < 0.01 && tv_realized < 0.01,
                       fmt("TV to thinned target %.5f, TV to thinned realized sequence %.5f", tv_target, tv_realized)};
    });

    criterion(8, "moment identities of the thinned distributions", 1, [] {
        Stream rng(8008);
        double worst = 0.0;
        for (int d = 0; d < 10; ++d) {
            // Symmetric pairs keep the in and out means equal.
            std::vector<DegreeEntry> entries;
            const int support = 2 + static_cast<int>(rng.below(5));
            double total = 0.0;
            for (int s = 0; s < support; ++s) {
                const auto j = static_cast<std::uint32_t>(rng.below(12));
                const auto k = static_cast<std::uint32_t>(rng.below(12));
                const double w = 0.05 + rng.uniform();
                entries.push_back({j, k, w});
                entries.push_back({k, j, w});
                total += 2 * w;
            }
            for (auto &e : entries)
                e.probability /= total;
            const auto dist = DegreeDistribution::from_entries(entries);
            const double pi = 0.05 + 0.9 * rng.uniform();
            const auto b = bond_distribution(dist, pi);
            const auto s = site_distribution(dist, pi);
            for (double err : {b.mean() - pi * dist.mean(), b.mu11() - pi * pi * dist.mu11(),
                               s.mean() - pi * pi * dist.mean(), s.mu11() - pi * pi * pi * dist.mu11(),
                               b.table().sum() - 1.0, s.table().sum() - 1.0})
                worst = std::max(worst, std::abs(err));
        }
        return Verdict{worst <= 1e-9, fmt("largest deviation %.3e over 10 distributions", worst)};
    });

    criterion(9, "SCC partition equals transitive-closure classes", 10, [] {
        Stream rng(9009);
        int mismatches = 0;
        for (int t = 0; t < 1000; ++t) {
            const std::size_t n = 1 + rng.below(8);
            const std::size_t m = rng.below(2 * n * n + 1);
            std::vector<Edge> edges(m);
            for (auto &e : edges)
                e = {static_cast<Vertex>(rng.below(n)), static_cast<Vertex>(rng.below(n))};
            const Digraph g(n, std::move(edges));
            const auto expected = oracle::mutual_reachability_classes(g);
            const auto labels = strongly_connected_components(g).component_id;
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = 0; v < n; ++v)
                    mismatches += (labels[u] == labels[v]) != (expected[u] == expected[v]);
        }
        return Verdict{mismatches == 0, fmt("1000 digraphs, %d mismatched vertex pairs", mismatches)};
    });

    criterion(10, "graphicality equals exhaustive realization, n <= 4, degrees <= 3", 60, [] {
        std::size_t checked = 0, mismatches = 0, graphical = 0;
        for (std::size_t n = 1; n <= 4; ++n) {
            const auto realizable = oracle::simple_realizable_profiles(n);
            for (const auto &seq : oracle::all_valid_sequences(n, 3)) {
                const std::vector<DegreePair> pairs(seq.pairs().begin(), seq.pairs().end());
                const bool expected = realizable.count(pairs) > 0;
                mismatches += is_graphical(seq) != expected;
                graphical += expected;
                ++checked;
            }
        }
        return Verdict{mismatches == 0 && checked > 0,
                       fmt("%zu valid sequences (%zu graphical), %zu mismatches", checked, graphical, mismatches)};
    });

    criterion(11, "simple-acceptance rate, Poisson(2), n = 1e4, 1e5 attempts", 300, [] {
        const auto dist = poisson_distribution(2.0);
        constexpr int attempts = 100000;
        int simple = 0;
        for (int a = 0; a < attempts; ++a) {
            Stream seq_rng(derive_key(1111, Purpose::sequence, a));
            const auto seq = realize_sequence(dist, 10000, seq_rng);
            Stream match_rng(derive_key(1111, Purpose::matching, a));
            simple += try_simple_configuration(seq, match_rng).has_value();
        }
        const double rate = double(simple) / attempts;
        const double printed = simple_probability(dist, SimpleFormula::as_printed);
        const double standard = simple_probability(dist, SimpleFormula::standard);
        const auto z = [&](double p) { return (rate - p) / std::sqrt(p * (1 - p) / attempts); };
        const bool printed_in = std::abs(z(printed)) <= 3;
        const bool standard_in = std::abs(z(standard)) <= 3;
        const char *which = printed_in && standard_in ? "both"
                            : printed_in              ? "as_printed"
                            : standard_in             ? "standard"
                                                      : "neither";
        return Verdict{printed_in != standard_in,
                       fmt("rate %.5f; as_printed %.3e (z = %.1f), standard %.5f (z = %.2f); within 3 sigma: %s", rate,
                           printed, z(printed), standard, z(standard), which)};
    });

    criterion(12, "repeated CLI invocations are byte-identical", 30, [] {
        const auto run = [](std::vector<std::string> args) {
            args.insert(args.begin(), "dpercol");
            std::ostringstream out, err;
            const int code = cli::dispatch(args, out, err);
            return std::make_pair(code, out.str());
        };
        const auto dir = std::filesystem::temp_directory_path() / "dpercol-acceptance";
        std::filesystem::create_directories(dir);
        const auto graph = (dir / "g.txt").string();
        const auto seq = (dir / "s.txt").string();
        {
            std::ofstream(graph) << run({"sample", "--dist", "poisson:2", "--n", "5000", "--seed", "12"}).second;
            std::ofstream(seq) << "1 1\n2 0\n0 2\n";
        }
        const std::vector<std::vector<std::string>> commands{
            {"theory", "--dist", "poisson:2", "--pi", "0.8", "--mode", "bond"},
            {"sample", "--dist", "poisson:2", "--n", "5000", "--seed", "12"},
            {"percolate", "--graph", graph, "--pi", "0.7", "--mode", "site", "--seed", "3"},
            {"percolate", "--graph", graph, "--pi", "0.7", "--mode", "bond", "--seed", "3"},
            {"scc", "--graph", graph},
            {"check", "--seq", seq},
            {"experiment", "--dist", "poisson:2", "--n", "5000", "--pi", "0.6,0.8", "--trials", "4", "--seed", "9"},
            {"--threads", "4", "experiment", "--dist", "poisson:2", "--n", "5000", "--pi", "0.6,0.8", "--trials", "4",
             "--seed", "9"},
        };
        std::size_t identical = 0;
        std::vector<std::string> outputs;
        for (const auto &cmd : commands) {
            const auto a = run(cmd);
            const auto b = run(cmd);
            identical += a == b && a.first == cli::exit_ok && !a.second.empty();
            outputs.push_back(a.second);
        }
        std::filesystem::remove_all(dir);
        const bool threads_agree = outputs[6] == outputs[7];
        return Verdict{identical == commands.size() && threads_agree,
                       fmt("%zu of %zu invocations byte-identical; thread count %s output", identical, commands.size(),
                           threads_agree ? "does not change" : "changes")};
    });

    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
