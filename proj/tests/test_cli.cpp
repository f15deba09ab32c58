#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "dpercol/cli.hpp"
#include "dpercol/graph_io.hpp"

using namespace dpercol;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "dpercol");
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

/// Scratch directory removed on destruction.
struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / ("dpercol-cli-" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string write(const std::string &name, const std::string &text) const {
        const auto p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string path(const std::string &name) const { return (dir / name).string(); }
};

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("theory prints the prediction JSON") {
    const auto r = run({"theory", "--dist", "poisson:2", "--pi", "0.8", "--mode", "bond"});
    REQUIRE(r.code == cli::exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it)
        keys.push_back(it.key());
    CHECK(keys.size() == 9);
    CHECK(j["pi_c"].get<double>() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(j["c_bond"].get<double>() == doctest::Approx(0.41214001181578547).epsilon(1e-9));
    CHECK(j["c_site"].get<double>() == doctest::Approx(0.8 * 0.41214001181578547).epsilon(1e-9));
    CHECK(j["x_star"].get<double>() == doctest::Approx(0.3580186826582993).epsilon(1e-9));
    CHECK(j.contains("zeta"));
    CHECK(j.contains("solver_iters"));
    CHECK(j.contains("solver_residual"));
    CHECK(r.err.empty());

    const auto at = run({"theory", "--dist", "const:2", "--pi", "0.5"});
    CHECK(at.code == cli::exit_ok);
    CHECK(nlohmann::json::parse(at.out)["c_bond"] == 0.0);
    CHECK(at.err.find("pi_c") != std::string::npos);
}

TEST_CASE("theory reads a distribution file") {
    Scratch s;
    const auto path = s.write("d.txt", "# unit\n1 1 1.0\n");
    for (const auto &spec : {path, "file:" + path}) {
        const auto r = run({"theory", "--dist", spec, "--pi", "1", "--mode", "none"});
        CHECK(r.code == cli::exit_ok);
        CHECK(nlohmann::json::parse(r.out)["pi_c"] == 1.0);
    }
}

TEST_CASE("scc, sample and percolate") {
    Scratch s;
    const auto cycle = s.write("cycle.txt", "0 1\n1 0\n");
    auto r = run({"scc", "--graph", cycle});
    CHECK(r.code == cli::exit_ok);
    CHECK(r.out == "1 component(s); largest = 2\n");

    const auto labels = s.path("labels.txt");
    r = run({"scc", "--graph", cycle, "--labels", labels});
    CHECK(r.out == "1 component(s); largest = 2\n");
    CHECK(slurp(labels) == "0 0\n1 0\n");

    r = run({"sample", "--dist", "poisson:2", "--n", "500", "--seed", "9"});
    REQUIRE(r.code == cli::exit_ok);
    std::istringstream edges(r.out);
    const auto sampled = read_edge_list(edges);
    CHECK(sampled.graph.vertex_count() == 500);
    CHECK(sampled.graph.simple());
    CHECK(sampled.header.seed == 9u);
    CHECK(r.err.find("attempt") != std::string::npos);

    const auto graph = s.write("g.txt", r.out);
    r = run({"percolate", "--graph", graph, "--pi", "0.5", "--mode", "site", "--seed", "3"});
    REQUIRE(r.code == cli::exit_ok);
    std::istringstream perc(r.out);
    const auto site = read_edge_list(perc);
    CHECK(site.graph.vertex_count() == 500);
    CHECK_FALSE(site.header.deleted.empty());
    CHECK(site.graph.edge_count() < sampled.graph.edge_count());

    const auto out = s.path("bond.txt");
    r = run({"percolate", "--graph", graph, "--pi", "1", "--out", out});
    CHECK(r.code == cli::exit_ok);
    CHECK(r.out.empty());
    std::ifstream bond_in(out);
    CHECK(read_edge_list(bond_in).graph == sampled.graph);
}

TEST_CASE("check") {
    Scratch s;
    auto r = run({"check", "--seq", s.write("bad.txt", "2 0\n0 1\n")});
    CHECK(r.code == cli::exit_runtime);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["valid"] == false);
    CHECK(j["in_sum"] == 2);
    CHECK(j["out_sum"] == 1);

    r = run({"check", "--seq", s.write("good.txt", "1 1\n1 1\n")});
    CHECK(r.code == cli::exit_ok);
    j = nlohmann::json::parse(r.out);
    CHECK(j["valid"] == true);
    CHECK(j["graphical"] == true);
    CHECK(j["empirical_moments"]["mu11"] == 1.0);

    r = run({"check", "--seq", s.write("loop.txt", "1 1\n")});
    CHECK(r.code == cli::exit_ok);
    CHECK(nlohmann::json::parse(r.out)["graphical"] == false);
}

TEST_CASE("experiment writes CSV and summary") {
    Scratch s;
    const auto config = s.write("exp.cfg", "dist = poisson:2\nn = 1000\npi = 0.5, 0.9\ntrials = 2\nseed = 4\n");
    auto r = run({"experiment", "--config", config});
    REQUIRE(r.code == cli::exit_ok);
    CHECK(r.out.rfind("pi,trial,seed,", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);

    const auto csv = s.path("out.csv");
    const auto summary = s.path("summary.json");
    r = run({"--threads", "2", "experiment", "--config", config, "--trials", "3", "--csv", csv, "--summary", summary});
    REQUIRE(r.code == cli::exit_ok);
    CHECK(r.out.empty());
    const auto j = nlohmann::ordered_json::parse(slurp(summary));
    REQUIRE(j.size() == 2);
    CHECK(j[0]["trials_ok"] == 3);
    std::vector<std::string> keys;
    for (auto it = j[0].begin(); it != j[0].end(); ++it)
        keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"pi", "trials_ok", "trials_failed", "mean", "std", "min", "max",
                                           "theory_c", "pi_c"});

    r = run({"experiment", "--dist", "poisson:2", "--n", "300", "--pi", "0.7", "--csv", csv});
    CHECK(r.code == cli::exit_ok);
    CHECK(nlohmann::json::parse(r.out).size() == 1);
}

TEST_CASE("usage and runtime errors") {
    auto r = run({});
    CHECK(r.code == cli::exit_usage);
    CHECK_FALSE(r.err.empty());
    r = run({"frobnicate"});
    CHECK(r.code == cli::exit_usage);
    r = run({"theory"});
    CHECK(r.code == cli::exit_usage);
    CHECK(r.err.find("--dist") != std::string::npos);
    r = run({"sample", "--dist", "poisson:2", "--n", "zero"});
    CHECK(r.code == cli::exit_usage);

    r = run({"scc", "--graph", "/nonexistent/graph.txt"});
    CHECK(r.code == cli::exit_runtime);
    CHECK(r.out.empty());
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    r = run({"theory", "--dist", "poisson:2", "--pi", "1.5"});
    CHECK(r.code == cli::exit_runtime);
    r = run({"theory", "--dist", "poisson:2", "--mode", "sideways"});
    CHECK(r.code == cli::exit_runtime);
    r = run({"experiment", "--pi", "0"});
    CHECK(r.code == cli::exit_runtime);
}

TEST_CASE("version") {
    const auto r = run({"--version"});
    CHECK(r.code == cli::exit_ok);
    CHECK(r.out.find("dpercol") != std::string::npos);
}

TEST_CASE("repeat invocations are byte-identical") {
    Scratch s;
    const std::vector<std::vector<std::string>> commands{
        {"sample", "--dist", "poisson:2", "--n", "2000", "--seed", "77"},
        {"theory", "--dist", "geometric:0.4", "--pi", "0.9", "--mode", "site"},
        {"experiment", "--dist", "poisson:2", "--n", "500", "--pi", "0.6,0.9", "--trials", "3", "--seed", "5"},
    };
    for (const auto &cmd : commands) {
        const auto a = run(cmd);
        const auto b = run(cmd);
        CHECK(a.code == cli::exit_ok);
        CHECK(a.out == b.out);
    }
    const auto graph = s.write("g.txt", run(commands[0]).out);
    const std::vector<std::string> perc{"percolate", "--graph", graph, "--pi", "0.6", "--seed", "8"};
    CHECK(run(perc).out == run(perc).out);
}
