#include "dpercol/distribution_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "dpercol/error.hpp"

namespace dpercol {

namespace {

std::string strip_comment(const std::string &line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

[[noreturn]] void parse_failure(std::size_t line_no, const std::string &what) {
    throw Error(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": " + what);
}

std::ifstream open_or_throw(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::io_error, "cannot open '" + path + "'");
    return in;
}

double parse_double(std::string_view text, std::string_view what) {
    std::istringstream ss{std::string(text)};
    double value = 0.0;
    if (!(ss >> value) || !(ss >> std::ws).eof())
        throw Error(ErrorKind::parse_error, "invalid " + std::string(what) + " '" + std::string(text) + "'");
    return value;
}

} // namespace

DegreeDistribution read_distribution(std::istream &in) {
    std::vector<DegreeEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(strip_comment(line));
        long long j = 0, k = 0;
        double p = 0.0;
        if (!(ss >> j)) {
            if (ss.eof())
                continue; // blank
            parse_failure(line_no, "expected `j k p`");
        }
        if (!(ss >> k >> p) || !(ss >> std::ws).eof())
            parse_failure(line_no, "expected `j k p`");
        if (j < 0 || k < 0 || j > 0xFFFFFFFFLL || k > 0xFFFFFFFFLL)
            parse_failure(line_no, "degrees must be non-negative 32-bit integers");
        if (!(p >= 0.0))
            parse_failure(line_no, "probability must be non-negative");
        entries.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k), p});
    }
    if (entries.empty())
        throw Error(ErrorKind::parse_error, "degree distribution file has no entries");
    return DegreeDistribution::from_entries(entries, 1e-6);
}

DegreeDistribution load_distribution(const std::string &path) {
    auto in = open_or_throw(path);
    return read_distribution(in);
}

DegreeSequence read_sequence(std::istream &in) {
    std::vector<DegreePair> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(strip_comment(line));
        long long d_in = 0, d_out = 0;
        if (!(ss >> d_in)) {
            if (ss.eof())
                continue;
            parse_failure(line_no, "expected `d_in d_out`");
        }
        if (!(ss >> d_out) || !(ss >> std::ws).eof())
            parse_failure(line_no, "expected `d_in d_out`");
        if (d_in < 0 || d_out < 0 || d_in > 0xFFFFFFFFLL || d_out > 0xFFFFFFFFLL)
            parse_failure(line_no, "degrees must be non-negative 32-bit integers");
        pairs.push_back({static_cast<std::uint32_t>(d_in), static_cast<std::uint32_t>(d_out)});
    }
    return DegreeSequence(std::move(pairs));
}

DegreeSequence load_sequence(const std::string &path) {
    auto in = open_or_throw(path);
    return read_sequence(in);
}

void write_sequence(std::ostream &out, const DegreeSequence &seq) {
    for (const auto &p : seq.pairs())
        out << p.in << ' ' << p.out << '\n';
}

DegreeDistribution parse_distribution_spec(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw Error(ErrorKind::parse_error, "distribution must be `family:parameter`, got '" + std::string(spec) + "'");
    const auto family = spec.substr(0, colon);
    const auto arg = spec.substr(colon + 1);
    if (family == "file")
        return load_distribution(std::string(arg));
    if (family == "poisson")
        return poisson_distribution(parse_double(arg, "poisson rate"));
    if (family == "geometric")
        return geometric_distribution(parse_double(arg, "geometric parameter"));
    if (family == "const") {
        unsigned d = 0;
        const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), d);
        if (ec != std::errc{} || ptr != arg.data() + arg.size())
            throw Error(ErrorKind::parse_error, "invalid constant degree '" + std::string(arg) + "'");
        return constant_distribution(d);
    }
    throw Error(ErrorKind::parse_error, "unknown distribution family '" + std::string(family) + "'");
}

} // namespace dpercol
