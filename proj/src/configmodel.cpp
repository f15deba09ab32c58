#include "dpercol/configmodel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dpercol {

Digraph::Digraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    std::vector<std::uint64_t> keys;
    keys.reserve(edges_.size());
    for (const auto &e : edges_) {
        if (e.source >= n_ || e.target >= n_)
            throw Error(ErrorKind::out_of_range, "edge (" + std::to_string(e.source) + ", " + std::to_string(e.target)
                                                     + ") outside vertex range [0, " + std::to_string(n_) + ")");
        if (e.source == e.target)
            simple_ = false;
        keys.push_back(edge_key(e));
    }
    if (simple_) {
        std::sort(keys.begin(), keys.end());
        simple_ = std::adjacent_find(keys.begin(), keys.end()) == keys.end();
    }
}

DegreeSequence Digraph::degree_sequence() const {
    std::vector<DegreePair> pairs(n_);
    for (const auto &e : edges_) {
        ++pairs[e.source].out;
        ++pairs[e.target].in;
    }
    return DegreeSequence(std::move(pairs));
}

std::unordered_map<std::uint64_t, std::uint32_t> Digraph::multiplicities() const {
    std::unordered_map<std::uint64_t, std::uint32_t> counts;
    counts.reserve(edges_.size());
    for (const auto &e : edges_)
        ++counts[edge_key(e)];
    return counts;
}

bool is_simple(const Digraph &g) noexcept { return g.simple(); }

namespace {

void require_valid(const DegreeSequence &seq) {
    const auto v = validate(seq);
    if (!v.valid)
        throw Error(ErrorKind::invalid_sequence, "degree sequence is not valid: in-degree sum "
                                                     + std::to_string(v.in_sum) + " != out-degree sum "
                                                     + std::to_string(v.out_sum));
}

/// Stub arrays for the matching: in-stubs grouped by target vertex, so the
/// edges into vertex t occupy the contiguous range [first_in[t], first_in[t + 1]).
struct Stubs {
    std::vector<Vertex> in;
    std::vector<Vertex> out;
    std::vector<std::size_t> first_in;

    explicit Stubs(const DegreeSequence &seq) {
        in.reserve(seq.edge_count());
        out.reserve(seq.edge_count());
        first_in.reserve(seq.size() + 1);
        for (std::size_t v = 0; v < seq.size(); ++v) {
            first_in.push_back(in.size());
            in.insert(in.end(), seq[v].in, static_cast<Vertex>(v));
            out.insert(out.end(), seq[v].out, static_cast<Vertex>(v));
        }
        first_in.push_back(in.size());
    }
};

Digraph graph_from_matching(std::size_t n, const Stubs &stubs) {
    std::vector<Edge> edges(stubs.in.size());
    for (std::size_t i = 0; i < edges.size(); ++i)
        edges[i] = {stubs.out[i], stubs.in[i]};
    return Digraph(n, std::move(edges));
}

/// Shuffles `stubs.out` in place; stops early and returns false on the first
/// self-loop or repeated edge when `reject_non_simple` is set.
bool match_stubs(Stubs &stubs, Stream &rng, bool reject_non_simple) {
    const std::size_t m = stubs.out.size();
    auto &out = stubs.out;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(m - i));
        std::swap(out[i], out[j]);
        if (!reject_non_simple)
            continue;
        const Vertex target = stubs.in[i];
        const Vertex source = out[i];
        if (source == target)
            return false;
        for (std::size_t k = stubs.first_in[target]; k < i; ++k)
            if (out[k] == source)
                return false;
    }
    return true;
}

} // namespace

Digraph sample_configuration(const DegreeSequence &seq, Stream &rng) {
    require_valid(seq);
    Stubs stubs(seq);
    match_stubs(stubs, rng, false);
    return graph_from_matching(seq.size(), stubs);
}

std::optional<Digraph> try_simple_configuration(const DegreeSequence &seq, Stream &rng) {
    require_valid(seq);
    Stubs stubs(seq);
    if (!match_stubs(stubs, rng, true))
        return std::nullopt;
    return graph_from_matching(seq.size(), stubs);
}

MatchingProbability matching_probability(const Digraph &g, const DegreeSequence &seq) {
    require_valid(seq);
    if (!(g.degree_sequence() == seq))
        throw Error(ErrorKind::degree_mismatch, "graph does not realize the given degree sequence");

    const auto multiplicities = g.multiplicities();
    const std::uint64_t m = seq.edge_count();

    double log_p = -std::lgamma(double(m) + 1.0);
    for (const auto &p : seq.pairs())
        log_p += std::lgamma(p.in + 1.0) + std::lgamma(p.out + 1.0);
    for (const auto &[key, count] : multiplicities)
        log_p -= std::lgamma(count + 1.0);

    MatchingProbability result;
    result.value = std::exp(log_p);
    if (m <= 20) {
        using boost::multiprecision::cpp_int;
        auto factorial = [](std::uint64_t k) {
            cpp_int f = 1;
            for (std::uint64_t i = 2; i <= k; ++i)
                f *= i;
            return f;
        };
        cpp_int numerator = 1;
        for (const auto &p : seq.pairs())
            numerator *= factorial(p.in) * factorial(p.out);
        cpp_int denominator = factorial(m);
        for (const auto &[key, count] : multiplicities)
            denominator *= factorial(count);
        result.exact = Rational(numerator, denominator);
        result.value = static_cast<double>(*result.exact);
    }
    return result;
}

AttemptsExhausted::AttemptsExhausted(std::uint64_t attempts)
    : Error(ErrorKind::attempts_exhausted,
            "no simple graph after " + std::to_string(attempts) + " configuration attempts"),
      attempts_(attempts) {}

SimpleSample sample_simple(const DegreeSequence &seq, Stream &rng, std::uint64_t max_attempts) {
    if (!is_graphical(seq))
        throw Error(ErrorKind::not_graphical, "degree sequence is not graphical");
    Stubs stubs(seq);
    for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt)
        if (match_stubs(stubs, rng, true))
            return {graph_from_matching(seq.size(), stubs), attempt};
    throw AttemptsExhausted(max_attempts);
}

double simple_probability(const DegreeDistribution &dist, SimpleFormula formula) {
    const double mu = dist.mean();
    if (!(mu > 0.0))
        throw Error(ErrorKind::zero_mean_degree, "mean degree is zero");
    const double mu11 = dist.mu11();
    const double excess = (dist.moment(2, 0) - mu) * (dist.moment(0, 2) - mu);
    const double second = formula == SimpleFormula::as_printed ? excess / mu : excess / (2.0 * mu * mu);
    return std::exp(-mu11 / mu - second);
}

} // namespace dpercol
