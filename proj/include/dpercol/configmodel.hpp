#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dpercol/degrees.hpp"
#include "dpercol/error.hpp"
#include "dpercol/rng.hpp"

namespace dpercol {

using Vertex = std::uint32_t;

struct Edge {
    Vertex source = 0;
    Vertex target = 0;

    friend bool operator==(const Edge &, const Edge &) = default;
    friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// Directed multigraph on vertices [0, n). Edges are kept as a flat list;
/// multiplicities are derived on demand.
class Digraph {
public:
    Digraph() = default;
    Digraph(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    /// No self-loops and every multiplicity at most 1.
    bool simple() const noexcept { return simple_; }

    DegreeSequence degree_sequence() const;

    /// Multiplicity of each distinct (source, target) pair, keyed by source << 32 | target.
    std::unordered_map<std::uint64_t, std::uint32_t> multiplicities() const;

    friend bool operator==(const Digraph &a, const Digraph &b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    bool simple_ = true;
};

inline std::uint64_t edge_key(const Edge &e) noexcept {
    return (static_cast<std::uint64_t>(e.source) << 32) | e.target;
}

bool is_simple(const Digraph &g) noexcept;

/// Multigraph induced by a uniformly random perfect matching of in-stubs to
/// out-stubs: a Fisher-Yates shuffle of the out-stub array against the
/// in-stub array in canonical vertex order.
Digraph sample_configuration(const DegreeSequence &seq, Stream &rng);

/// Runs one configuration draw, abandoning it at the first self-loop or
/// repeated edge. On success the result equals sample_configuration on the
/// same stream state.
std::optional<Digraph> try_simple_configuration(const DegreeSequence &seq, Stream &rng);

using Rational = boost::multiprecision::cpp_rational;

struct MatchingProbability {
    double value = 0.0;
    /// Present when the graph has at most 20 edges.
    std::optional<Rational> exact;
};

/// (1/m!) prod d_in! prod d_out! / prod Upsilon_{i,j}! : the probability that
/// the configuration model on `seq` produces exactly `g`.
MatchingProbability matching_probability(const Digraph &g, const DegreeSequence &seq);

class AttemptsExhausted : public Error {
public:
    explicit AttemptsExhausted(std::uint64_t attempts);
    std::uint64_t attempts() const noexcept { return attempts_; }

private:
    std::uint64_t attempts_;
};

struct SimpleSample {
    Digraph graph;
    std::uint64_t attempts = 0; ///< configuration draws used, including the accepted one
};

inline constexpr std::uint64_t default_max_attempts = 1000;

/// Uniform simple digraph with degree sequence `seq`, by rejection.
/// Throws ErrorKind::not_graphical before sampling, AttemptsExhausted after
/// `max_attempts` rejected draws.
SimpleSample sample_simple(const DegreeSequence &seq, Stream &rng, std::uint64_t max_attempts = default_max_attempts);

enum class SimpleFormula { as_printed, standard };

/// Asymptotic probability that a configuration is simple.
///   as_printed: exp(-mu11/mu - (mu20 - mu)(mu02 - mu) / mu)
///   standard:   exp(-mu11/mu - (mu20 - mu)(mu02 - mu) / (2 mu^2))
double simple_probability(const DegreeDistribution &dist, SimpleFormula formula);

} // namespace dpercol
