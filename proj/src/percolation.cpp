#include "dpercol/percolation.hpp"

#include <string>

#include "dpercol/error.hpp"
#include "dpercol/rng.hpp"

namespace dpercol {

std::string_view to_string(PercolationMode mode) noexcept {
    return mode == PercolationMode::bond ? "bond" : "site";
}

PercolationMode parse_percolation_mode(std::string_view text) {
    if (text == "bond")
        return PercolationMode::bond;
    if (text == "site")
        return PercolationMode::site;
    throw Error(ErrorKind::parse_error, "unknown percolation mode '" + std::string(text) + "'");
}

namespace {

void require_probability(double pi) {
    if (!(pi > 0.0 && pi <= 1.0))
        throw Error(ErrorKind::out_of_range, "percolation probability must lie in (0, 1], got " + std::to_string(pi));
}

} // namespace

PercolationOutcome bond_percolate(const Digraph &g, double pi, std::uint64_t key) {
    require_probability(pi);
    const auto edges = g.edges();
    std::vector<Edge> kept;
    kept.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (Stream::uniform_at(key, i) < pi)
            kept.push_back(edges[i]);

    PercolationOutcome outcome;
    outcome.mode = PercolationMode::bond;
    outcome.pi = pi;
    outcome.surviving_edges = kept.size();
    outcome.graph = Digraph(g.vertex_count(), std::move(kept));
    outcome.induced_sequence = outcome.graph.degree_sequence();
    return outcome;
}

PercolationOutcome site_percolate(const Digraph &g, double pi, std::uint64_t key) {
    require_probability(pi);
    const std::size_t n = g.vertex_count();
    std::vector<char> deleted(n, 0);
    PercolationOutcome outcome;
    for (std::size_t v = 0; v < n; ++v)
        if (Stream::uniform_at(key, v) >= pi) {
            deleted[v] = 1;
            outcome.deleted_vertices.push_back(static_cast<Vertex>(v));
        }

    std::vector<Edge> kept;
    kept.reserve(g.edge_count());
    for (const auto &e : g.edges())
        if (!deleted[e.source] && !deleted[e.target])
            kept.push_back(e);

    outcome.mode = PercolationMode::site;
    outcome.pi = pi;
    outcome.surviving_edges = kept.size();
    outcome.graph = Digraph(n, std::move(kept));
    outcome.induced_sequence = outcome.graph.degree_sequence();
    return outcome;
}

PercolationOutcome percolate(const Digraph &g, double pi, PercolationMode mode, std::uint64_t key) {
    return mode == PercolationMode::bond ? bond_percolate(g, pi, key) : site_percolate(g, pi, key);
}

DegreeSequence induced_degree_sequence(const PercolationOutcome &outcome) {
    return outcome.graph.degree_sequence();
}

} // namespace dpercol
