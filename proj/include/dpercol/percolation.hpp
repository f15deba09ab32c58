#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "dpercol/configmodel.hpp"
#include "dpercol/degrees.hpp"

namespace dpercol {

enum class PercolationMode { bond, site };

std::string_view to_string(PercolationMode mode) noexcept;
PercolationMode parse_percolation_mode(std::string_view text);

struct PercolationOutcome {
    Digraph graph;
    PercolationMode mode = PercolationMode::bond;
    double pi = 1.0;
    std::size_t surviving_edges = 0;
    /// Sorted; empty under bond percolation. Deleted vertices stay in the
    /// vertex set with degree (0, 0).
    std::vector<Vertex> deleted_vertices;
    DegreeSequence induced_sequence;
};

/// Keeps each edge (parallel copies individually) with probability pi. The
/// draw for edge i is word i of the counter stream `key`.
PercolationOutcome bond_percolate(const Digraph &g, double pi, std::uint64_t key);

/// Deletes each vertex with probability 1 - pi, removing every incident edge.
/// The draw for vertex v is word v of the counter stream `key`.
PercolationOutcome site_percolate(const Digraph &g, double pi, std::uint64_t key);

PercolationOutcome percolate(const Digraph &g, double pi, PercolationMode mode, std::uint64_t key);

/// Degree profile recomputed from the percolated edge multiset.
DegreeSequence induced_degree_sequence(const PercolationOutcome &outcome);

} // namespace dpercol
