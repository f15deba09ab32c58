#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dpercol/configmodel.hpp"

namespace dpercol {

struct SccPartition {
    /// Label per vertex; labels are assigned in the order components complete
    /// (reverse topological order of the condensation).
    std::vector<std::uint32_t> component_id;
    std::vector<std::size_t> component_sizes;
    std::uint32_t largest_label = 0;
    std::size_t largest_size = 0;

    std::size_t count() const noexcept { return component_sizes.size(); }
};

/// Tarjan's algorithm with an explicit stack, O(n + m). Parallel edges are
/// collapsed before traversal.
SccPartition strongly_connected_components(const Digraph &g);

/// |largest SCC| / n. Throws ErrorKind::empty_input when n == 0.
double largest_scc_fraction(const Digraph &g);

/// The vertices mutually reachable with v (v included), sorted. Computed as
/// the intersection of forward and backward reachability.
std::vector<Vertex> strong_component_of(const Digraph &g, Vertex v);

/// `vertex label` per line.
void write_component_labels(std::ostream &out, const SccPartition &partition);

} // namespace dpercol
