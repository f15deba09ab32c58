#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dpercol/configmodel.hpp"

namespace dpercol {

/// Edge-list text: a `# n=<n> m=<m> seed=<seed>` header, optionally a
/// `# deleted <v>...` line (site percolation), then one `source target` per
/// line with 0-based ids.
struct EdgeListHeader {
    std::optional<std::uint64_t> seed;
    std::vector<Vertex> deleted;
    bool site = false;
};

void write_edge_list(std::ostream &out, const Digraph &g, const EdgeListHeader &header = {});

struct EdgeList {
    Digraph graph;
    EdgeListHeader header;
};

/// Vertex count comes from the `n=` header when present, otherwise max id + 1.
EdgeList read_edge_list(std::istream &in);
EdgeList load_edge_list(const std::string &path);

} // namespace dpercol
