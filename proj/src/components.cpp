#include "dpercol/components.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <string>

#include "dpercol/error.hpp"

namespace dpercol {

namespace {

/// Compressed adjacency with duplicate targets removed.
struct Adjacency {
    std::vector<std::size_t> offsets;
    std::vector<Vertex> targets;

    Adjacency(const Digraph &g, bool reversed) : offsets(g.vertex_count() + 1, 0) {
        const auto edges = g.edges();
        for (const auto &e : edges)
            ++offsets[(reversed ? e.target : e.source) + 1];
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            offsets[v + 1] += offsets[v];
        targets.resize(edges.size());
        std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
        for (const auto &e : edges) {
            const Vertex from = reversed ? e.target : e.source;
            targets[fill[from]++] = reversed ? e.source : e.target;
        }
        // Compact each row after sort + unique.
        std::size_t write = 0;
        std::size_t begin = 0;
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            const std::size_t end = offsets[v + 1];
            std::sort(targets.begin() + begin, targets.begin() + end);
            const auto last = std::unique(targets.begin() + begin, targets.begin() + end);
            offsets[v] = write;
            for (auto it = targets.begin() + begin; it != last; ++it)
                targets[write++] = *it;
            begin = end;
        }
        offsets[g.vertex_count()] = write;
        targets.resize(write);
    }

    std::size_t begin(Vertex v) const { return offsets[v]; }
    std::size_t end(Vertex v) const { return offsets[v + 1]; }
};

std::vector<char> reachable_from(const Adjacency &adj, Vertex start) {
    std::vector<char> seen(adj.offsets.size() - 1, 0);
    std::vector<Vertex> frontier{start};
    seen[start] = 1;
    while (!frontier.empty()) {
        const Vertex v = frontier.back();
        frontier.pop_back();
        for (std::size_t i = adj.begin(v); i < adj.end(v); ++i) {
            const Vertex w = adj.targets[i];
            if (!seen[w]) {
                seen[w] = 1;
                frontier.push_back(w);
            }
        }
    }
    return seen;
}

} // namespace

SccPartition strongly_connected_components(const Digraph &g) {
    const std::size_t n = g.vertex_count();
    const Adjacency adj(g, false);
    constexpr std::uint32_t unvisited = std::numeric_limits<std::uint32_t>::max();

    SccPartition result;
    result.component_id.assign(n, unvisited);
    std::vector<std::uint32_t> index(n, unvisited);
    std::vector<std::uint32_t> low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<Vertex> stack;

    struct Frame {
        Vertex v;
        std::size_t next;
    };
    std::vector<Frame> calls;
    std::uint32_t counter = 0;

    auto visit = [&](Vertex v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
        calls.push_back({v, adj.begin(v)});
    };

    for (Vertex root = 0; root < n; ++root) {
        if (index[root] != unvisited)
            continue;
        visit(root);
        while (!calls.empty()) {
            Frame &frame = calls.back();
            const Vertex v = frame.v;
            if (frame.next < adj.end(v)) {
                const Vertex w = adj.targets[frame.next++];
                if (index[w] == unvisited)
                    visit(w);
                else if (on_stack[w])
                    low[v] = std::min(low[v], index[w]);
                continue;
            }
            calls.pop_back();
            if (low[v] == index[v]) {
                const auto label = static_cast<std::uint32_t>(result.component_sizes.size());
                std::size_t size = 0;
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    result.component_id[w] = label;
                    ++size;
                } while (w != v);
                result.component_sizes.push_back(size);
                if (size > result.largest_size) {
                    result.largest_size = size;
                    result.largest_label = label;
                }
            }
            if (!calls.empty()) {
                const Vertex parent = calls.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return result;
}

double largest_scc_fraction(const Digraph &g) {
    if (g.vertex_count() == 0)
        throw Error(ErrorKind::empty_input, "largest SCC fraction of an empty graph");
    return static_cast<double>(strongly_connected_components(g).largest_size) / static_cast<double>(g.vertex_count());
}

std::vector<Vertex> strong_component_of(const Digraph &g, Vertex v) {
    if (v >= g.vertex_count())
        throw Error(ErrorKind::out_of_range,
                    "vertex " + std::to_string(v) + " outside [0, " + std::to_string(g.vertex_count()) + ")");
    const auto forward = reachable_from(Adjacency(g, false), v);
    const auto backward = reachable_from(Adjacency(g, true), v);
    std::vector<Vertex> members;
    for (std::size_t w = 0; w < g.vertex_count(); ++w)
        if (forward[w] && backward[w])
            members.push_back(static_cast<Vertex>(w));
    return members;
}

void write_component_labels(std::ostream &out, const SccPartition &partition) {
    for (std::size_t v = 0; v < partition.component_id.size(); ++v)
        out << v << ' ' << partition.component_id[v] << '\n';
}

} // namespace dpercol
