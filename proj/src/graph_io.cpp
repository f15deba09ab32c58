#include "dpercol/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dpercol {

void write_edge_list(std::ostream &out, const Digraph &g, const EdgeListHeader &header) {
    out << "# n=" << g.vertex_count() << " m=" << g.edge_count();
    if (header.seed)
        out << " seed=" << *header.seed;
    out << '\n';
    if (header.site) {
        out << "# deleted";
        for (const Vertex v : header.deleted)
            out << ' ' << v;
        out << '\n';
    }
    for (const auto &e : g.edges())
        out << e.source << ' ' << e.target << '\n';
}

namespace {

void parse_header(const std::string &comment, std::optional<std::uint64_t> &n, EdgeListHeader &header) {
    std::istringstream ss(comment);
    std::string token;
    ss >> token;
    if (token == "deleted") {
        header.site = true;
        std::uint64_t v = 0;
        while (ss >> v)
            header.deleted.push_back(static_cast<Vertex>(v));
        return;
    }
    do {
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            continue;
        const auto key = token.substr(0, eq);
        const auto value = token.substr(eq + 1);
        try {
            if (key == "n")
                n = std::stoull(value);
            else if (key == "seed")
                header.seed = std::stoull(value);
        } catch (const std::exception &) {
            throw Error(ErrorKind::parse_error, "malformed header field '" + token + "'");
        }
    } while (ss >> token);
}

} // namespace

EdgeList read_edge_list(std::istream &in) {
    EdgeList result;
    std::optional<std::uint64_t> n;
    std::vector<Edge> edges;
    std::uint64_t max_id = 0;
    bool any = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        if (line[first] == '#') {
            parse_header(line.substr(first + 1), n, result.header);
            continue;
        }
        std::istringstream ss(line);
        long long s = -1, t = -1;
        if (!(ss >> s >> t) || !(ss >> std::ws).eof() || s < 0 || t < 0 || s > 0xFFFFFFFFLL || t > 0xFFFFFFFFLL)
            throw Error(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": expected `source target`");
        edges.push_back({static_cast<Vertex>(s), static_cast<Vertex>(t)});
        max_id = std::max<std::uint64_t>(max_id, std::max(s, t));
        any = true;
    }
    const std::uint64_t vertices = n ? *n : (any ? max_id + 1 : 0);
    result.graph = Digraph(vertices, std::move(edges));
    return result;
}

EdgeList load_edge_list(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::io_error, "cannot open '" + path + "'");
    return read_edge_list(in);
}

} // namespace dpercol
