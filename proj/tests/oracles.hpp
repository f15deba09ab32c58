#pragma once

// Independent reference computations used only by the test suites.

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "dpercol/configmodel.hpp"
#include "dpercol/degrees.hpp"

namespace oracle {

using dpercol::DegreePair;
using dpercol::DegreeSequence;
using dpercol::Digraph;
using dpercol::Edge;

/// Every (in, out) degree vector realizable by a simple digraph on n labeled
/// vertices, by enumerating all 2^{n(n-1)} edge subsets.
inline std::set<std::vector<DegreePair>> simple_realizable_profiles(std::size_t n) {
    std::vector<Edge> slots;
    for (std::uint32_t s = 0; s < n; ++s)
        for (std::uint32_t t = 0; t < n; ++t)
            if (s != t)
                slots.push_back({s, t});
    std::set<std::vector<DegreePair>> profiles;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
        std::vector<DegreePair> deg(n);
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (mask >> i & 1) {
                ++deg[slots[i].source].out;
                ++deg[slots[i].target].in;
            }
        profiles.insert(deg);
    }
    return profiles;
}

/// All valid sequences of length n with every degree in [0, max_degree].
inline std::vector<DegreeSequence> all_valid_sequences(std::size_t n, std::uint32_t max_degree) {
    std::vector<DegreeSequence> out;
    std::vector<DegreePair> cur(n);
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (v == n) {
            DegreeSequence seq(cur);
            if (seq.in_sum() == seq.out_sum())
                out.push_back(std::move(seq));
            return;
        }
        for (std::uint32_t i = 0; i <= max_degree; ++i)
            for (std::uint32_t o = 0; o <= max_degree; ++o) {
                cur[v] = {i, o};
                rec(v + 1);
            }
    };
    rec(0);
    return out;
}

/// Every multiplicity matrix Y (Y[s][t] = copies of edge s -> t, self-loops
/// allowed) with row sums = out-degrees and column sums = in-degrees.
inline std::vector<std::vector<std::vector<std::uint32_t>>> all_multigraphs(const DegreeSequence &seq) {
    const std::size_t n = seq.size();
    std::vector<std::vector<std::vector<std::uint32_t>>> result;
    std::vector<std::vector<std::uint32_t>> y(n, std::vector<std::uint32_t>(n, 0));
    std::vector<std::uint32_t> col_left(n);
    for (std::size_t t = 0; t < n; ++t)
        col_left[t] = seq[t].in;
    std::function<void(std::size_t, std::size_t, std::uint32_t)> rec = [&](std::size_t s, std::size_t t,
                                                                          std::uint32_t row_left) {
        if (s == n) {
            for (auto c : col_left)
                if (c != 0)
                    return;
            result.push_back(y);
            return;
        }
        if (t == n) {
            if (row_left == 0)
                rec(s + 1, 0, s + 1 < n ? seq[s + 1].out : 0);
            return;
        }
        const std::uint32_t hi = std::min(row_left, col_left[t]);
        for (std::uint32_t k = 0; k <= hi; ++k) {
            y[s][t] = k;
            col_left[t] -= k;
            rec(s, t + 1, row_left - k);
            col_left[t] += k;
        }
        y[s][t] = 0;
    };
    rec(0, 0, n > 0 ? seq[0].out : 0);
    return result;
}

inline Digraph graph_from_multiplicities(const std::vector<std::vector<std::uint32_t>> &y) {
    std::vector<Edge> edges;
    for (std::uint32_t s = 0; s < y.size(); ++s)
        for (std::uint32_t t = 0; t < y.size(); ++t)
            for (std::uint32_t k = 0; k < y[s][t]; ++k)
                edges.push_back({s, t});
    return Digraph(y.size(), std::move(edges));
}

/// Canonical form of a multigraph: its sorted edge list.
inline std::vector<Edge> canonical_edges(const Digraph &g) {
    std::vector<Edge> e(g.edges().begin(), g.edges().end());
    std::sort(e.begin(), e.end());
    return e;
}

/// Mutual-reachability classes via Warshall transitive closure. Returns a
/// label per vertex equal to the smallest vertex in its class.
inline std::vector<std::uint32_t> mutual_reachability_classes(const Digraph &g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (std::size_t v = 0; v < n; ++v)
        reach[v][v] = 1;
    for (const auto &e : g.edges())
        reach[e.source][e.target] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j])
                        reach[i][j] = 1;
    std::vector<std::uint32_t> label(n);
    for (std::size_t v = 0; v < n; ++v) {
        label[v] = static_cast<std::uint32_t>(v);
        for (std::size_t w = 0; w < v; ++w)
            if (reach[v][w] && reach[w][v]) {
                label[v] = static_cast<std::uint32_t>(w);
                break;
            }
    }
    return label;
}

/// Upper-tail p-value of Pearson's chi-square statistic.
inline double chi_square_p(const std::vector<double> &observed, const std::vector<double> &expected_probs) {
    double total = 0.0;
    for (double o : observed)
        total += o;
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = expected_probs[i] * total;
        stat += (observed[i] - e) * (observed[i] - e) / e;
    }
    const boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)> &f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Surviving-branch probability beta solving beta = 1 - exp(-lambda beta), beta > 0.
inline double poisson_survival(double lambda) {
    return bisect([lambda](double b) { return b - (1.0 - std::exp(-lambda * b)); }, 1e-9, 1.0);
}

} // namespace oracle
