#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "ssc/graph.hpp"
#include "ssc/partition.hpp"

namespace ssc::testing {

inline Matrix scalar(long p, long q = 1) {
    Rational r(p, q);
    r.canonicalize();
    return Matrix{{r}};
}

inline MatrixWeightedGraph undirected(std::size_t n, std::vector<NodeId> leaders,
                                      const std::vector<std::tuple<NodeId, NodeId, Matrix>>& edges,
                                      std::size_t d = 1) {
    std::vector<Edge> out;
    for (const auto& [i, j, w] : edges) out.push_back(Edge{i, j, w});
    return MatrixWeightedGraph(n, d, SymmetryConvention::entrywise, std::move(leaders), out);
}

inline MatrixWeightedGraph directed(std::size_t n, std::vector<NodeId> leaders,
                                    const std::vector<std::tuple<NodeId, NodeId, Matrix>>& edges,
                                    std::size_t d = 1) {
    std::vector<Edge> out;
    for (const auto& [i, j, w] : edges) out.push_back(Edge{i, j, w});
    return MatrixWeightedGraph(n, d, SymmetryConvention::none, std::move(leaders), out);
}

/// Diamond: edges 1-2, 1-3, 2-4, 3-4 (0-based 0-1, 0-2, 1-3, 2-3).
inline MatrixWeightedGraph diamond(long a12, long a13, long a24, long a34) {
    return undirected(4, {0}, {{0, 1, scalar(a12)}, {0, 2, scalar(a13)}, {1, 3, scalar(a24)}, {2, 3, scalar(a34)}});
}

inline MatrixWeightedGraph path3(long a12 = 1, long a23 = 1) {
    return undirected(3, {0}, {{0, 1, scalar(a12)}, {1, 2, scalar(a23)}});
}

inline MatrixWeightedGraph star4(long w = 1) {
    return undirected(4, {0}, {{0, 1, scalar(w)}, {0, 2, scalar(w)}, {0, 3, scalar(w)}});
}

inline WeightPattern free_pattern(std::size_t n, std::vector<NodeId> leaders,
                                  const std::vector<std::pair<NodeId, NodeId>>& edges, bool is_directed = false,
                                  std::size_t d = 1) {
    std::vector<PatternEdge> pe;
    for (auto [i, j] : edges) pe.push_back(PatternEdge{i, j, {}});
    return WeightPattern(n, d, is_directed ? SymmetryConvention::none : SymmetryConvention::entrywise,
                         std::move(leaders), std::move(pe));
}

inline WeightPattern diamond_pattern() { return free_pattern(4, {0}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }
inline WeightPattern path3_pattern() { return free_pattern(3, {0}, {{0, 1}, {1, 2}}); }
inline WeightPattern star4_pattern() { return free_pattern(4, {0}, {{0, 1}, {0, 2}, {0, 3}}); }
inline WeightPattern k3_pattern() { return free_pattern(3, {0}, {{0, 1}, {0, 2}, {1, 2}}); }

/// Random nonzero rational block with small entries.
inline Matrix random_block(std::mt19937_64& rng, std::size_t d, bool symmetric = false) {
    std::uniform_int_distribution<long> num(-5, 5);
    std::uniform_int_distribution<long> den(1, 3);
    for (;;) {
        Matrix m(d, d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = symmetric ? r : 0; c < d; ++c) {
                Rational x(num(rng), den(rng));
                x.canonicalize();
                m(r, c) = x;
                if (symmetric) m(c, r) = x;
            }
        if (!m.is_zero()) return m;
    }
}

/// Random graph with edge probability `density`; leaders are a random
/// nonempty subset of size ≤ max_leaders.
inline MatrixWeightedGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t d, bool is_directed,
                                        double density, std::size_t max_leaders = 2, bool symmetric_blocks = false) {
    std::bernoulli_distribution edge(density);
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = is_directed ? 0 : i + 1; j < n; ++j)
            if (i != j && edge(rng)) edges.push_back(Edge{i, j, random_block(rng, d, symmetric_blocks)});
    std::vector<NodeId> nodes(n);
    for (NodeId v = 0; v < n; ++v) nodes[v] = v;
    std::shuffle(nodes.begin(), nodes.end(), rng);
    std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, std::min(max_leaders, n)));
    std::vector<NodeId> leaders(nodes.begin(), nodes.begin() + static_cast<long>(count(rng)));
    return MatrixWeightedGraph(n, d, is_directed ? SymmetryConvention::none : SymmetryConvention::entrywise, leaders,
                               edges);
}

// Random graph that is equitable for a random partition by construction:
// pick quotient weights q(i,j) for cells and spread them over the members.
struct Lifted {
    MatrixWeightedGraph g;
    Partition p;
};

inline Lifted random_lift(std::mt19937_64& rng, std::size_t n, std::size_t d) {
    std::uniform_int_distribution<std::size_t> kdist(1, n);
    const std::size_t k = kdist(rng);
    std::vector<std::size_t> labels(n);
    for (std::size_t v = 0; v < n; ++v) labels[v] = v < k ? v : std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
    std::shuffle(labels.begin(), labels.end(), rng);
    Partition p = Partition::from_labels(labels);

    // Each node of cell i sends one arc of weight w(i,j) to a member of cell j,
    // chosen by a fixed rotation so sums into each cell agree.
    std::bernoulli_distribution use(0.6);
    std::vector<Edge> edges;
    std::map<std::pair<NodeId, NodeId>, Matrix> acc;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (!use(rng)) continue;
            Matrix w = random_block(rng, d);
            const auto& from = p.cell(i);
            const auto& to = p.cell(j);
            const std::size_t shift = std::uniform_int_distribution<std::size_t>(0, to.size() - 1)(rng);
            for (std::size_t a = 0; a < from.size(); ++a) {
                NodeId u = from[a];
                NodeId v = to[(a + shift) % to.size()];
                if (u == v) continue;  // self loops contribute nothing to L
                auto [it, fresh] = acc.try_emplace({u, v}, w);
                if (!fresh) it->second += w;
            }
        }
    for (auto& [key, w] : acc)
        if (!w.is_zero()) edges.push_back(Edge{key.first, key.second, w});
    MatrixWeightedGraph g(n, d, SymmetryConvention::none, {0}, edges);
    return {std::move(g), std::move(p)};
}

}  // namespace ssc::testing
