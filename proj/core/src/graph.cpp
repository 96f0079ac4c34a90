#include "ssc/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "ssc/errors.hpp"

namespace ssc {

std::string_view to_string(SymmetryConvention s) {
    switch (s) {
        case SymmetryConvention::entrywise: return "entrywise";
        case SymmetryConvention::transpose: return "transpose";
        case SymmetryConvention::none: return "none";
    }
    return "none";
}

std::optional<SymmetryConvention> parse_symmetry(std::string_view name) {
    if (name == "entrywise") return SymmetryConvention::entrywise;
    if (name == "transpose") return SymmetryConvention::transpose;
    if (name == "none") return SymmetryConvention::none;
    return std::nullopt;
}

std::string_view to_string(SignRequirement s) { return s == SignRequirement::positive ? "positive" : "negative"; }

std::optional<SignRequirement> parse_sign(std::string_view name) {
    if (name == "positive") return SignRequirement::positive;
    if (name == "negative") return SignRequirement::negative;
    return std::nullopt;
}

BlockWeight mirrored(const BlockWeight& w, SymmetryConvention s) {
    return s == SymmetryConvention::transpose ? w.transpose() : w;
}

namespace {

void check_node(NodeId v, std::size_t n, const char* what) {
    if (v >= n)
        throw std::out_of_range(std::string(what) + " index " + std::to_string(v + 1) + " outside 1.." +
                                std::to_string(n));
}

void check_leaders(const std::vector<NodeId>& leaders, std::size_t n) {
    if (leaders.empty()) throw std::invalid_argument("leader set is empty");
    std::set<NodeId> seen;
    for (NodeId l : leaders) {
        check_node(l, n, "leader");
        if (!seen.insert(l).second) throw std::invalid_argument("duplicate leader " + std::to_string(l + 1));
    }
}

std::string arc_label(NodeId i, NodeId j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

MatrixWeightedGraph::MatrixWeightedGraph(std::size_t n, std::size_t d, SymmetryConvention symmetry,
                                         std::vector<NodeId> leaders, const std::vector<Edge>& edges)
    : n_(n), d_(d), symmetry_(symmetry), leaders_(std::move(leaders)), out_(n) {
    if (n == 0) throw std::invalid_argument("graph needs at least one node");
    if (d == 0) throw std::invalid_argument("block dimension must be at least 1");
    check_leaders(leaders_, n_);

    auto put = [&](NodeId i, NodeId j, const BlockWeight& w) {
        auto [it, inserted] = adjacency_.emplace(std::pair{i, j}, w);
        if (!inserted && !(it->second == w))
            throw std::invalid_argument("conflicting weights for arc " + arc_label(i, j));
    };

    for (const auto& e : edges) {
        check_node(e.from, n_, "edge endpoint");
        check_node(e.to, n_, "edge endpoint");
        if (e.from == e.to) throw std::invalid_argument("self-loop at node " + std::to_string(e.from + 1));
        if (e.weight.rows() != d_ || e.weight.cols() != d_)
            throw DimensionMismatch("weight of edge " + arc_label(e.from, e.to) + " is not " + std::to_string(d_) +
                                    "x" + std::to_string(d_));
        if (e.weight.is_zero()) throw std::invalid_argument("zero weight on edge " + arc_label(e.from, e.to));
        put(e.from, e.to, e.weight);
        if (!directed()) put(e.to, e.from, mirrored(e.weight, symmetry_));
    }
    for (const auto& [key, w] : adjacency_) out_[key.first].push_back(Arc{key.second, w});
}

const std::vector<Arc>& MatrixWeightedGraph::arcs(NodeId i) const {
    check_node(i, n_, "node");
    return out_[i];
}

std::optional<BlockWeight> MatrixWeightedGraph::weight(NodeId i, NodeId j) const {
    auto it = adjacency_.find({i, j});
    if (it == adjacency_.end()) return std::nullopt;
    return it->second;
}

std::vector<Edge> MatrixWeightedGraph::declared_edges() const {
    std::vector<Edge> out;
    for (const auto& [key, w] : adjacency_)
        if (directed() || key.first < key.second) out.push_back(Edge{key.first, key.second, w});
    return out;
}

BlockWeight degree(const MatrixWeightedGraph& g, NodeId i) {
    BlockWeight sum = Matrix::zero(g.d(), g.d());
    for (const auto& arc : g.arcs(i)) sum += arc.weight;
    return sum;
}

BlockWeight cell_degree(const MatrixWeightedGraph& g, NodeId i, std::span<const NodeId> cell) {
    check_node(i, g.n(), "node");
    for (NodeId v : cell) check_node(v, g.n(), "cell member");
    BlockWeight sum = Matrix::zero(g.d(), g.d());
    for (NodeId v : cell)
        if (auto w = g.weight(i, v)) sum += *w;
    return sum;
}

BlockMatrix build_laplacian(const MatrixWeightedGraph& g) {
    BlockMatrix L(g.n(), g.n(), g.d());
    for (const auto& [key, w] : g.adjacency()) {
        L.add_block(key.first, key.first, w);
        L.set_block(key.first, key.second, -w);
    }
    return L;
}

BlockMatrix build_input_matrix(std::span<const NodeId> leaders, std::size_t n, std::size_t d) {
    if (leaders.empty()) throw std::invalid_argument("leader set is empty");
    if (d == 0) throw std::invalid_argument("block dimension must be at least 1");
    BlockMatrix M(n, leaders.size(), d);
    const Matrix eye = Matrix::identity(d);
    for (std::size_t l = 0; l < leaders.size(); ++l) {
        check_node(leaders[l], n, "leader");
        M.set_block(leaders[l], l, eye);
    }
    return M;
}

// ---------------------------------------------------------------------------

WeightPattern::WeightPattern(std::size_t n, std::size_t d, SymmetryConvention symmetry, std::vector<NodeId> leaders,
                             std::vector<PatternEdge> edges, std::vector<Constraint> constraints)
    : n_(n), d_(d), symmetry_(symmetry), leaders_(std::move(leaders)), edges_(std::move(edges)),
      constraints_(std::move(constraints)) {
    if (n == 0) throw std::invalid_argument("pattern needs at least one node");
    if (d == 0) throw std::invalid_argument("block dimension must be at least 1");
    check_leaders(leaders_, n_);

    std::set<std::pair<NodeId, NodeId>> seen_arcs;
    std::set<std::string> seen_names;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto& edge = edges_[e];
        check_node(edge.from, n_, "edge endpoint");
        check_node(edge.to, n_, "edge endpoint");
        if (edge.from == edge.to) throw std::invalid_argument("self-loop at node " + std::to_string(edge.from + 1));
        if (edge.name.empty()) edge.name = "A" + std::to_string(edge.from + 1) + "_" + std::to_string(edge.to + 1);
        if (!seen_names.insert(edge.name).second) throw std::invalid_argument("duplicate variable name " + edge.name);

        auto add_arc = [&](NodeId i, NodeId j, bool transposed) {
            if (!seen_arcs.insert({i, j}).second)
                throw std::invalid_argument("edge " + arc_label(i, j) + " declared twice");
            arcs_.push_back(ArcRef{i, j, e, transposed});
        };
        add_arc(edge.from, edge.to, false);
        if (!directed()) add_arc(edge.to, edge.from, symmetry_ == SymmetryConvention::transpose);
    }
    std::sort(arcs_.begin(), arcs_.end(),
              [](const ArcRef& a, const ArcRef& b) { return std::pair{a.from, a.to} < std::pair{b.from, b.to}; });

    auto check_edge = [&](std::size_t e) {
        if (e >= edges_.size()) throw std::invalid_argument("constraint references an undeclared edge variable");
    };
    for (const auto& c : constraints_) {
        if (auto* eq = std::get_if<EqualConstraint>(&c)) {
            check_edge(eq->lhs);
            check_edge(eq->rhs);
        } else if (auto* fx = std::get_if<FixedConstraint>(&c)) {
            check_edge(fx->edge);
            if (fx->value.rows() != d_ || fx->value.cols() != d_)
                throw DimensionMismatch("fixed value for " + edges_[fx->edge].name + " has the wrong dimension");
            if (fx->value.is_zero())
                throw std::invalid_argument("zero weight fixed on edge " + edges_[fx->edge].name);
        } else {
            check_edge(std::get<SignConstraint>(c).edge);
        }
    }
}

WeightPattern WeightPattern::from_topology(const MatrixWeightedGraph& g) {
    std::vector<PatternEdge> edges;
    for (const auto& e : g.declared_edges()) edges.push_back(PatternEdge{e.from, e.to, {}});
    return WeightPattern(g.n(), g.d(), g.symmetry(), g.leaders(), std::move(edges));
}

bool WeightPattern::is_leader(NodeId v) const {
    return std::find(leaders_.begin(), leaders_.end(), v) != leaders_.end();
}

std::optional<std::size_t> WeightPattern::find_edge(std::string_view name) const {
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (edges_[e].name == name) return e;
    return std::nullopt;
}

std::optional<std::size_t> WeightPattern::find_edge(NodeId from, NodeId to) const {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& edge = edges_[e];
        if (edge.from == from && edge.to == to) return e;
        if (!directed() && edge.from == to && edge.to == from) return e;
    }
    return std::nullopt;
}

std::optional<SignRequirement> WeightPattern::sign_of(std::size_t edge) const {
    for (const auto& c : constraints_)
        if (auto* s = std::get_if<SignConstraint>(&c); s && s->edge == edge) return s->sign;
    return std::nullopt;
}

MatrixWeightedGraph WeightPattern::instantiate(const std::vector<BlockWeight>& blocks) const {
    if (blocks.size() != edges_.size()) throw DimensionMismatch("one block per edge variable required");
    std::vector<Edge> edges;
    edges.reserve(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) edges.push_back(Edge{edges_[e].from, edges_[e].to, blocks[e]});
    return MatrixWeightedGraph(n_, d_, symmetry_, leaders_, edges);
}

}  // namespace ssc
