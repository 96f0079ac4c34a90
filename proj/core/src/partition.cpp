#include "ssc/partition.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "ssc/errors.hpp"
#include "ssc/linalg.hpp"

namespace ssc {

Partition::Partition(std::vector<std::vector<NodeId>> cells, std::size_t n) : cells_(std::move(cells)) {
    constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
    cell_of_.assign(n, unassigned);
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        if (cells_[k].empty()) throw InvalidPartition("cell " + std::to_string(k + 1) + " is empty");
        for (NodeId v : cells_[k]) {
            if (v >= n)
                throw InvalidPartition("node " + std::to_string(v + 1) + " outside 1.." + std::to_string(n));
            if (cell_of_[v] != unassigned)
                throw InvalidPartition("node " + std::to_string(v + 1) + " appears in more than one cell");
            cell_of_[v] = k;
        }
    }
    for (NodeId v = 0; v < n; ++v)
        if (cell_of_[v] == unassigned) throw InvalidPartition("node " + std::to_string(v + 1) + " is not covered");
    canonicalize();
}

Partition Partition::singletons(std::size_t n) {
    std::vector<std::vector<NodeId>> cells(n);
    for (NodeId v = 0; v < n; ++v) cells[v] = {v};
    return Partition(std::move(cells), n);
}

Partition Partition::whole(std::size_t n) {
    std::vector<NodeId> all(n);
    for (NodeId v = 0; v < n; ++v) all[v] = v;
    return Partition({all}, n);
}

Partition Partition::from_labels(std::span<const std::size_t> labels) {
    std::map<std::size_t, std::vector<NodeId>> groups;
    for (NodeId v = 0; v < labels.size(); ++v) groups[labels[v]].push_back(v);
    std::vector<std::vector<NodeId>> cells;
    cells.reserve(groups.size());
    for (auto& [label, members] : groups) cells.push_back(std::move(members));
    return Partition(std::move(cells), labels.size());
}

void Partition::canonicalize() {
    for (auto& c : cells_) std::sort(c.begin(), c.end());
    std::sort(cells_.begin(), cells_.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (std::size_t k = 0; k < cells_.size(); ++k)
        for (NodeId v : cells_[k]) cell_of_[v] = k;
}

bool Partition::refines(const Partition& coarser) const {
    if (coarser.n() != n()) return false;
    return std::all_of(cells_.begin(), cells_.end(), [&](const auto& c) {
        return std::all_of(c.begin(), c.end(), [&](NodeId v) { return coarser.cell_of(v) == coarser.cell_of(c.front()); });
    });
}

Partition parse_partition(std::string_view text, std::size_t n) {
    std::vector<std::vector<NodeId>> cells;
    auto to_node = [&](long long i) -> NodeId {
        if (i < 1 || static_cast<std::size_t>(i) > n)
            throw InvalidPartition("node " + std::to_string(i) + " outside 1.." + std::to_string(n));
        return static_cast<NodeId>(i - 1);
    };

    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '[') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw InvalidPartition(std::string("malformed partition: ") + e.what());
        }
        if (!j.is_array()) throw InvalidPartition("partition must be a list of cells");
        for (const auto& cell : j) {
            if (!cell.is_array()) throw InvalidPartition("each cell must be a list of node indices");
            std::vector<NodeId> members;
            for (const auto& v : cell) {
                if (!v.is_number_integer()) throw InvalidPartition("node indices must be integers");
                members.push_back(to_node(v.get<long long>()));
            }
            cells.push_back(std::move(members));
        }
    } else {
        std::vector<NodeId> current;
        std::string number;
        auto flush_number = [&] {
            if (number.empty()) throw InvalidPartition("malformed partition '" + std::string(text) + "'");
            current.push_back(to_node(std::stoll(number)));
            number.clear();
        };
        for (char ch : text) {
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                number += ch;
            } else if (ch == ',') {
                flush_number();
            } else if (ch == '|') {
                flush_number();
                cells.push_back(std::move(current));
                current.clear();
            } else if (!std::isspace(static_cast<unsigned char>(ch))) {
                throw InvalidPartition("unexpected character '" + std::string(1, ch) + "' in partition");
            }
        }
        flush_number();
        cells.push_back(std::move(current));
    }
    return Partition(std::move(cells), n);
}

std::string format_partition(const Partition& p) {
    std::string out = "[";
    for (std::size_t k = 0; k < p.size(); ++k) {
        out += k ? ",[" : "[";
        for (std::size_t m = 0; m < p.cell(k).size(); ++m) out += (m ? "," : "") + std::to_string(p.cell(k)[m] + 1);
        out += "]";
    }
    return out + "]";
}

BlockMatrix characteristic_matrix(const Partition& p, std::size_t d) {
    BlockMatrix P(p.n(), p.size(), d);
    const Matrix eye = Matrix::identity(d);
    for (NodeId v = 0; v < p.n(); ++v) P.set_block(v, p.cell_of(v), eye);
    return P;
}

namespace {

// Arcs seen from each node: out-arcs (r → t, weight A_rt) or in-arcs
// (t → r, weight A_tr).
std::vector<std::vector<Arc>> oriented_arcs(const MatrixWeightedGraph& g, NeighborDirection dir) {
    std::vector<std::vector<Arc>> out(g.n());
    for (const auto& [key, w] : g.adjacency()) {
        if (dir == NeighborDirection::out)
            out[key.first].push_back(Arc{key.second, w});
        else
            out[key.second].push_back(Arc{key.first, w});
    }
    return out;
}

// Per-target-cell block sums from one node, zero sums dropped.
std::map<std::size_t, BlockWeight> cell_sums(const std::vector<Arc>& arcs, const std::vector<std::size_t>& label) {
    std::map<std::size_t, BlockWeight> sums;
    for (const auto& arc : arcs) {
        auto [it, inserted] = sums.try_emplace(label[arc.node], arc.weight);
        if (!inserted) it->second += arc.weight;
    }
    std::erase_if(sums, [](const auto& kv) { return kv.second.is_zero(); });
    return sums;
}

}  // namespace

EPReport verify_equitable(const MatrixWeightedGraph& g, const Partition& p, const EquitableOptions& opts) {
    if (p.n() != g.n()) throw InvalidPartition("partition covers " + std::to_string(p.n()) + " nodes, graph has " +
                                               std::to_string(g.n()));
    const auto arcs = oriented_arcs(g, opts.direction);
    std::vector<std::size_t> label(g.n());
    for (NodeId v = 0; v < g.n(); ++v) label[v] = p.cell_of(v);

    std::vector<std::map<std::size_t, BlockWeight>> sums(g.n());
    for (NodeId v = 0; v < g.n(); ++v) sums[v] = cell_sums(arcs[v], label);

    const Matrix zero = Matrix::zero(g.d(), g.d());
    auto sum_into = [&](NodeId v, std::size_t cell) -> const Matrix& {
        auto it = sums[v].find(cell);
        return it == sums[v].end() ? zero : it->second;
    };

    EPReport report;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& members = p.cell(i);
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b)
                for (std::size_t j = 0; j < p.size(); ++j) {
                    if (j == i && !opts.include_own_cell) continue;
                    const Matrix& sr = sum_into(members[a], j);
                    const Matrix& ss = sum_into(members[b], j);
                    if (!(sr == ss)) report.violations.push_back(EPViolation{i, members[a], members[b], j, sr, ss});
                }
    }
    report.equitable = report.violations.empty();
    return report;
}

Partition coarsest_ep(const MatrixWeightedGraph& g, std::span<const NodeId> protected_nodes,
                      const EquitableOptions& opts) {
    const std::size_t n = g.n();
    std::vector<std::size_t> label(n, 0);
    std::size_t classes = 1;
    for (NodeId v : protected_nodes) {
        if (v >= n) throw std::out_of_range("protected node " + std::to_string(v + 1) + " outside 1.." + std::to_string(n));
        if (label[v] == 0) label[v] = classes++;
    }
    if (std::none_of(label.begin(), label.end(), [](std::size_t l) { return l == 0; })) --classes;

    const auto arcs = oriented_arcs(g, opts.direction);
    using Signature = std::pair<std::size_t, std::vector<std::pair<std::size_t, Matrix>>>;

    // Each round splits cells whose members see different block sums; the
    // class count strictly grows until the fixpoint, so at most n rounds.
    for (;;) {
        std::map<Signature, std::size_t> ids;
        std::vector<std::size_t> next(n);
        for (NodeId v = 0; v < n; ++v) {
            auto sums = cell_sums(arcs[v], label);
            if (!opts.include_own_cell) sums.erase(label[v]);
            Signature sig{label[v], {sums.begin(), sums.end()}};
            auto [it, inserted] = ids.try_emplace(std::move(sig), ids.size());
            next[v] = it->second;
        }
        const std::size_t count = ids.size();
        label = std::move(next);
        if (count == classes) break;
        classes = count;
    }
    return Partition::from_labels(label);
}

QuotientGraph quotient(const MatrixWeightedGraph& g, const Partition& p) {
    EquitableOptions opts;
    opts.include_own_cell = false;
    EPReport report = verify_equitable(g, p, opts);
    if (!report.equitable) {
        const auto& v = report.violations.front();
        throw NotEquitable("partition is not equitable: nodes " + std::to_string(v.r + 1) + " and " +
                           std::to_string(v.s + 1) + " have different sums into cell " + std::to_string(v.target + 1));
    }
    QuotientGraph q{p.size(), g.d(), {}};
    for (std::size_t i = 0; i < p.size(); ++i) {
        const NodeId rep = p.cell(i).front();
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (i == j) continue;
            BlockWeight w = cell_degree(g, rep, p.cell(j));
            if (!w.is_zero()) q.weights.emplace(std::pair{i, j}, std::move(w));
        }
    }
    return q;
}

BlockMatrix quotient_laplacian(const QuotientGraph& q) {
    BlockMatrix L(q.k, q.k, q.d);
    for (const auto& [key, w] : q.weights) {
        L.add_block(key.first, key.first, w);
        L.set_block(key.first, key.second, -w);
    }
    return L;
}

LiftCheck verify_lift(const BlockMatrix& L, const BlockMatrix& P, const BlockMatrix& L_pi) {
    const Matrix& l = L.matrix();
    const Matrix& p = P.matrix();
    const Matrix& lp = L_pi.matrix();
    if (l.rows() != l.cols() || lp.rows() != lp.cols() || l.cols() != p.rows() || p.cols() != lp.rows())
        throw DimensionMismatch("verify_lift: L is " + std::to_string(l.rows()) + "x" + std::to_string(l.cols()) +
                                ", P is " + std::to_string(p.rows()) + "x" + std::to_string(p.cols()) +
                                ", Lπ is " + std::to_string(lp.rows()) + "x" + std::to_string(lp.cols()));
    LiftCheck out;
    const Matrix LP = l * p;
    out.commutes = LP == p * lp;
    out.invariant = span_contains(p, LP);
    return out;
}

}  // namespace ssc
