#include "ssc/network_io.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

#include "ssc/errors.hpp"

namespace ssc {

namespace {

using Path = std::string;

std::string at(const Path& base, std::string_view field) { return base.empty() ? std::string(field) : base + "." + std::string(field); }
std::string at(const Path& base, std::size_t index) { return base + "[" + std::to_string(index) + "]"; }

[[noreturn]] void fail(const Path& where, const std::string& what) { throw ParseError(where, what); }

const Json& require(const Json& obj, std::string_view key, const Path& base) {
    auto it = obj.find(std::string(key));
    if (it == obj.end()) fail(base, "missing field '" + std::string(key) + "'");
    return *it;
}

std::size_t as_count(const Json& v, const Path& where) {
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(where, "expected a non-negative integer");
    return v.get<std::size_t>();
}

NodeId as_node(const Json& v, std::size_t n, const Path& where) {
    if (!v.is_number_integer()) fail(where, "expected a 1-based node index");
    long long i = v.get<long long>();
    if (i < 1 || static_cast<std::size_t>(i) > n)
        fail(where, "node index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    return static_cast<NodeId>(i - 1);
}

Rational as_rational(const Json& v, const Path& where) {
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return parse_rational(v.dump());
        // Shortest round-trip text of the double, read as an exact decimal.
        if (v.is_number_float()) return parse_rational(v.dump());
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    fail(where, "expected a rational (\"p/q\", integer, or decimal)");
}

Matrix as_block(const Json& v, std::size_t d, const Path& where) {
    if (!v.is_array()) {
        if (d != 1) fail(where, "expected a " + std::to_string(d) + "x" + std::to_string(d) + " array");
        return Matrix{{as_rational(v, where)}};
    }
    if (v.size() != d) fail(where, "expected " + std::to_string(d) + " rows, got " + std::to_string(v.size()));
    Matrix m(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        const auto& row = v[r];
        const Path rp = at(where, r);
        if (!row.is_array() || row.size() != d)
            fail(rp, "expected a row of " + std::to_string(d) + " entries (inconsistent block dimension)");
        for (std::size_t c = 0; c < d; ++c) m(r, c) = as_rational(row[c], at(rp, c));
    }
    return m;
}

struct Header {
    std::size_t n = 0;
    std::size_t d = 1;
    SymmetryConvention symmetry = SymmetryConvention::entrywise;
    std::vector<NodeId> leaders;
};

Header parse_header(const Json& doc) {
    Header h;
    h.n = as_count(require(doc, "n", ""), "n");
    if (h.n == 0) fail("n", "need at least one node");
    if (auto it = doc.find("d"); it != doc.end()) h.d = as_count(*it, "d");
    if (h.d == 0) fail("d", "block dimension must be at least 1");

    bool directed = false;
    if (auto it = doc.find("directed"); it != doc.end()) {
        if (!it->is_boolean()) fail("directed", "expected true or false");
        directed = it->get<bool>();
    }
    h.symmetry = directed ? SymmetryConvention::none : SymmetryConvention::entrywise;
    if (auto it = doc.find("symmetry"); it != doc.end()) {
        if (!it->is_string()) fail("symmetry", "expected entrywise|transpose|none");
        auto s = parse_symmetry(it->get<std::string>());
        if (!s) fail("symmetry", "unknown symmetry convention '" + it->get<std::string>() + "'");
        if (directed != (*s == SymmetryConvention::none))
            fail("symmetry", directed ? "directed graphs use symmetry 'none'"
                                      : "undirected graphs need 'entrywise' or 'transpose'");
        h.symmetry = *s;
    }

    const Json& leaders = require(doc, "leaders", "");
    if (!leaders.is_array()) fail("leaders", "expected a list of node indices");
    if (leaders.empty()) fail("leaders", "leader set is empty");
    for (std::size_t k = 0; k < leaders.size(); ++k) {
        NodeId l = as_node(leaders[k], h.n, at("leaders", k));
        for (NodeId prev : h.leaders)
            if (prev == l) fail(at("leaders", k), "duplicate leader " + std::to_string(l + 1));
        h.leaders.push_back(l);
    }
    return h;
}

const Json& edge_list(const Json& doc) {
    static const Json empty = Json::array();
    auto it = doc.find("edges");
    if (it == doc.end()) return empty;
    if (!it->is_array()) fail("edges", "expected a list of edges");
    return *it;
}

std::pair<NodeId, NodeId> edge_endpoints(const Json& e, std::size_t n, const Path& where) {
    if (!e.is_object()) fail(where, "expected an object {i, j, weight}");
    NodeId i = as_node(require(e, "i", where), n, at(where, "i"));
    NodeId j = as_node(require(e, "j", where), n, at(where, "j"));
    if (i == j) fail(where, "self-loop at node " + std::to_string(i + 1));
    return {i, j};
}

bool looks_like_pattern(const Json& doc) {
    if (auto it = doc.find("kind"); it != doc.end()) {
        if (!it->is_string() || (*it != "graph" && *it != "pattern")) fail("kind", "expected \"graph\" or \"pattern\"");
        return *it == "pattern";
    }
    if (doc.contains("variables") || doc.contains("constraints")) return true;
    for (const auto& e : edge_list(doc))
        if (e.is_object() && !e.contains("weight")) return true;
    return false;
}

MatrixWeightedGraph graph_from(const Json& doc) {
    Header h = parse_header(doc);
    const Json& edges = edge_list(doc);
    std::vector<Edge> out;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const Path where = at("edges", k);
        auto [i, j] = edge_endpoints(edges[k], h.n, where);
        Matrix w = as_block(require(edges[k], "weight", where), h.d, at(where, "weight"));
        if (w.is_zero()) fail(at(where, "weight"), "zero weight on a declared edge");
        out.push_back(Edge{i, j, std::move(w)});
    }
    try {
        return MatrixWeightedGraph(h.n, h.d, h.symmetry, h.leaders, out);
    } catch (const std::exception& e) {
        fail("edges", e.what());
    }
}

WeightPattern pattern_from(const Json& doc) {
    Header h = parse_header(doc);
    const bool directed = h.symmetry == SymmetryConvention::none;
    const Json& edges = edge_list(doc);

    std::vector<PatternEdge> pedges;
    std::vector<Constraint> constraints;
    std::vector<std::pair<std::size_t, Matrix>> inline_weights;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const Path where = at("edges", k);
        auto [i, j] = edge_endpoints(edges[k], h.n, where);
        for (std::size_t prev = 0; prev < pedges.size(); ++prev) {
            const auto& p = pedges[prev];
            if ((p.from == i && p.to == j) || (!directed && p.from == j && p.to == i))
                fail(where, "edge declared twice");
        }
        std::string name;
        if (auto it = edges[k].find("name"); it != edges[k].end()) {
            if (!it->is_string()) fail(at(where, "name"), "expected a string");
            name = it->get<std::string>();
        }
        pedges.push_back(PatternEdge{i, j, name});
        if (auto it = edges[k].find("weight"); it != edges[k].end()) {
            Matrix w = as_block(*it, h.d, at(where, "weight"));
            if (w.is_zero()) fail(at(where, "weight"), "zero weight on a declared edge");
            inline_weights.emplace_back(k, std::move(w));
        }
    }

    auto edge_by_pair = [&](NodeId i, NodeId j) -> std::optional<std::size_t> {
        for (std::size_t e = 0; e < pedges.size(); ++e) {
            const auto& p = pedges[e];
            if ((p.from == i && p.to == j) || (!directed && p.from == j && p.to == i)) return e;
        }
        return std::nullopt;
    };

    if (auto it = doc.find("variables"); it != doc.end()) {
        if (!it->is_array()) fail("variables", "expected a list of {edge, name}");
        for (std::size_t k = 0; k < it->size(); ++k) {
            const Path where = at("variables", k);
            const Json& v = (*it)[k];
            if (!v.is_object()) fail(where, "expected {edge, name}");
            const Json& ref = require(v, "edge", where);
            if (!ref.is_array() || ref.size() != 2) fail(at(where, "edge"), "expected [i, j]");
            NodeId i = as_node(ref[0], h.n, at(at(where, "edge"), 0));
            NodeId j = as_node(ref[1], h.n, at(at(where, "edge"), 1));
            auto e = edge_by_pair(i, j);
            if (!e) fail(at(where, "edge"), "variable names an undeclared edge");
            const Json& name = require(v, "name", where);
            if (!name.is_string() || name.get<std::string>().empty()) fail(at(where, "name"), "expected a name");
            pedges[*e].name = name.get<std::string>();
        }
    }

    // Names default to A<i>_<j> when not given.
    for (auto& p : pedges)
        if (p.name.empty()) p.name = "A" + std::to_string(p.from + 1) + "_" + std::to_string(p.to + 1);

    auto resolve = [&](const Json& ref, const Path& where) -> std::size_t {
        if (ref.is_string()) {
            for (std::size_t e = 0; e < pedges.size(); ++e)
                if (pedges[e].name == ref.get<std::string>()) return e;
            fail(where, "unknown edge variable '" + ref.get<std::string>() + "'");
        }
        if (ref.is_array() && ref.size() == 2) {
            NodeId i = as_node(ref[0], h.n, at(where, 0));
            NodeId j = as_node(ref[1], h.n, at(where, 1));
            if (auto e = edge_by_pair(i, j)) return *e;
            fail(where, "constraint references an undeclared edge");
        }
        fail(where, "expected a variable name or [i, j]");
    };

    if (auto it = doc.find("constraints"); it != doc.end()) {
        if (!it->is_array()) fail("constraints", "expected a list of {kind, args}");
        for (std::size_t k = 0; k < it->size(); ++k) {
            const Path where = at("constraints", k);
            const Json& c = (*it)[k];
            if (!c.is_object()) fail(where, "expected {kind, args}");
            const Json& kind = require(c, "kind", where);
            const Json& args = require(c, "args", where);
            const Path ap = at(where, "args");
            if (!args.is_array() || args.size() != 2) fail(ap, "expected two arguments");
            if (kind == "equal") {
                constraints.emplace_back(EqualConstraint{resolve(args[0], at(ap, 0)), resolve(args[1], at(ap, 1))});
            } else if (kind == "fixed") {
                Matrix w = as_block(args[1], h.d, at(ap, 1));
                if (w.is_zero()) fail(at(ap, 1), "zero weight on a declared edge");
                constraints.emplace_back(FixedConstraint{resolve(args[0], at(ap, 0)), std::move(w)});
            } else if (kind == "sign") {
                if (!args[1].is_string()) fail(at(ap, 1), "expected \"positive\" or \"negative\"");
                auto s = parse_sign(args[1].get<std::string>());
                if (!s) fail(at(ap, 1), "expected \"positive\" or \"negative\"");
                constraints.emplace_back(SignConstraint{resolve(args[0], at(ap, 0)), *s});
            } else {
                fail(at(where, "kind"), "unknown constraint kind (expected equal|fixed|sign)");
            }
        }
    }
    for (auto& [e, w] : inline_weights) constraints.emplace_back(FixedConstraint{e, std::move(w)});

    try {
        return WeightPattern(h.n, h.d, h.symmetry, h.leaders, std::move(pedges), std::move(constraints));
    } catch (const std::exception& e) {
        fail("", e.what());
    }
}

Json parse_document(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail("byte " + std::to_string(e.byte), "malformed JSON: " + std::string(e.what()));
    }
    if (!doc.is_object()) fail("", "document must be a JSON object");
    return doc;
}

Json node_list(const std::vector<NodeId>& nodes) {
    Json out = Json::array();
    for (NodeId v : nodes) out.push_back(v + 1);
    return out;
}

Json header_json(std::string_view kind, std::size_t n, std::size_t d, SymmetryConvention s,
                 const std::vector<NodeId>& leaders) {
    Json j;
    j["kind"] = kind;
    j["n"] = n;
    j["d"] = d;
    j["directed"] = s == SymmetryConvention::none;
    j["symmetry"] = to_string(s);
    j["leaders"] = node_list(leaders);
    return j;
}

}  // namespace

Network parse_network(std::string_view text) {
    Json doc = parse_document(text);
    if (looks_like_pattern(doc)) return pattern_from(doc);
    return graph_from(doc);
}

MatrixWeightedGraph parse_graph(std::string_view text) {
    Network net = parse_network(text);
    if (auto* g = std::get_if<MatrixWeightedGraph>(&net)) return std::move(*g);
    throw ParseError("", "expected a concrete graph (every edge needs a weight), got a weight pattern");
}

WeightPattern parse_pattern(std::string_view text) {
    Network net = parse_network(text);
    if (auto* p = std::get_if<WeightPattern>(&net)) return std::move(*p);
    return WeightPattern::from_topology(std::get<MatrixWeightedGraph>(net));
}

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const Matrix& block) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < block.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < block.cols(); ++c) row.push_back(to_string(block(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const MatrixWeightedGraph& g) {
    Json j = header_json("graph", g.n(), g.d(), g.symmetry(), g.leaders());
    Json edges = Json::array();
    for (const auto& e : g.declared_edges()) {
        Json je;
        je["i"] = e.from + 1;
        je["j"] = e.to + 1;
        je["weight"] = to_json(e.weight);
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    return j;
}

Json to_json(const WeightPattern& p) {
    Json j = header_json("pattern", p.n(), p.d(), p.symmetry(), p.leaders());
    Json edges = Json::array();
    for (const auto& e : p.edges()) {
        Json je;
        je["i"] = e.from + 1;
        je["j"] = e.to + 1;
        je["name"] = e.name;
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    Json constraints = Json::array();
    for (const auto& c : p.constraints()) {
        Json jc;
        if (auto* eq = std::get_if<EqualConstraint>(&c)) {
            jc["kind"] = "equal";
            jc["args"] = Json::array({p.edges()[eq->lhs].name, p.edges()[eq->rhs].name});
        } else if (auto* fx = std::get_if<FixedConstraint>(&c)) {
            jc["kind"] = "fixed";
            jc["args"] = Json::array({p.edges()[fx->edge].name, to_json(fx->value)});
        } else {
            const auto& s = std::get<SignConstraint>(c);
            jc["kind"] = "sign";
            jc["args"] = Json::array({p.edges()[s.edge].name, std::string(to_string(s.sign))});
        }
        constraints.push_back(std::move(jc));
    }
    j["constraints"] = std::move(constraints);
    return j;
}

std::string serialize(const MatrixWeightedGraph& g) { return to_json(g).dump(2) + "\n"; }
std::string serialize(const WeightPattern& p) { return to_json(p).dump(2) + "\n"; }

}  // namespace ssc
