#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <variant>

#include "ssc/graph.hpp"

namespace ssc {

using Json = nlohmann::ordered_json;

using Network = std::variant<MatrixWeightedGraph, WeightPattern>;

/// Parses a network document. A document is a pattern when `"kind":
/// "pattern"` is set, or when it has `variables`/`constraints`, or when any
/// edge omits its weight. Weights on pattern edges become fixed constraints.
/// Every failure is a ParseError whose location points into the document.
Network parse_network(std::string_view text);

/// Parses and requires a concrete graph.
MatrixWeightedGraph parse_graph(std::string_view text);

/// Parses a pattern; a concrete graph is accepted and reduced to its
/// topology with free weights.
WeightPattern parse_pattern(std::string_view text);

Json to_json(const Rational& r);
Json to_json(const Matrix& block);
Json to_json(const MatrixWeightedGraph& g);
Json to_json(const WeightPattern& p);

/// Canonical document text (2-space indent, trailing newline).
std::string serialize(const MatrixWeightedGraph& g);
std::string serialize(const WeightPattern& p);

}  // namespace ssc
