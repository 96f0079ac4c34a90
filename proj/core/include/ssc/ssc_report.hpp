#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssc/ep_search.hpp"
#include "ssc/linalg.hpp"
#include "ssc/network_io.hpp"

namespace ssc {

inline constexpr std::size_t kDefaultSamplesPerSystem = 32;

struct SSCOptions {
    EnumerationOptions enumeration{};
    std::size_t samples_per_system = kDefaultSamplesPerSystem;
    std::uint64_t seed = 0;
    RankBackend backend = RankBackend::exact;
    unsigned threads = 0;  // 0: hardware concurrency
};

enum class Verdict { yes, no, unknown };

struct SystemSummary {
    Partition partition;
    bool witnessed = false;  // at least one admissible sample was drawn
};

struct SampledDimension {
    std::size_t system;  // index into SSCReport::systems
    std::uint64_t seed;
    std::size_t dim;
};

struct SSCReport {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<NodeId> leaders;
    EnumerationMode requested_mode = EnumerationMode::cancellative;
    EnumerationMode effective_mode = EnumerationMode::cancellative;
    RankBackend backend = RankBackend::exact;
    std::uint64_t seed = 0;
    std::size_t samples_per_system = 0;
    std::size_t cap = 0;

    std::size_t systems_enumerated = 0;
    std::vector<SystemSummary> systems;  // feasible systems, canonical order
    std::size_t min_cell_system = 0;     // index into systems
    std::size_t unconstrained_system = 0;

    std::size_t k_min = 0;
    std::size_t bound = 0;
    Partition witness_partition = Partition::singletons(1);
    std::optional<MatrixWeightedGraph> witness_graph;

    std::vector<SampledDimension> sampled_dims;
    std::size_t ssc_estimate = 0;
    Verdict strongly_structurally_controllable = Verdict::unknown;

    std::size_t full_dimension() const noexcept { return n * d; }
};

/// Enumerates feasible equitable systems, takes the bound
/// d·k_min from the fewest-cell one, and samples every feasible system to
/// estimate the minimum controllable dimension. The verdict is `no` when the
/// bound is below nd or (exact backend only) some sample is uncontrollable,
/// `unknown` otherwise. Output does not depend on the thread count.
SSCReport estimate_ssc_dimension(const WeightPattern& p, const SSCOptions& opts = {});

std::string_view to_string(Verdict v);

Json to_json(const SSCReport& r);

/// Reading of a report in terms of controllable nodes.
struct InvariantSummary {
    bool not_ssc = false;
    bool bound_vacuous = false;
    bool invariant = false;  // ssc_estimate == bound
    std::string text;
};

InvariantSummary invariant_node_report(const SSCReport& r);
Json to_json(const InvariantSummary& s);

}  // namespace ssc
