#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "ssc/graph.hpp"
#include "ssc/partition.hpp"

namespace ssc {

/// `strict` drops partitions in which two nodes of one cell have arcs into
/// different sets of cells. That is only sound when weights cannot cancel,
/// so it takes effect only when every edge carries the same sign constraint.
enum class EnumerationMode { strict, cancellative };

std::string_view to_string(EnumerationMode mode);
std::optional<EnumerationMode> parse_enumeration_mode(std::string_view name);

/// Mode actually used for `p` when `requested` is asked for.
EnumerationMode effective_mode(const WeightPattern& p, EnumerationMode requested);

inline constexpr std::size_t kDefaultEnumerationCap = 12;

struct EnumerationOptions {
    EnumerationMode mode = EnumerationMode::cancellative;
    std::size_t cap = kDefaultEnumerationCap;
    EquitableOptions equitable{};
};

/// Equitable conditions of one partition written as a homogeneous linear
/// system over the pattern's weight entries.
///
/// Unknowns are the d² entries of every edge variable (edge e, entry (r,c)
/// at index e·d² + r·d + c) followed by one homogenizing unknown τ that
/// carries the right-hand side of fixed-value constraints. Admissible
/// weights are the solutions with τ = 1, i.e. `particular` plus any
/// combination of `directions`.
struct EPConstraintSystem {
    Partition partition;
    Matrix equations;                        // rows × (edges·d² + 1)
    bool consistent = false;                 // some solution has τ = 1
    Matrix particular;                       // (edges·d²) × 1
    Matrix directions;                       // (edges·d²) × free count
    std::vector<std::size_t> free_unknowns;  // unknown set freely by each direction
    std::vector<std::size_t> forced_zero_edges;
    bool feasible = false;                   // consistent and no edge forced to zero

    std::size_t cells() const noexcept { return partition.size(); }
};

/// Builds and solves the system for one partition of the pattern's nodes.
EPConstraintSystem build_ep_system(const WeightPattern& p, const Partition& partition,
                                   const EquitableOptions& opts = {});

/// Calls `visit` for every partition with each leader a singleton, in
/// restricted-growth order over the followers. With `cells` set, only
/// partitions with exactly that many cells are produced. Returning false
/// from `visit` stops the walk.
void for_each_leader_singleton_partition(const WeightPattern& p, std::optional<std::size_t> cells,
                                         const std::function<bool(const Partition&)>& visit);

/// True when strict mode would skip this partition.
bool strict_prunes(const WeightPattern& p, const Partition& partition, const EquitableOptions& opts = {});

/// Every non-pruned leader-singleton partition with its solved system and
/// feasibility flag. Throws CapExceeded when the follower count exceeds the
/// cap and std::invalid_argument for a pattern without edges.
std::vector<EPConstraintSystem> enumerate_feasible_eps(const WeightPattern& p, const EnumerationOptions& opts = {});

/// Feasible system with the fewest cells; ties go to the smaller partition
/// in canonical order.
EPConstraintSystem min_cell_ep(const WeightPattern& p, const EnumerationOptions& opts = {});

/// d · (cell count of min_cell_ep).
std::size_t ssc_upper_bound(const WeightPattern& p, const EnumerationOptions& opts = {});

struct SamplerOptions {
    long initial_range = 10;   // numerators drawn from [-R, R] \ {0}
    long widened_range = 1000;
    long max_denominator = 4;
    int redraws = 64;          // per range
};

/// Draws an admissible weight assignment: random rational coefficients on
/// the solution directions, redrawn when an edge block comes out zero or a
/// sign constraint fails. Deterministic per seed. Throws SamplingError for
/// infeasible systems or when both ranges are exhausted.
std::vector<BlockWeight> sample_blocks(const WeightPattern& p, const EPConstraintSystem& sys, std::uint64_t seed,
                                       const SamplerOptions& opts = {});

MatrixWeightedGraph sample_weights(const WeightPattern& p, const EPConstraintSystem& sys, std::uint64_t seed,
                                   const SamplerOptions& opts = {});

/// Sampling with only the pattern's own constraints.
MatrixWeightedGraph sample_weights(const WeightPattern& p, std::uint64_t seed, const SamplerOptions& opts = {});

}  // namespace ssc
