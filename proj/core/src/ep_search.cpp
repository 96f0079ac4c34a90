#include "ssc/ep_search.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "ssc/errors.hpp"
#include "ssc/linalg.hpp"

namespace ssc {

std::string_view to_string(EnumerationMode mode) {
    return mode == EnumerationMode::strict ? "strict" : "cancellative";
}

std::optional<EnumerationMode> parse_enumeration_mode(std::string_view name) {
    if (name == "strict") return EnumerationMode::strict;
    if (name == "cancellative") return EnumerationMode::cancellative;
    return std::nullopt;
}

EnumerationMode effective_mode(const WeightPattern& p, EnumerationMode requested) {
    if (requested == EnumerationMode::cancellative || p.edges().empty()) return EnumerationMode::cancellative;
    std::optional<SignRequirement> common;
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
        auto s = p.sign_of(e);
        if (!s || (common && *common != *s)) return EnumerationMode::cancellative;
        common = s;
    }
    return EnumerationMode::strict;
}

namespace {

// Arcs of the pattern as seen from each node for the chosen direction.
std::vector<std::vector<WeightPattern::ArcRef>> arcs_by_node(const WeightPattern& p, NeighborDirection dir) {
    std::vector<std::vector<WeightPattern::ArcRef>> out(p.n());
    for (const auto& a : p.arcs()) out[dir == NeighborDirection::out ? a.from : a.to].push_back(a);
    return out;
}

NodeId far_end(const WeightPattern::ArcRef& a, NeighborDirection dir) {
    return dir == NeighborDirection::out ? a.to : a.from;
}

std::size_t unknown_index(const WeightPattern::ArcRef& a, std::size_t d, std::size_t r, std::size_t c) {
    return a.edge * d * d + (a.transposed ? c * d + r : r * d + c);
}

bool satisfies_sign(const Matrix& block, SignRequirement s) {
    return std::all_of(block.data().begin(), block.data().end(),
                       [&](const Rational& x) { return s == SignRequirement::positive ? sgn(x) > 0 : sgn(x) < 0; });
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool has_sign_constraints(const WeightPattern& p) {
    return std::any_of(p.constraints().begin(), p.constraints().end(),
                       [](const Constraint& c) { return std::holds_alternative<SignConstraint>(c); });
}

}  // namespace

EPConstraintSystem build_ep_system(const WeightPattern& p, const Partition& partition, const EquitableOptions& opts) {
    if (partition.n() != p.n())
        throw InvalidPartition("partition covers " + std::to_string(partition.n()) + " nodes, pattern has " +
                               std::to_string(p.n()));
    const std::size_t d = p.d();
    const std::size_t d2 = d * d;
    const std::size_t unknowns = p.edges().size() * d2;
    const std::size_t tau = unknowns;
    const auto arcs = arcs_by_node(p, opts.direction);

    std::vector<std::vector<Rational>> rows;
    auto push_rows = [&](std::vector<std::vector<Rational>> block) {
        for (auto& row : block)
            if (std::any_of(row.begin(), row.end(), [](const Rational& x) { return sgn(x) != 0; }))
                rows.push_back(std::move(row));
    };
    auto fresh_block = [&] { return std::vector<std::vector<Rational>>(d2, std::vector<Rational>(unknowns + 1)); };

    // Pairs (representative, s) suffice: equality is transitive.
    for (std::size_t i = 0; i < partition.size(); ++i) {
        const auto& cell = partition.cell(i);
        const NodeId rep = cell.front();
        for (std::size_t m = 1; m < cell.size(); ++m) {
            const NodeId s = cell[m];
            for (std::size_t j = 0; j < partition.size(); ++j) {
                if (j == i && !opts.include_own_cell) continue;
                auto block = fresh_block();
                auto add = [&](NodeId node, int sign) {
                    for (const auto& a : arcs[node]) {
                        if (partition.cell_of(far_end(a, opts.direction)) != j) continue;
                        for (std::size_t r = 0; r < d; ++r)
                            for (std::size_t c = 0; c < d; ++c) block[r * d + c][unknown_index(a, d, r, c)] += sign;
                    }
                };
                add(rep, +1);
                add(s, -1);
                push_rows(std::move(block));
            }
        }
    }

    for (const auto& constraint : p.constraints()) {
        if (auto* eq = std::get_if<EqualConstraint>(&constraint)) {
            auto block = fresh_block();
            for (std::size_t k = 0; k < d2; ++k) {
                block[k][eq->lhs * d2 + k] += 1;
                block[k][eq->rhs * d2 + k] -= 1;
            }
            push_rows(std::move(block));
        } else if (auto* fx = std::get_if<FixedConstraint>(&constraint)) {
            auto block = fresh_block();
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) {
                    block[r * d + c][fx->edge * d2 + r * d + c] = 1;
                    block[r * d + c][tau] = -fx->value(r, c);
                }
            push_rows(std::move(block));
        }
    }

    EPConstraintSystem sys{partition, Matrix(rows.size(), unknowns + 1), false, Matrix(unknowns, 1),
                           Matrix(unknowns, 0), {}, {}, false};
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c <= unknowns; ++c) sys.equations(r, c) = rows[r][c];

    NullSpace ns = nullspace(sys.equations);
    auto tau_pos = std::find(ns.free_columns.begin(), ns.free_columns.end(), tau);
    sys.consistent = tau_pos != ns.free_columns.end();
    if (!sys.consistent) return sys;

    const std::size_t tau_k = static_cast<std::size_t>(tau_pos - ns.free_columns.begin());
    sys.particular = ns.basis.slice(0, tau_k, unknowns, 1);
    sys.directions = Matrix(unknowns, ns.free_columns.size() - 1);
    for (std::size_t k = 0, out = 0; k < ns.free_columns.size(); ++k) {
        if (k == tau_k) continue;
        for (std::size_t r = 0; r < unknowns; ++r) sys.directions(r, out) = ns.basis(r, k);
        sys.free_unknowns.push_back(ns.free_columns[k]);
        ++out;
    }

    // An edge is forced to zero iff all of its coordinate functionals vanish
    // on the affine solution set.
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
        bool zero = true;
        for (std::size_t k = e * d2; zero && k < (e + 1) * d2; ++k) {
            if (sgn(sys.particular(k, 0)) != 0) zero = false;
            for (std::size_t c = 0; zero && c < sys.directions.cols(); ++c)
                if (sgn(sys.directions(k, c)) != 0) zero = false;
        }
        if (zero) sys.forced_zero_edges.push_back(e);
    }
    sys.feasible = sys.forced_zero_edges.empty();
    return sys;
}

void for_each_leader_singleton_partition(const WeightPattern& p, std::optional<std::size_t> cells,
                                         const std::function<bool(const Partition&)>& visit) {
    const std::size_t m = p.leaders().size();
    std::vector<NodeId> followers;
    for (NodeId v = 0; v < p.n(); ++v)
        if (!p.is_leader(v)) followers.push_back(v);
    const std::size_t f = followers.size();

    std::vector<std::size_t> labels(p.n());
    for (std::size_t l = 0; l < m; ++l) labels[p.leaders()[l]] = l;

    if (f == 0) {
        if (!cells || *cells == m) visit(Partition::from_labels(labels));
        return;
    }
    if (cells && (*cells < m + 1 || *cells > m + f)) return;
    const std::optional<std::size_t> blocks = cells ? std::optional(*cells - m) : std::nullopt;

    // Restricted growth string: follower k joins an existing block or opens
    // block `used`.
    std::vector<std::size_t> rgs(f);
    std::function<bool(std::size_t, std::size_t)> walk = [&](std::size_t k, std::size_t used) -> bool {
        if (blocks && used + (f - k) < *blocks) return true;
        if (k == f) {
            if (blocks && used != *blocks) return true;
            for (std::size_t i = 0; i < f; ++i) labels[followers[i]] = m + rgs[i];
            return visit(Partition::from_labels(labels));
        }
        for (std::size_t b = 0; b <= used; ++b) {
            if (b == used && blocks && used == *blocks) break;
            rgs[k] = b;
            if (!walk(k + 1, b == used ? used + 1 : used)) return false;
        }
        return true;
    };
    walk(0, 0);
}

bool strict_prunes(const WeightPattern& p, const Partition& partition, const EquitableOptions& opts) {
    const auto arcs = arcs_by_node(p, opts.direction);
    auto reach = [&](NodeId v, std::size_t own) {
        std::set<std::size_t> cells;
        for (const auto& a : arcs[v]) cells.insert(partition.cell_of(far_end(a, opts.direction)));
        if (!opts.include_own_cell) cells.erase(own);
        return cells;
    };
    for (std::size_t i = 0; i < partition.size(); ++i) {
        const auto& cell = partition.cell(i);
        const auto first = reach(cell.front(), i);
        for (std::size_t m = 1; m < cell.size(); ++m)
            if (reach(cell[m], i) != first) return true;
    }
    return false;
}

namespace {

void check_enumerable(const WeightPattern& p, const EnumerationOptions& opts) {
    if (p.edges().empty()) throw std::invalid_argument("empty pattern: no edges declared");
    if (p.follower_count() > opts.cap)
        throw CapExceeded("pattern has " + std::to_string(p.follower_count()) +
                          " followers, enumeration cap is " + std::to_string(opts.cap) +
                          "; raise --cap (Bell-number growth) or add leaders");
}

// Feasible, and when signs are constrained, witnessed by a sign-respecting
// sample.
bool admissible(const WeightPattern& p, const EPConstraintSystem& sys) {
    if (!sys.feasible) return false;
    if (!has_sign_constraints(p)) return true;
    try {
        sample_blocks(p, sys, 0);
        return true;
    } catch (const SamplingError&) {
        return false;
    }
}

}  // namespace

std::vector<EPConstraintSystem> enumerate_feasible_eps(const WeightPattern& p, const EnumerationOptions& opts) {
    check_enumerable(p, opts);
    const bool strict = effective_mode(p, opts.mode) == EnumerationMode::strict;
    std::vector<EPConstraintSystem> out;
    for_each_leader_singleton_partition(p, std::nullopt, [&](const Partition& part) {
        if (!(strict && strict_prunes(p, part, opts.equitable))) out.push_back(build_ep_system(p, part, opts.equitable));
        return true;
    });
    return out;
}

EPConstraintSystem min_cell_ep(const WeightPattern& p, const EnumerationOptions& opts) {
    check_enumerable(p, opts);
    const bool strict = effective_mode(p, opts.mode) == EnumerationMode::strict;
    const std::size_t m = p.leaders().size();
    const std::size_t first = p.follower_count() == 0 ? m : m + 1;
    for (std::size_t k = first; k <= p.n(); ++k) {
        std::optional<EPConstraintSystem> best;
        for_each_leader_singleton_partition(p, k, [&](const Partition& part) {
            if (strict && strict_prunes(p, part, opts.equitable)) return true;
            if (best && !(part < best->partition)) return true;
            EPConstraintSystem sys = build_ep_system(p, part, opts.equitable);
            if (admissible(p, sys)) best = std::move(sys);
            return true;
        });
        if (best) return *best;
    }
    // The all-singleton partition has no equitable equations, so only the
    // pattern's own constraints can make it inadmissible.
    throw SamplingError("pattern constraints admit no weight assignment with every edge nonzero");
}

std::size_t ssc_upper_bound(const WeightPattern& p, const EnumerationOptions& opts) {
    return p.d() * min_cell_ep(p, opts).cells();
}

std::vector<BlockWeight> sample_blocks(const WeightPattern& p, const EPConstraintSystem& sys, std::uint64_t seed,
                                       const SamplerOptions& opts) {
    if (!sys.consistent) throw SamplingError("constraint system is inconsistent; no admissible weights");
    if (!sys.feasible) {
        const auto& e = p.edges()[sys.forced_zero_edges.front()];
        throw SamplingError("infeasible system: edge " + e.name + " is forced to zero");
    }
    const std::size_t d = p.d();
    const std::size_t d2 = d * d;
    const std::size_t edges = p.edges().size();

    std::mt19937_64 rng(splitmix64(seed));
    std::uniform_int_distribution<long> den(1, std::max(1L, opts.max_denominator));

    std::string last_offender;
    for (long range : {opts.initial_range, opts.widened_range}) {
        std::uniform_int_distribution<long> mag(1, std::max(1L, range));
        std::bernoulli_distribution coin(0.5);
        for (int attempt = 0; attempt < opts.redraws; ++attempt) {
            std::vector<Rational> x(edges * d2);
            for (std::size_t k = 0; k < x.size(); ++k) x[k] = sys.particular(k, 0);
            for (std::size_t c = 0; c < sys.directions.cols(); ++c) {
                const std::size_t edge = sys.free_unknowns[c] / d2;
                long num = mag(rng);
                auto sign = p.sign_of(edge);
                bool negative = sign ? *sign == SignRequirement::negative : coin(rng);
                Rational coeff(negative ? -num : num, den(rng));
                coeff.canonicalize();
                for (std::size_t k = 0; k < x.size(); ++k)
                    if (sgn(sys.directions(k, c)) != 0) x[k] += coeff * sys.directions(k, c);
            }

            std::vector<BlockWeight> blocks(edges, Matrix(d, d));
            bool ok = true;
            for (std::size_t e = 0; e < edges && ok; ++e) {
                for (std::size_t k = 0; k < d2; ++k) blocks[e](k / d, k % d) = x[e * d2 + k];
                auto sign = p.sign_of(e);
                if (blocks[e].is_zero() || (sign && !satisfies_sign(blocks[e], *sign))) {
                    ok = false;
                    last_offender = p.edges()[e].name;
                }
            }
            if (ok) return blocks;
        }
    }
    throw SamplingError("rejection budget exhausted; edge " + last_offender +
                        " kept coming out zero or violating its sign constraint");
}

MatrixWeightedGraph sample_weights(const WeightPattern& p, const EPConstraintSystem& sys, std::uint64_t seed,
                                   const SamplerOptions& opts) {
    return p.instantiate(sample_blocks(p, sys, seed, opts));
}

MatrixWeightedGraph sample_weights(const WeightPattern& p, std::uint64_t seed, const SamplerOptions& opts) {
    return sample_weights(p, build_ep_system(p, Partition::singletons(p.n())), seed, opts);
}

}  // namespace ssc
