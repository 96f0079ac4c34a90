#include "ssc/ssc_report.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "ssc/controllability.hpp"
#include "ssc/errors.hpp"

namespace ssc {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t base, std::size_t system, std::size_t sample) {
    return mix(mix(base ^ mix(system)) + sample);
}

struct Task {
    std::size_t system;
    std::size_t sample;
};

struct Outcome {
    std::uint64_t seed = 0;
    bool drawn = false;
    std::size_t dim = 0;
};

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "true";
        case Verdict::no: return "false";
        case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

SSCReport estimate_ssc_dimension(const WeightPattern& p, const SSCOptions& opts) {
    if (opts.samples_per_system == 0) throw std::invalid_argument("samples per system must be at least 1");

    SSCReport r;
    r.n = p.n();
    r.d = p.d();
    r.leaders = p.leaders();
    r.requested_mode = opts.enumeration.mode;
    r.effective_mode = effective_mode(p, opts.enumeration.mode);
    r.backend = opts.backend;
    r.seed = opts.seed;
    r.samples_per_system = opts.samples_per_system;
    r.cap = opts.enumeration.cap;

    auto all = enumerate_feasible_eps(p, opts.enumeration);
    r.systems_enumerated = all.size();
    std::vector<EPConstraintSystem> feasible;
    for (auto& sys : all)
        if (sys.feasible) feasible.push_back(std::move(sys));
    std::sort(feasible.begin(), feasible.end(),
              [](const auto& a, const auto& b) { return a.partition < b.partition; });
    if (feasible.empty()) throw SamplingError("pattern constraints admit no weight assignment with every edge nonzero");

    std::vector<Task> tasks;
    for (std::size_t s = 0; s < feasible.size(); ++s)
        for (std::size_t k = 0; k < opts.samples_per_system; ++k) tasks.push_back(Task{s, k});
    std::vector<Outcome> outcomes(tasks.size());

    const BlockMatrix M = build_input_matrix(p.leaders(), p.n(), p.d());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) {
            const auto& task = tasks[t];
            Outcome& out = outcomes[t];
            out.seed = sample_seed(opts.seed, task.system, task.sample);
            try {
                MatrixWeightedGraph g = sample_weights(p, feasible[task.system], out.seed);
                out.dim = controllability_dimension(build_laplacian(g), M, opts.backend);
                out.drawn = true;
            } catch (const SamplingError&) {
                out.drawn = false;
            }
        }
    };
    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, tasks.size())));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }

    for (std::size_t s = 0; s < feasible.size(); ++s) r.systems.push_back(SystemSummary{feasible[s].partition, false});
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        if (!outcomes[t].drawn) continue;
        r.systems[tasks[t].system].witnessed = true;
        r.sampled_dims.push_back(SampledDimension{tasks[t].system, outcomes[t].seed, outcomes[t].dim});
    }

    const Partition singletons = Partition::singletons(p.n());
    for (std::size_t s = 0; s < r.systems.size(); ++s)
        if (r.systems[s].partition == singletons) r.unconstrained_system = s;

    // Systems are in canonical order, so the first minimum wins ties.
    bool found = false;
    for (std::size_t s = 0; s < r.systems.size(); ++s) {
        if (!r.systems[s].witnessed) continue;
        if (!found || r.systems[s].partition.size() < r.k_min) {
            r.k_min = r.systems[s].partition.size();
            r.min_cell_system = s;
            found = true;
        }
    }
    if (!found) throw SamplingError("no feasible system could be sampled; check sign constraints");

    r.bound = p.d() * r.k_min;
    r.witness_partition = r.systems[r.min_cell_system].partition;
    for (std::size_t t = 0; t < tasks.size(); ++t)
        if (tasks[t].system == r.min_cell_system && outcomes[t].drawn) {
            r.witness_graph = sample_weights(p, feasible[r.min_cell_system], outcomes[t].seed);
            break;
        }

    r.ssc_estimate = r.full_dimension();
    for (const auto& s : r.sampled_dims) r.ssc_estimate = std::min(r.ssc_estimate, s.dim);

    if (r.bound < r.full_dimension())
        r.strongly_structurally_controllable = Verdict::no;
    else if (opts.backend == RankBackend::exact && r.ssc_estimate < r.full_dimension())
        r.strongly_structurally_controllable = Verdict::no;
    else
        r.strongly_structurally_controllable = Verdict::unknown;
    return r;
}

namespace {

Json verdict_json(Verdict v) {
    if (v == Verdict::yes) return true;
    if (v == Verdict::no) return false;
    return "unknown";
}

Json partition_json(const Partition& p) {
    Json cells = Json::array();
    for (const auto& c : p.cells()) {
        Json cell = Json::array();
        for (NodeId v : c) cell.push_back(v + 1);
        cells.push_back(std::move(cell));
    }
    return cells;
}

}  // namespace

Json to_json(const SSCReport& r) {
    Json j;
    j["n"] = r.n;
    j["d"] = r.d;
    Json leaders = Json::array();
    for (NodeId l : r.leaders) leaders.push_back(l + 1);
    j["leaders"] = std::move(leaders);
    j["mode"] = {{"requested", to_string(r.requested_mode)}, {"effective", to_string(r.effective_mode)}};
    j["backend"] = to_string(r.backend);
    j["seed"] = r.seed;
    j["samples_per_system"] = r.samples_per_system;
    j["cap"] = r.cap;
    j["systems_enumerated"] = r.systems_enumerated;
    Json systems = Json::array();
    for (std::size_t s = 0; s < r.systems.size(); ++s)
        systems.push_back({{"index", s},
                           {"partition", partition_json(r.systems[s].partition)},
                           {"cells", r.systems[s].partition.size()},
                           {"witnessed", r.systems[s].witnessed}});
    j["feasible_systems"] = std::move(systems);
    j["k_min"] = r.k_min;
    j["bound"] = r.bound;
    Json witness;
    witness["system"] = r.min_cell_system;
    witness["partition"] = partition_json(r.witness_partition);
    witness["graph"] = r.witness_graph ? to_json(*r.witness_graph) : Json();
    j["witness"] = std::move(witness);
    j["unconstrained_system"] = r.unconstrained_system;
    Json dims = Json::array();
    for (const auto& s : r.sampled_dims) dims.push_back({{"system", s.system}, {"seed", s.seed}, {"dim", s.dim}});
    j["sampled_dims"] = std::move(dims);
    j["ssc_estimate"] = r.ssc_estimate;
    j["verdicts"] = {{"strongly_structurally_controllable", verdict_json(r.strongly_structurally_controllable)},
                     {"max_controllable_dimension", r.bound}};
    return j;
}

InvariantSummary invariant_node_report(const SSCReport& r) {
    InvariantSummary s;
    const std::size_t full = r.full_dimension();
    s.not_ssc = r.strongly_structurally_controllable == Verdict::no;
    s.bound_vacuous = r.bound >= full;
    s.invariant = r.ssc_estimate == r.bound;

    if (!s.bound_vacuous) {
        s.text = "not SSC; at most " + std::to_string(r.bound) + " controllable dimensions under any weight selection (" +
                 std::to_string(full) + " total)";
    } else {
        s.text = "bound vacuous; SSC status unknown from EP method";
        if (s.not_ssc)
            s.text += "; a sampled weight selection reached only " + std::to_string(r.ssc_estimate) + " of " +
                      std::to_string(full) + " dimensions, so the network is not SSC";
    }
    if (s.invariant)
        s.text += "\ninvariant: the smallest sampled dimension equals the bound, so " + std::to_string(r.bound) +
                  " controllable dimensions is attained";
    return s;
}

Json to_json(const InvariantSummary& s) {
    return {{"not_ssc", s.not_ssc}, {"bound_vacuous", s.bound_vacuous}, {"invariant", s.invariant}, {"text", s.text}};
}

}  // namespace ssc
