#include "ssc/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ssc/controllability.hpp"
#include "ssc/errors.hpp"
#include "ssc/network_io.hpp"
#include "ssc/ssc_report.hpp"

#ifndef SSC_DEFAULT_CORPUS_DIR
#define SSC_DEFAULT_CORPUS_DIR "corpus"
#endif

namespace ssc::cli {
namespace {

namespace fs = std::filesystem;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("", "cannot read input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
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

std::string leaders_text(const std::vector<NodeId>& leaders) {
    std::string s = "[";
    for (std::size_t k = 0; k < leaders.size(); ++k) s += (k ? "," : "") + std::to_string(leaders[k] + 1);
    return s + "]";
}

Matrix input_matrix(const MatrixWeightedGraph& g) { return build_input_matrix(g.leaders(), g.n(), g.d()); }

void emit(const Json& j, std::ostream& out) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------- commands

int cmd_laplacian(const AnalysisConfig& cfg, std::ostream& out) {
    auto g = parse_graph(read_input(cfg.input));
    Matrix L = build_laplacian(g);
    Matrix M = input_matrix(g);
    if (cfg.format == OutputFormat::json) {
        emit(Json{{"n", g.n()}, {"d", g.d()}, {"laplacian", to_json(L)}, {"input_matrix", to_json(M)}}, out);
        return ok;
    }
    out << "L (" << g.n() << "x" << g.n() << " blocks of " << g.d() << "x" << g.d() << "):\n"
        << render_block_matrix(L, g.d()) << "\nM (leaders " << leaders_text(g.leaders()) << "):\n"
        << render_block_matrix(M, g.d());
    return ok;
}

int cmd_ep(const AnalysisConfig& cfg, std::ostream& out) {
    auto g = parse_graph(read_input(cfg.input));
    if (!cfg.partition) {
        Partition p = coarsest_ep(g, g.leaders(), cfg.equitable);
        if (cfg.format == OutputFormat::json)
            emit(Json{{"coarsest_ep", partition_json(p)}, {"cells", p.size()}}, out);
        else
            out << "coarsest equitable partition (leaders protected): " << format_partition(p) << "\ncells: "
                << p.size() << '\n';
        return ok;
    }
    Partition p = parse_partition(*cfg.partition, g.n());
    EPReport rep = verify_equitable(g, p, cfg.equitable);
    if (cfg.format == OutputFormat::json) {
        Json violations = Json::array();
        for (const auto& v : rep.violations)
            violations.push_back({{"cell", v.cell + 1},
                                  {"r", v.r + 1},
                                  {"s", v.s + 1},
                                  {"target", v.target + 1},
                                  {"sum_r", to_json(v.sum_r)},
                                  {"sum_s", to_json(v.sum_s)}});
        emit(Json{{"partition", partition_json(p)}, {"equitable", rep.equitable}, {"violations", violations}}, out);
        return ok;
    }
    out << "partition: " << format_partition(p) << "\nequitable: " << (rep.equitable ? "true" : "false") << '\n';
    for (const auto& v : rep.violations) {
        out << "  violation: nodes " << v.r + 1 << " and " << v.s + 1 << " of cell " << v.cell + 1
            << " differ into cell " << v.target + 1 << '\n';
        if (g.d() == 1) {
            out << "    sums " << to_string(v.sum_r(0, 0)) << " vs " << to_string(v.sum_s(0, 0)) << '\n';
        } else {
            out << "    sum from " << v.r + 1 << ":\n" << render_block_matrix(v.sum_r, g.d());
            out << "    sum from " << v.s + 1 << ":\n" << render_block_matrix(v.sum_s, g.d());
        }
    }
    return ok;
}

int cmd_quotient(const AnalysisConfig& cfg, std::ostream& out) {
    auto g = parse_graph(read_input(cfg.input));
    Partition p = cfg.partition ? parse_partition(*cfg.partition, g.n()) : coarsest_ep(g, g.leaders(), cfg.equitable);
    QuotientGraph q = quotient(g, p);
    BlockMatrix Lpi = quotient_laplacian(q);
    LiftCheck lift = verify_lift(build_laplacian(g), characteristic_matrix(p, g.d()), Lpi);
    if (cfg.format == OutputFormat::json) {
        Json weights = Json::array();
        for (const auto& [key, w] : q.weights)
            weights.push_back({{"i", key.first + 1}, {"j", key.second + 1}, {"weight", to_json(w)}});
        emit(Json{{"partition", partition_json(p)},
                  {"k", q.k},
                  {"d", q.d},
                  {"weights", weights},
                  {"quotient_laplacian", to_json(Lpi.matrix())},
                  {"lift", {{"commutes", lift.commutes}, {"invariant", lift.invariant}}}},
             out);
        return ok;
    }
    out << "partition: " << format_partition(p) << "\nquotient weights d(Vi,Vj):\n";
    for (const auto& [key, w] : q.weights) {
        out << "  " << key.first + 1 << " -> " << key.second + 1 << ": ";
        if (q.d == 1)
            out << to_string(w(0, 0)) << '\n';
        else
            out << '\n' << render_block_matrix(w, q.d);
    }
    out << "quotient Laplacian:\n"
        << render_block_matrix(Lpi.matrix(), q.d) << "L P = P Lpi: " << (lift.commutes ? "true" : "false")
        << "\nim(P) invariant under L: " << (lift.invariant ? "true" : "false") << '\n';
    return ok;
}

SSCReport run_bound(const WeightPattern& p, const AnalysisConfig& cfg) {
    SSCOptions opts;
    opts.enumeration.mode = cfg.mode;
    opts.enumeration.cap = cfg.cap;
    opts.enumeration.equitable = cfg.equitable;
    opts.samples_per_system = cfg.samples;
    opts.seed = cfg.seed;
    opts.backend = cfg.backend;
    return estimate_ssc_dimension(p, opts);
}

int cmd_bound(const AnalysisConfig& cfg, std::ostream& out) {
    auto p = parse_pattern(read_input(cfg.input));
    SSCReport r = run_bound(p, cfg);
    InvariantSummary summary = invariant_node_report(r);
    if (cfg.format == OutputFormat::json) {
        Json j = to_json(r);
        j["summary"] = to_json(summary);
        emit(j, out);
        return ok;
    }
    out << "network: n=" << r.n << " d=" << r.d << " leaders=" << leaders_text(r.leaders) << '\n'
        << "mode: " << to_string(r.effective_mode) << " (requested " << to_string(r.requested_mode) << ")\n"
        << "backend: " << to_string(r.backend) << "  seed: " << r.seed << "  samples/system: " << r.samples_per_system
        << "  cap: " << r.cap << '\n'
        << "feasible equitable systems: " << r.systems.size() << " of " << r.systems_enumerated << " enumerated\n";
    for (std::size_t s = 0; s < r.systems.size(); ++s) {
        std::size_t lo = SIZE_MAX, hi = 0, count = 0;
        for (const auto& sd : r.sampled_dims)
            if (sd.system == s) {
                lo = std::min(lo, sd.dim);
                hi = std::max(hi, sd.dim);
                ++count;
            }
        out << "  #" << s << ' ' << format_partition(r.systems[s].partition)
            << "  cells=" << r.systems[s].partition.size();
        if (count)
            out << "  dims " << lo << ".." << hi << " over " << count << " samples";
        else
            out << "  no admissible sample";
        out << '\n';
    }
    out << "k_min: " << r.k_min << "\nbound: " << r.bound << " of " << r.full_dimension()
        << "\nwitness: " << format_partition(r.witness_partition) << "\nssc_estimate: " << r.ssc_estimate
        << "\nstrongly structurally controllable: " << to_string(r.strongly_structurally_controllable) << '\n'
        << summary.text << '\n';
    return ok;
}

int cmd_dual(const AnalysisConfig& cfg, std::ostream& out) {
    auto g = parse_graph(read_input(cfg.input));
    Matrix L = build_laplacian(g);
    Matrix M = input_matrix(g);
    auto [Lt, Mt] = dual_pair(L, M);
    const bool self_dual = Lt == L;
    const std::size_t dual_dim = controllability_dimension(Lt, Mt, cfg.backend);
    const std::size_t obs = observability_rank(L, M, cfg.backend);
    ReversalCheck rc = reversal_check(g);
    const bool balanced = is_weight_balanced(g);
    if (cfg.format == OutputFormat::json) {
        Json mismatches = Json::array();
        for (const auto& m : rc.mismatches)
            mismatches.push_back({{"row", m.row + 1},
                                  {"col", m.col + 1},
                                  {"reversed", to_json(m.reversed)},
                                  {"transposed", to_json(m.transposed)}});
        emit(Json{{"self_dual", self_dual},
                  {"dual_controllable_dimension", dual_dim},
                  {"observability_rank", obs},
                  {"weight_balanced", balanced},
                  {"reversal", {{"holds", rc.holds}, {"mismatches", mismatches}}}},
             out);
        return ok;
    }
    out << (self_dual ? "self-dual: L^T = L, the dual pair equals the original\n"
                      : "not self-dual: L^T differs from L\n")
        << "controllable dimension of (L^T, M): " << dual_dim << "\nobservability rank of (L, M): " << obs
        << "\nweight balanced: " << (balanced ? "true" : "false")
        << "\nreversal realizes the dual: " << (rc.holds ? "true" : "false") << '\n';
    for (const auto& m : rc.mismatches) {
        out << "  mismatch at block (" << m.row + 1 << "," << m.col + 1 << "): reversed ";
        if (g.d() == 1)
            out << to_string(m.reversed(0, 0)) << " vs transposed " << to_string(m.transposed(0, 0)) << '\n';
        else
            out << '\n'
                << render_block_matrix(m.reversed, g.d()) << "  transposed\n"
                << render_block_matrix(m.transposed, g.d());
    }
    return ok;
}

// ------------------------------------------------------------------ corpus

struct CheckResult {
    std::string file;
    std::string check;
    Json expected;
    Json actual;
    bool pass;
};

std::vector<CheckResult> run_corpus_entry(const fs::path& dir, const Json& entry, const AnalysisConfig& cfg) {
    const std::string file = entry.at("file").get<std::string>();
    const Json& expect = entry.at("expect");
    const std::string text = read_input((dir / file).string());
    Network net = parse_network(text);
    std::vector<CheckResult> out;
    auto check = [&](const std::string& name, Json expected, Json actual) {
        const bool pass = expected == actual;
        out.push_back({file, name, std::move(expected), std::move(actual), pass});
    };

    const auto* g = std::get_if<MatrixWeightedGraph>(&net);
    WeightPattern p = g ? WeightPattern::from_topology(*g) : std::get<WeightPattern>(net);

    if (g) {
        Matrix L = build_laplacian(*g);
        Matrix M = input_matrix(*g);
        if (expect.contains("krylov_dim")) check("krylov_dim", expect["krylov_dim"], controllability_dimension(L, M));
        if (expect.contains("laplacian_zero")) check("laplacian_zero", expect["laplacian_zero"], L.is_zero());
        if (expect.contains("coarsest_ep"))
            check("coarsest_ep", expect["coarsest_ep"], format_partition(coarsest_ep(*g, g->leaders())));
        if (expect.contains("lift")) {
            Partition part = parse_partition(expect["lift"].get<std::string>(), g->n());
            auto lift = verify_lift(BlockMatrix(L, g->d()), characteristic_matrix(part, g->d()), quotient_laplacian(quotient(*g, part)));
            check("lift " + format_partition(part), true, lift.ok());
        }
        if (expect.contains("self_dual")) check("self_dual", expect["self_dual"], dual_pair(L, M).first == L);
        if (expect.contains("reversal_holds"))
            check("reversal_holds", expect["reversal_holds"], reversal_check(*g).holds);
        if (expect.contains("weight_balanced"))
            check("weight_balanced", expect["weight_balanced"], is_weight_balanced(*g));
    }

    if (expect.contains("bound") || expect.contains("ssc_estimate") || expect.contains("verdict")) {
        SSCReport r = run_bound(p, cfg);
        if (expect.contains("k_min")) check("k_min", expect["k_min"], r.k_min);
        if (expect.contains("bound")) check("bound", expect["bound"], r.bound);
        if (expect.contains("ssc_estimate")) check("ssc_estimate", expect["ssc_estimate"], r.ssc_estimate);
        if (expect.contains("verdict")) check("verdict", expect["verdict"], to_string(r.strongly_structurally_controllable));
        // Sampled dimensions never exceed d times the cell count of their system.
        bool within = r.ssc_estimate <= r.bound;
        for (const auto& s : r.sampled_dims) {
            within = within && s.dim <= r.d * r.systems[s.system].partition.size();
            if (s.system == r.min_cell_system) within = within && s.dim <= r.bound;
        }
        check("sampled dims within bounds", true, within);
    }
    return out;
}

int cmd_corpus(const AnalysisConfig& cfg, std::ostream& out, std::ostream& err) {
    fs::path dir = cfg.input.empty() ? fs::path(default_corpus_dir()) : fs::path(cfg.input);
    fs::path manifest = fs::is_directory(dir) ? dir / "manifest.json" : dir;
    if (!fs::is_directory(dir)) dir = dir.parent_path();
    Json doc;
    try {
        doc = Json::parse(read_input(manifest.string()));
    } catch (const Json::parse_error& e) {
        throw ParseError(manifest.string(), e.what());
    }

    std::vector<CheckResult> results;
    for (const auto& entry : doc.at("networks")) {
        auto part = run_corpus_entry(dir, entry, cfg);
        results.insert(results.end(), part.begin(), part.end());
    }
    const auto failed = static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return !r.pass; }));

    if (cfg.format == OutputFormat::json) {
        Json arr = Json::array();
        for (const auto& r : results)
            arr.push_back({{"file", r.file}, {"check", r.check}, {"expected", r.expected}, {"actual", r.actual},
                           {"pass", r.pass}});
        emit(Json{{"results", arr}, {"passed", results.size() - failed}, {"failed", failed}}, out);
    } else {
        for (const auto& r : results) {
            out << (r.pass ? "PASS  " : "FAIL  ") << r.file << "  " << r.check << " = " << r.actual.dump();
            if (!r.pass) out << " (expected " << r.expected.dump() << ")";
            out << '\n';
        }
        out << results.size() - failed << " passed, " << failed << " failed\n";
    }
    if (failed) {
        err << "corpus: " << failed << " check(s) failed\n";
        return internal_error;
    }
    return ok;
}

}  // namespace

std::string default_corpus_dir() {
    if (const char* env = std::getenv("SSC_CORPUS_DIR"); env && *env) return env;
    return SSC_DEFAULT_CORPUS_DIR;
}

std::string render_block_matrix(const Matrix& m, std::size_t d) {
    std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
    std::vector<std::size_t> width(m.cols(), 1);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            cells[r][c] = to_string(m(r, c));
            width[c] = std::max(width[c], cells[r][c].size());
        }
    const bool blocks = d > 1;
    std::string rule;
    if (blocks) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c && c % d == 0) rule += "-+";
            rule += std::string(width[c] + 1, '-');
        }
        rule = "  " + rule.substr(1) + '\n';
    }
    std::string s;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (blocks && r && r % d == 0) s += rule;
        s += ' ';
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (blocks && c && c % d == 0) s += " |";
            s += ' ' + std::string(width[c] - cells[r][c].size(), ' ') + cells[r][c];
        }
        s += '\n';
    }
    return s;
}

int execute(const AnalysisConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == "laplacian") return cmd_laplacian(cfg, out);
        if (cfg.command == "ep") return cmd_ep(cfg, out);
        if (cfg.command == "quotient") return cmd_quotient(cfg, out);
        if (cfg.command == "bound") return cmd_bound(cfg, out);
        if (cfg.command == "dual") return cmd_dual(cfg, out);
        if (cfg.command == "corpus") return cmd_corpus(cfg, out, err);
        err << "error: unknown command '" << cfg.command << "'\n";
        return bad_argument;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return parse_error;
    } catch (const CapExceeded& e) {
        err << "resource cap: " << e.what() << '\n';
        return resource_cap;
    } catch (const InvalidPartition& e) {
        err << "invalid partition: " << e.what() << '\n';
        return bad_argument;
    } catch (const NotEquitable& e) {
        err << "not equitable: " << e.what() << '\n';
        return bad_argument;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return bad_argument;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return internal_error;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equitable-partition bounds on leader-follower controllability", "ssc"};
    app.require_subcommand(1);
    app.fallthrough();

    AnalysisConfig cfg;
    std::string mode = "cancellative";
    std::string backend = "exact";
    std::string format = "text";
    std::string direction = "out";
    bool exclude_own = false;

    app.add_option("--input,-i", cfg.input, "Network document (JSON), '-' for stdin; manifest or directory for corpus");
    app.add_option("--partition,-p", cfg.partition, "Partition, e.g. '[[1],[2,3],[4]]' or '1|2,3|4' (1-based)");
    app.add_option("--mode", mode, "Enumeration mode")->check(CLI::IsMember({"strict", "cancellative"}));
    app.add_option("--samples", cfg.samples, "Samples per constraint system")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Sampling seed");
    app.add_option("--backend", backend, "Rank backend")
        ->check(CLI::IsMember({"exact", "floating"}))
        ->envname("SSC_BACKEND");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--cap", cfg.cap, "Maximum follower count for partition enumeration")->check(CLI::PositiveNumber);
    app.add_option("--direction", direction, "Neighbor sums used for the equitable test")
        ->check(CLI::IsMember({"out", "in"}));
    app.add_flag("--exclude-own-cell", exclude_own, "Skip sums into the cell holding the compared pair");

    struct Sub {
        const char* name;
        const char* help;
        bool needs_input;
    };
    const Sub subs[] = {
        {"laplacian", "Print the block Laplacian L and input matrix M", true},
        {"ep", "Check a partition for equitability, or print the coarsest leader-protected one", true},
        {"quotient", "Quotient graph, its Laplacian and the lift check", true},
        {"bound", "Equitable-partition bound and sampled controllable dimensions", true},
        {"dual", "Dual pair, observability rank and edge-reversal check", true},
        {"corpus", "Run the checks listed in a corpus manifest", false},
    };
    for (const auto& s : subs) app.add_subcommand(s.name, s.help);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return bad_argument;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    cfg.mode = *parse_enumeration_mode(mode);
    cfg.backend = *parse_rank_backend(backend);
    cfg.format = format == "json" ? OutputFormat::json : OutputFormat::text;
    cfg.equitable.include_own_cell = !exclude_own;
    cfg.equitable.direction = direction == "in" ? NeighborDirection::in : NeighborDirection::out;

    for (const auto& s : subs)
        if (cfg.command == s.name && s.needs_input && cfg.input.empty()) {
            err << "error: " << s.name << " requires --input\n";
            return bad_argument;
        }
    return execute(cfg, out, err);
}

}  // namespace ssc::cli
