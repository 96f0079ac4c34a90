// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "ssc/controllability.hpp"
#include "ssc/ep_search.hpp"
#include "ssc/linalg.hpp"
#include "ssc/network_io.hpp"
#include "ssc/ssc_report.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace ssc;
using namespace ssc::testing;

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v.pass = false;
        v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_seconds > 0 && secs > limit_seconds) {
        if (v.pass) v.detail = "runtime limit exceeded";
        v.pass = false;
    }
    failures += !v.pass;
    std::printf("%s  [%d] %s  (%.3fs", v.pass ? "PASS" : "FAIL", id, title, secs);
    if (limit_seconds > 0) std::printf(" / limit %.0fs", limit_seconds);
    std::printf(")%s%s\n", v.detail.empty() ? "" : "  ", v.detail.c_str());
}

Matrix input_of(const MatrixWeightedGraph& g) { return build_input_matrix(g.leaders(), g.n(), g.d()); }

std::size_t krylov(const MatrixWeightedGraph& g) { return controllable_subspace(build_laplacian(g), input_of(g)).dim; }

std::vector<std::pair<std::string, Network>> load_corpus() {
    std::vector<std::pair<std::string, Network>> out;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(SSC_CORPUS_DIR))
        if (entry.path().extension() == ".json" && entry.path().filename() != "manifest.json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        std::ifstream in(f);
        std::stringstream ss;
        ss << in.rdbuf();
        out.emplace_back(f.filename().string(), parse_network(ss.str()));
    }
    return out;
}

WeightPattern random_pattern(std::mt19937_64& rng, std::size_t n, std::size_t d, bool is_directed,
                             std::size_t max_leaders) {
    for (;;) {
        auto g = random_graph(rng, n, d, is_directed, 0.5, max_leaders);
        if (!g.adjacency().empty()) return WeightPattern::from_topology(g);
    }
}

}  // namespace

int main() {
    criterion(1, "characteristic matrix of {{1,2},{3,4,5}} for d = 1,2,3 (exact)", 1.0, [] {
        Outcome v;
        Partition p({{0, 1}, {2, 3, 4}}, 5);
        for (std::size_t d = 1; d <= 3; ++d) {
            Matrix expected(5 * d, 2 * d);
            for (std::size_t node = 0; node < 5; ++node)
                for (std::size_t k = 0; k < d; ++k) expected(node * d + k, (node < 2 ? 0 : d) + k) = 1;
            v.require(characteristic_matrix(p, d).matrix() == expected, "pattern mismatch at d=" + std::to_string(d));
            v.require(oracle::rank_gauss(expected) == 2 * d, "rank");
        }
        return v;
    });

    criterion(2, "diamond: k_min=3, bound=3<4, not SSC; EP samples dim 3; >=95/100 free samples dim 4", 5.0, [] {
        Outcome v;
        auto p = diamond_pattern();
        SSCOptions opts;
        opts.seed = 1;
        auto r = estimate_ssc_dimension(p, opts);
        v.require(r.k_min == 3, "k_min=" + std::to_string(r.k_min));
        v.require(r.bound == 3 && r.bound < r.full_dimension(), "bound=" + std::to_string(r.bound));
        v.require(r.strongly_structurally_controllable == ssc::Verdict::no, "verdict not 'no'");

        auto sys = build_ep_system(p, Partition({{0}, {1, 2}, {3}}, 4));
        v.require(sys.feasible, "EP system infeasible");
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            auto g = sample_weights(p, sys, seed);
            v.require(*g.weight(0, 1) == *g.weight(0, 2) && *g.weight(1, 3) == *g.weight(2, 3),
                      "EP sample violates A12=A13, A24=A34");
            const auto dim = krylov(g);
            v.require(dim == 3 && oracle::kalman_rank(build_laplacian(g), input_of(g)) == 3,
                      "EP sample seed " + std::to_string(seed) + " dim " + std::to_string(dim));
        }
        int full = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) full += krylov(sample_weights(p, seed)) == 4;
        v.require(full >= 95, "only " + std::to_string(full) + "/100 unconstrained samples reached 4");
        if (v.pass) v.detail = std::to_string(full) + "/100 unconstrained samples at dim 4";
        return v;
    });

    criterion(3, "lifted random graphs: L P = P Lpi and rank([P|LP]) = rank(P) on 200 cases", 30.0, [] {
        Outcome v;
        std::mt19937_64 rng(2024);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n = 2 + trial % 9;
            const std::size_t d = 1 + trial % 3;
            auto [g, p] = random_lift(rng, n, d);
            Matrix L = build_laplacian(g);
            Matrix P = characteristic_matrix(p, d);
            Matrix Lpi = quotient_laplacian(quotient(g, p));
            v.require(L * P == P * Lpi, "L P != P Lpi at trial " + std::to_string(trial));
            v.require(oracle::rank_gauss(hstack(P, L * P)) == oracle::rank_gauss(P),
                      "im(P) not invariant at trial " + std::to_string(trial));
        }
        return v;
    });

    criterion(4, "sampled subspaces inside im(P) for 100 diamond/star/K3 EP samples", 0, [] {
        Outcome v;
        std::vector<std::pair<WeightPattern, EPConstraintSystem>> systems;
        for (const auto& p : {diamond_pattern(), star4_pattern(), k3_pattern()})
            for (auto& s : enumerate_feasible_eps(p))
                if (s.feasible) systems.emplace_back(p, std::move(s));
        for (std::size_t k = 0; k < 100; ++k) {
            const auto& [p, sys] = systems[k % systems.size()];
            auto g = sample_weights(p, sys, 1000 + k);
            Matrix P = characteristic_matrix(sys.partition, p.d());
            auto basis = controllable_subspace(build_laplacian(g), input_of(g)).basis;
            v.require(oracle::rank_gauss(hstack(P, basis)) == oracle::rank_gauss(P),
                      "sample " + std::to_string(k) + " leaves im(P)");
        }
        if (v.pass) v.detail = std::to_string(systems.size()) + " feasible systems cycled";
        return v;
    });

    criterion(5, "corpus: sampled dims <= d*k_min on the min-cell system, estimate <= bound; star bound=estimate=2",
              0, [] {
                  Outcome v;
                  std::size_t checked = 0;
                  for (const auto& [name, net] : load_corpus()) {
                      const auto* g = std::get_if<MatrixWeightedGraph>(&net);
                      WeightPattern p = g ? WeightPattern::from_topology(*g) : std::get<WeightPattern>(net);
                      if (p.edges().empty()) continue;
                      auto r = estimate_ssc_dimension(p);
                      ++checked;
                      for (const auto& s : r.sampled_dims)
                          if (s.system == r.min_cell_system)
                              v.require(s.dim <= r.d * r.k_min, name + ": sampled dim above d*k_min");
                      v.require(r.ssc_estimate <= r.bound, name + ": estimate above bound");
                      if (name == "star4.json")
                          v.require(r.bound == 2 && r.ssc_estimate == 2, "star4: bound/estimate not 2");
                  }
                  v.require(checked >= 5, "corpus too small");
                  if (v.pass) v.detail = std::to_string(checked) + " networks";
                  return v;
              });

    criterion(6, "oracles: Krylov dim = full Kalman rank (200 graphs, nd<=6); enumeration = brute force (<=6 followers)",
              0, [] {
                  Outcome v;
                  std::mt19937_64 rng(6);
                  for (int trial = 0; trial < 200; ++trial) {
                      const std::size_t d = 1 + trial % 3;
                      const std::size_t n = 1 + trial % (6 / d);
                      auto g = random_graph(rng, n, d, trial % 2 == 0, 0.6, 2);
                      Matrix L = build_laplacian(g);
                      Matrix M = input_of(g);
                      v.require(controllable_subspace(L, M).dim == oracle::kalman_rank(L, M),
                                "Krylov mismatch at trial " + std::to_string(trial));
                  }
                  std::size_t partitions = 0;
                  for (int trial = 0; trial < 40; ++trial) {
                      const std::size_t d = trial % 8 == 0 ? 2 : 1;
                      const std::size_t n = d == 2 ? 3 + trial % 2 : 3 + trial % 5;  // up to 7 nodes, 6 followers
                      auto p = random_pattern(rng, n, d, trial % 2 == 1, trial % 3 == 0 ? 2 : 1);
                      std::set<Partition> fast;
                      for (const auto& s : enumerate_feasible_eps(p, {.mode = EnumerationMode::cancellative}))
                          if (s.feasible) fast.insert(s.partition);
                      std::set<Partition> slow;
                      for (const auto& cells : oracle::leader_singleton_partitions(n, p.leaders())) {
                          ++partitions;
                          if (oracle::ep_feasible(p, cells)) slow.insert(Partition(cells, n));
                      }
                      v.require(fast == slow, "enumeration mismatch at trial " + std::to_string(trial));
                  }
                  if (v.pass) v.detail = std::to_string(partitions) + " partitions checked symbolically";
                  return v;
              });

    criterion(7, "duality: dual controllability = observability (100 digraphs); self-duality; reversal checks", 0, [] {
        Outcome v;
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 100; ++trial) {
            auto g = random_graph(rng, 2 + trial % 6, 1, true, 0.5, 2);
            Matrix L = build_laplacian(g);
            Matrix M = input_of(g);
            auto [Lt, Mt] = dual_pair(L, M);
            const auto dual_dim = controllable_subspace(Lt, Mt).dim;
            v.require(dual_dim == observability_rank(L, M), "mismatch at trial " + std::to_string(trial));
            v.require(dual_dim == oracle::kalman_rank(L.transpose(), M), "oracle mismatch at " + std::to_string(trial));
        }
        for (const auto& [name, net] : load_corpus()) {
            const auto* g = std::get_if<MatrixWeightedGraph>(&net);
            if (!g || g->directed()) continue;
            Matrix L = build_laplacian(*g);
            Matrix M = input_of(*g);
            auto dual = dual_pair(L, M);
            v.require(dual.first == L && dual.second == M, name + ": dual pair differs");
            v.require(reversal_check(*g).holds, name + ": reversal should hold");
        }
        v.require(!reversal_check(directed(3, {0}, {{0, 1, scalar(1)}, {1, 2, scalar(1)}})).holds,
                  "directed path reversal should fail");
        auto balanced = directed(3, {0}, {{0, 1, scalar(2)}, {1, 2, scalar(2)}, {2, 0, scalar(2)}, {0, 2, scalar(1)},
                                          {2, 1, scalar(1)}, {1, 0, scalar(1)}});
        v.require(reversal_check(balanced).holds, "balanced digraph reversal should hold");
        return v;
    });

    criterion(8, "shift/sign invariance: <L|M> = <L+aI|M> = <-L|M> on 50 random pairs", 0, [] {
        Outcome v;
        std::mt19937_64 rng(88);
        std::uniform_int_distribution<long> num(-12, 12);
        std::uniform_int_distribution<long> den(1, 7);
        for (int trial = 0; trial < 50; ++trial) {
            auto g = random_graph(rng, 2 + trial % 6, 1 + trial % 2, trial % 2 == 0, 0.5, 2);
            Matrix L = build_laplacian(g);
            Matrix M = input_of(g);
            Rational alpha(num(rng), den(rng));
            alpha.canonicalize();
            Matrix W = controllable_subspace(L, M).basis;
            Matrix Ws = controllable_subspace(L + alpha * Matrix::identity(L.rows()), M).basis;
            Matrix Wn = controllable_subspace(Rational(-1) * L, M).basis;
            const auto r = oracle::rank_gauss(W);
            v.require(oracle::rank_gauss(Ws) == r && oracle::rank_gauss(hstack(W, Ws)) == r,
                      "shift changed the span at trial " + std::to_string(trial));
            v.require(oracle::rank_gauss(Wn) == r && oracle::rank_gauss(hstack(W, Wn)) == r,
                      "sign changed the span at trial " + std::to_string(trial));
        }
        return v;
    });

    std::printf("%d of 8 criteria failed\n", failures);
    return failures;
}
