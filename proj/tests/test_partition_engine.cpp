#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "ssc/errors.hpp"
#include "ssc/linalg.hpp"
#include "ssc/partition.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace ssc;
using namespace ssc::testing;

namespace {

// Relabels g by node v -> perm[v].
MatrixWeightedGraph relabel(const MatrixWeightedGraph& g, const std::vector<NodeId>& perm) {
    std::vector<Edge> edges;
    for (const auto& e : g.declared_edges()) edges.push_back(Edge{perm[e.from], perm[e.to], e.weight});
    std::vector<NodeId> leaders;
    for (NodeId l : g.leaders()) leaders.push_back(perm[l]);
    return MatrixWeightedGraph(g.n(), g.d(), g.symmetry(), leaders, edges);
}

Partition relabel(const Partition& p, const std::vector<NodeId>& perm) {
    std::vector<std::vector<NodeId>> cells;
    for (const auto& c : p.cells()) {
        std::vector<NodeId> m;
        for (NodeId v : c) m.push_back(perm[v]);
        cells.push_back(m);
    }
    return Partition(cells, p.n());
}

}  // namespace

TEST_SUITE_BEGIN("partition-engine");

TEST_CASE("Partition validation and canonical form") {
    Partition p({{4, 2}, {0, 3}, {1}}, 5);
    CHECK(p.cells() == std::vector<std::vector<NodeId>>{{0, 3}, {1}, {2, 4}});
    CHECK(p.cell_of(4) == 2);
    CHECK_THROWS_AS(Partition({{0, 1}, {1, 2}}, 3), InvalidPartition);
    CHECK_THROWS_AS(Partition({{0}, {1}}, 3), InvalidPartition);
    CHECK_THROWS_AS(Partition({{0}, {}, {1, 2}}, 3), InvalidPartition);
    CHECK_THROWS_AS(Partition({{0, 1, 2, 3}}, 3), InvalidPartition);

    CHECK(parse_partition("[[1],[2,3],[4]]", 4) == Partition({{0}, {1, 2}, {3}}, 4));
    CHECK(parse_partition("2,3|1|4", 4) == Partition({{0}, {1, 2}, {3}}, 4));
    CHECK(format_partition(parse_partition("4|2,3|1", 4)) == "[[1],[2,3],[4]]");
    CHECK_THROWS_AS(parse_partition("[[1,2],[2,3]]", 3), InvalidPartition);
    CHECK_THROWS_AS(parse_partition("1|x", 2), InvalidPartition);

    CHECK(Partition::singletons(3).refines(Partition::whole(3)));
    CHECK_FALSE(Partition::whole(3).refines(Partition::singletons(3)));
}

TEST_CASE("characteristic_matrix: two-cell example over five nodes") {
    Partition p({{0, 1}, {2, 3, 4}}, 5);
    for (std::size_t d = 1; d <= 3; ++d) {
        auto P = characteristic_matrix(p, d);
        REQUIRE(P.matrix().rows() == 5 * d);
        REQUIRE(P.matrix().cols() == 2 * d);
        for (NodeId i = 0; i < 5; ++i) {
            const std::size_t home = i < 2 ? 0 : 1;
            CHECK(P.block(i, home) == Matrix::identity(d));
            CHECK(P.block(i, 1 - home).is_zero());
        }
    }
    CHECK(characteristic_matrix(Partition::singletons(4), 2).matrix() == Matrix::identity(8));
    CHECK(characteristic_matrix(Partition::whole(3), 1).matrix() == Matrix{{1}, {1}, {1}});
}

TEST_CASE("verify_equitable on the diamond") {
    Partition pi({{0}, {1, 2}, {3}}, 4);
    CHECK(verify_equitable(diamond(2, 2, 5, 5), pi).equitable);
    CHECK(verify_equitable(diamond(1, 1, 1, 1), Partition::singletons(4)).equitable);

    auto report = verify_equitable(diamond(1, 2, 1, 1), pi);
    CHECK_FALSE(report.equitable);
    REQUIRE(report.violations.size() == 1);
    const auto& v = report.violations.front();
    CHECK(v.cell == 1);
    CHECK(v.r == 1);
    CHECK(v.s == 2);
    CHECK(v.target == 0);
    CHECK(v.sum_r == scalar(1));
    CHECK(v.sum_s == scalar(2));
}

TEST_CASE("verify_equitable: own-cell and direction options") {
    // Triangle plus pendant: 0-1, 0-2, 1-2 weight 3, 2-3. Cell {1,2} sends
    // 3 into itself from both members, but only node 2 reaches 3.
    auto g = undirected(4, {0}, {{0, 1, scalar(1)}, {0, 2, scalar(1)}, {1, 2, scalar(3)}, {2, 3, scalar(1)}});
    Partition pi({{0}, {1, 2}, {3}}, 4);
    CHECK_FALSE(verify_equitable(g, pi).equitable);

    // Sums inside the own cell differ but nothing else does.
    auto h = directed(3, {0}, {{0, 1, scalar(1)}, {0, 2, scalar(1)}, {1, 2, scalar(4)}, {2, 1, scalar(1)}});
    Partition rho({{0}, {1, 2}}, 3);
    CHECK_FALSE(verify_equitable(h, rho).equitable);
    CHECK(verify_equitable(h, rho, {.include_own_cell = false}).equitable);
    CHECK(oracle::is_equitable(h, rho.cells(), false));

    // 1 and 2 both point into 0 but only 1 hears from 0.
    auto in_star = directed(3, {0}, {{1, 0, scalar(1)}, {2, 0, scalar(1)}, {0, 1, scalar(1)}});
    Partition leaves({{0}, {1, 2}}, 3);
    CHECK(verify_equitable(in_star, leaves).equitable);
    CHECK_FALSE(verify_equitable(in_star, leaves, {.direction = NeighborDirection::in}).equitable);
}

TEST_CASE("coarsest_ep on small fixtures") {
    std::vector<NodeId> first{0};
    CHECK(coarsest_ep(diamond(1, 1, 1, 1), first) == Partition({{0}, {1, 2}, {3}}, 4));
    CHECK(coarsest_ep(path3(), first) == Partition::singletons(3));
    CHECK(coarsest_ep(star4(), first) == Partition({{0}, {1, 2, 3}}, 4));
    CHECK(coarsest_ep(diamond(1, 2, 1, 1), first) == Partition::singletons(4));
    // Without protection an edgeless graph is one cell.
    CHECK(coarsest_ep(undirected(3, {0}, {}), std::vector<NodeId>{}) == Partition::whole(3));
}

TEST_CASE("property: coarsest_ep is the coarsest leader-singleton EP (brute force)") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 6;  // up to 7 nodes: 877 partitions
        const bool is_directed = trial % 3 == 0;
        auto g = random_graph(rng, n, 1 + (trial % 4 == 1), is_directed, 0.5, 2, !is_directed);
        // Draw weights from {1, 2} often enough to get nontrivial cells.
        if (trial % 2 == 0) {
            std::vector<Edge> edges;
            std::bernoulli_distribution heavy(0.2);
            for (auto e : g.declared_edges()) {
                e.weight = Matrix::identity(g.d()) * Rational(heavy(rng) ? 2 : 1);
                edges.push_back(e);
            }
            g = MatrixWeightedGraph(n, g.d(), g.symmetry(), g.leaders(), edges);
        }
        auto coarse = coarsest_ep(g, g.leaders());
        REQUIRE(verify_equitable(g, coarse).equitable);
        REQUIRE(oracle::is_equitable(g, coarse.cells()));
        for (NodeId l : g.leaders()) REQUIRE(coarse.cell(coarse.cell_of(l)).size() == 1);

        for (const auto& cells : oracle::leader_singleton_partitions(n, g.leaders())) {
            if (!oracle::is_equitable(g, cells)) continue;
            REQUIRE(Partition(cells, n).refines(coarse));
        }

        // Merging any two follower cells breaks equitability.
        for (std::size_t a = 0; a < coarse.size(); ++a)
            for (std::size_t b = a + 1; b < coarse.size(); ++b) {
                auto cells = coarse.cells();
                bool protected_cell = false;
                for (NodeId l : g.leaders())
                    protected_cell = protected_cell || coarse.cell_of(l) == a || coarse.cell_of(l) == b;
                if (protected_cell) continue;
                cells[a].insert(cells[a].end(), cells[b].begin(), cells[b].end());
                cells.erase(cells.begin() + static_cast<long>(b));
                REQUIRE_FALSE(oracle::is_equitable(g, cells));
            }
    }
}

TEST_CASE("property: coarsest_ep commutes with relabeling") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t n = 2 + trial % 8;
        auto lifted = random_lift(rng, n, 1 + trial % 2);
        std::vector<NodeId> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto g2 = relabel(lifted.g, perm);
        REQUIRE(coarsest_ep(g2, g2.leaders()) == relabel(coarsest_ep(lifted.g, lifted.g.leaders()), perm));
    }
}

TEST_CASE("quotient and quotient_laplacian of the diamond") {
    Partition pi({{0}, {1, 2}, {3}}, 4);
    auto q = quotient(diamond(1, 1, 1, 1), pi);
    CHECK(q.k == 3);
    CHECK(q.weights.size() == 4);
    CHECK(q.weights.at({0, 1}) == scalar(2));
    CHECK(q.weights.at({1, 0}) == scalar(1));
    CHECK(q.weights.at({1, 2}) == scalar(1));
    CHECK(q.weights.at({2, 1}) == scalar(2));
    CHECK(quotient_laplacian(q).matrix() == Matrix{{2, -2, 0}, {-1, 2, -1}, {0, -2, 2}});

    CHECK_THROWS_AS(quotient(diamond(1, 2, 1, 1), pi), NotEquitable);

    auto one = quotient(path3(), Partition::whole(3));
    CHECK_THROWS_AS(quotient(path3(), Partition({{0}, {1, 2}}, 3)), NotEquitable);
    CHECK(quotient_laplacian(one).matrix() == Matrix{{0}});

    auto g = path3(2, 3);
    CHECK(quotient_laplacian(quotient(g, Partition::singletons(3))) == build_laplacian(g));
}

TEST_CASE("verify_lift on the diamond") {
    Partition pi({{0}, {1, 2}, {3}}, 4);
    auto P = characteristic_matrix(pi, 1);
    auto Lpi = quotient_laplacian(quotient(diamond(1, 1, 1, 1), pi));
    CHECK(verify_lift(build_laplacian(diamond(1, 1, 1, 1)), P, Lpi).ok());

    auto bad = verify_lift(build_laplacian(diamond(1, 2, 1, 1)), P, Lpi);
    CHECK_FALSE(bad.commutes);
    CHECK_FALSE(bad.ok());

    auto L = build_laplacian(path3());
    CHECK(verify_lift(L, characteristic_matrix(Partition::singletons(3), 1), L).ok());
    CHECK_THROWS_AS(verify_lift(L, P, Lpi), DimensionMismatch);
}

TEST_CASE("property: equitable partitions lift (random lifted graphs)") {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const std::size_t d = 1 + trial % 3;
        auto [g, p] = random_lift(rng, n, d);
        REQUIRE(verify_equitable(g, p).equitable);
        auto q = quotient(g, p);
        // Every node sees the quotient weight into every other cell.
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j) {
                if (i == j) continue;
                auto it = q.weights.find({i, j});
                for (NodeId v : p.cell(i)) {
                    Matrix cd = cell_degree(g, v, p.cell(j));
                    REQUIRE(cd == (it == q.weights.end() ? Matrix(d, d) : it->second));
                }
            }
        auto P = characteristic_matrix(p, d);
        REQUIRE(rank_exact(P) == p.size() * d);
        REQUIRE(verify_lift(build_laplacian(g), P, quotient_laplacian(q)).ok());
    }
}

TEST_SUITE_END();
