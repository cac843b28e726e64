#include "collabmap/layout.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

using namespace collabmap;

namespace {

CircularOrder ring(std::vector<std::string> codes) {
    CircularOrder o;
    o.order = std::move(codes);
    return o;
}

bool contiguous_on_ring(const CircularOrder& order, const Clustering& clustering) {
    const auto& codes = order.order;
    const std::size_t n = codes.size();
    std::set<int> seen;
    for (std::size_t i = 0; i < n; ++i) {
        int here = clustering.assignment.at(codes[i]);
        int prev = clustering.assignment.at(codes[(i + n - 1) % n]);
        if (here != prev && !seen.insert(here).second)
            return false; // cluster re-entered after leaving
    }
    return true;
}

} // namespace

TEST_CASE("objective counts weighted hop distances the short way round") {
    auto graph = testsupport::graph_from_edges({{"AA", "AB", 2}, {"AA", "AC", 1}},
                                               {"AD"});
    // ring AA,AB,AC,AD: AA-AB adjacent (hop 1), AA-AC opposite (hop 2)
    CHECK(seriation_objective(graph, ring({"AA", "AB", "AC", "AD"})) == 4);
    // ring AA,AB,AD,AC: both edges at hop 1 now
    CHECK(seriation_objective(graph, ring({"AA", "AB", "AD", "AC"})) == 3);

    SUBCASE("reversal and rotation leave the objective alone") {
        CHECK(seriation_objective(graph, ring({"AC", "AB", "AA", "AD"}))
              == seriation_objective(graph, ring({"AB", "AA", "AD", "AC"})));
        CHECK(seriation_objective(graph, ring({"AD", "AC", "AB", "AA"})) == 4);
    }

    SUBCASE("the order must be a permutation of the nodes") {
        CHECK_THROWS_AS(seriation_objective(graph, ring({"AA", "AB", "AC"})),
                        std::invalid_argument);
        CHECK_THROWS_AS(seriation_objective(graph, ring({"AA", "AB", "AC", "AC"})),
                        std::invalid_argument);
    }
}

TEST_CASE("tiny rings are all equivalent") {
    auto graph = testsupport::graph_from_edges({{"AA", "AB", 4}, {"AB", "AC", 2},
                                                {"AA", "AC", 7}});
    // on three nodes every arrangement is the same cycle
    auto value = seriation_objective(graph, ring({"AA", "AB", "AC"}));
    CHECK(value == 13);
    CHECK(seriation_objective(graph, ring({"AB", "AA", "AC"})) == value);
    auto best = circular_order(graph);
    CHECK(seriation_objective(graph, best) == value);
    CHECK(best.order.front() == "AA"); // canonical rotation
}

TEST_CASE("zero-weight edges cost nothing") {
    CollabGraph graph;
    graph.nodes = {{"AA", 1}, {"AB", 1}, {"AC", 1}, {"AD", 1}};
    CHECK(seriation_objective(graph, ring({"AA", "AB", "AC", "AD"})) == 0);
}

TEST_CASE("refinement recovers the planted ring") {
    // two tight cliques with one cross link want to sit as consecutive arcs
    auto graph = testsupport::graph_from_edges({{"AA", "AB", 6},
                                                {"AA", "AC", 6},
                                                {"AB", "AC", 6},
                                                {"BA", "BB", 6},
                                                {"BA", "BC", 6},
                                                {"BB", "BC", 6},
                                                {"AC", "BA", 1}});
    auto order = circular_order(graph);
    auto optimum = testsupport::ring_optimum(graph);
    CHECK(seriation_objective(graph, order) == optimum);
    CHECK(order.order.front() == "AA");
    // canonical direction: successor of the front is its smaller neighbour
    CHECK(order.order[1] < order.order.back());
}

TEST_CASE("small instances reach the exhaustive optimum most of the time") {
    testsupport::Rng rng(161);
    int hits = 0;
    const int trials = 50;
    for (int t = 0; t < trials; ++t) {
        int n = 4 + static_cast<int>(rng.below(5)); // 4..8
        auto graph = testsupport::random_weighted_graph(rng, n, 0.6, 9);
        auto order = circular_order(graph, std::nullopt, rng.raw());
        auto got = seriation_objective(graph, order);
        auto best = testsupport::ring_optimum(graph);
        REQUIRE(got >= best); // can never beat exhaustive search
        if (got == best)
            ++hits;
    }
    CHECK(hits >= trials * 9 / 10);
}

TEST_CASE("every seed yields a valid canonical permutation") {
    testsupport::Rng rng(271);
    auto graph = testsupport::random_weighted_graph(rng, 12, 0.4, 9);
    std::vector<std::string> nodes;
    for (const auto& [code, count] : graph.nodes)
        nodes.push_back(code);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto order = circular_order(graph, std::nullopt, seed);
        auto sorted = order.order;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == nodes);
        CHECK(order.order.front() == nodes.front());
        CHECK(order.order[1] < order.order.back());
    }
}

TEST_CASE("cluster blocks stay contiguous on the ring") {
    testsupport::Rng rng(888);
    for (int t = 0; t < 8; ++t) {
        auto planted = testsupport::planted_blocks(rng, 3, 5);
        auto clustering = cluster(planted.graph);
        auto order = circular_order(planted.graph, clustering, rng.raw());
        CHECK(order.order.size() == planted.graph.nodes.size());
        CHECK(contiguous_on_ring(order, clustering));
    }
}

TEST_CASE("orders are reproducible for a fixed seed") {
    testsupport::Rng rng(31);
    auto graph = testsupport::random_weighted_graph(rng, 10, 0.5, 9);
    auto a = circular_order(graph, std::nullopt, 99);
    auto b = circular_order(graph, std::nullopt, 99);
    CHECK(a.order == b.order);
}

TEST_CASE("two points land half a unit either side of the origin") {
    auto graph = testsupport::graph_from_edges({{"AA", "AB", 3}});
    auto normalized = normalize(graph);
    auto coords = map_layout(normalized);
    // mean pairwise distance is pinned to one
    CHECK(coords.mean_distance() == doctest::Approx(1.0));
    CHECK(coords.position.at("AA").first == doctest::Approx(0.5));
    CHECK(coords.position.at("AB").first == doctest::Approx(-0.5));
    CHECK(coords.position.at("AA").second == doctest::Approx(0.0));
    // the sole association strength is 2m*w/(s_a*s_b) = 2*3*3/9 = 2
    CHECK(coords.stress == doctest::Approx(2.0));
}

TEST_CASE("layout needs at least two nodes") {
    NormalizedGraph tiny;
    tiny.nodes["AA"] = 1;
    CHECK_THROWS_AS(map_layout(tiny), std::invalid_argument);
}

TEST_CASE("the normalized objective never increases along the trace") {
    testsupport::Rng rng(606);
    for (int t = 0; t < 8; ++t) {
        auto graph = testsupport::random_weighted_graph(rng, 6 + static_cast<int>(rng.below(9)),
                                                        0.5, 9);
        if (graph.total_weight() == 0)
            continue;
        MapLayoutOptions options;
        options.seed = rng.raw();
        auto coords = map_layout(normalize(graph), options);
        REQUIRE(!coords.trace.empty());
        for (std::size_t i = 1; i < coords.trace.size(); ++i)
            CHECK(coords.trace[i] <= coords.trace[i - 1] + 1e-12);
        CHECK(coords.iterations == static_cast<int>(coords.trace.size()) - 1);
    }
}

TEST_CASE("final coordinates satisfy the canonical frame") {
    testsupport::Rng rng(515);
    auto graph = testsupport::random_weighted_graph(rng, 9, 0.6, 9);
    auto coords = map_layout(normalize(graph));

    double cx = 0, cy = 0;
    for (const auto& [code, p] : coords.position) {
        cx += p.first;
        cy += p.second;
    }
    CHECK(cx == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(cy == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(coords.mean_distance() == doctest::Approx(1.0));

    // principal axis along x: the cross moment vanishes
    double cxy = 0;
    for (const auto& [code, p] : coords.position)
        cxy += p.first * p.second;
    CHECK(cxy == doctest::Approx(0.0).epsilon(1e-6));

    const auto& first = *coords.position.begin();
    CHECK(first.second.first >= -1e-12);
    CHECK(first.second.second >= -1e-12);
}

TEST_CASE("layouts are byte-identical across runs") {
    testsupport::Rng rng(717);
    auto graph = testsupport::random_weighted_graph(rng, 11, 0.5, 9);
    MapLayoutOptions options;
    options.seed = 5;
    auto a = map_layout(normalize(graph), options);
    auto b = map_layout(normalize(graph), options);
    REQUIRE(a.position.size() == b.position.size());
    for (const auto& [code, p] : a.position) {
        CHECK(p.first == b.position.at(code).first);   // exact, not approximate
        CHECK(p.second == b.position.at(code).second);
    }
    CHECK(a.stress == b.stress);
    CHECK(a.trace == b.trace);
}

TEST_CASE("strongly tied pairs sit closer than weakly tied ones") {
    // two tight pairs, faint cross ties; each pair should end up adjacent
    auto graph = testsupport::graph_from_edges({{"AA", "AB", 50},
                                                {"BA", "BB", 50},
                                                {"AA", "BA", 1},
                                                {"AB", "BB", 1}});
    auto coords = map_layout(normalize(graph));
    auto dist = [&](const std::string& a, const std::string& b) {
        auto pa = coords.position.at(a);
        auto pb = coords.position.at(b);
        return std::hypot(pa.first - pb.first, pa.second - pb.second);
    };
    CHECK(dist("AA", "AB") < dist("AA", "BA"));
    CHECK(dist("BA", "BB") < dist("AB", "BB"));
}
