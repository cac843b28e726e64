#pragma once

// Independent oracles and seeded generators shared by the unit and
// acceptance suites. Everything here recomputes results from first
// principles, on purpose; none of it calls the algorithms under test.

#include "collabmap/graph.hpp"
#include "collabmap/records.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace testsupport {

// Seeded generator with fully pinned draw sequences: only raw engine draws,
// no distribution objects, so every platform sees the same stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    // uniform in [0, n)
    std::int64_t below(std::int64_t n) { return static_cast<std::int64_t>(raw() % static_cast<std::uint64_t>(n)); }

    // uniform in [lo, hi] inclusive
    int range(int lo, int hi) { return lo + static_cast<int>(below(hi - lo + 1)); }

    double unit() { return static_cast<double>(raw() >> 11) * (1.0 / 9007199254740992.0); }

    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

inline std::string synthetic_code(int i) {
    std::string code = "AA";
    code[0] = static_cast<char>('A' + i / 26);
    code[1] = static_cast<char>('A' + i % 26);
    return code;
}

inline std::vector<collabmap::PublicationRecord>
random_records(Rng& rng, int max_records, int max_countries) {
    static const collabmap::DocType kTypes[] = {
        collabmap::DocType::article, collabmap::DocType::review,
        collabmap::DocType::note, collabmap::DocType::proceedings,
        collabmap::DocType::other};
    int n_countries = rng.range(2, max_countries);
    int n_records = rng.range(1, max_records);
    std::vector<collabmap::PublicationRecord> records;
    records.reserve(static_cast<std::size_t>(n_records));
    for (int i = 0; i < n_records; ++i) {
        collabmap::PublicationRecord rec;
        rec.id = "R" + std::to_string(i);
        rec.year = rng.range(2000, 2012);
        rec.doc_type = kTypes[rng.below(5)];
        int k = rng.range(1, std::min(5, n_countries));
        while (static_cast<int>(rec.countries.size()) < k)
            rec.countries.insert(synthetic_code(rng.range(0, n_countries - 1)));
        rec.fields.insert("F" + std::to_string(rng.range(0, 3)));
        records.push_back(std::move(rec));
    }
    return records;
}

// Brute-force reconstruction of the co-authorship graph: enumerate the code
// universe, then count per code and per pair by scanning all records. A
// different loop structure from the incremental builder under test.
inline collabmap::CollabGraph
oracle_graph(const std::vector<collabmap::PublicationRecord>& records,
             const collabmap::GraphScope& scope) {
    collabmap::CollabGraph g;
    std::set<std::string> universe;
    for (const auto& rec : records)
        universe.insert(rec.countries.begin(), rec.countries.end());
    if (scope) {
        std::set<std::string> kept;
        for (const auto& code : universe)
            if (scope->count(code))
                kept.insert(code);
        universe = std::move(kept);
    }
    for (const auto& rec : records) {
        if (!g.year_range)
            g.year_range = collabmap::YearRange{rec.year, rec.year};
        g.year_range->first = std::min(g.year_range->first, rec.year);
        g.year_range->last = std::max(g.year_range->last, rec.year);
    }
    for (const auto& a : universe) {
        std::int64_t count = 0;
        for (const auto& rec : records)
            if (rec.countries.count(a)) {
                ++count;
                ++g.node_yearly[a][rec.year];
            }
        g.nodes[a] = count;
    }
    for (const auto& a : universe)
        for (const auto& b : universe) {
            if (a >= b)
                continue;
            std::int64_t joint = 0;
            for (const auto& rec : records)
                if (rec.countries.count(a) && rec.countries.count(b)) {
                    ++joint;
                    ++g.edge_yearly[{a, b}][rec.year];
                }
            if (joint > 0)
                g.edges[{a, b}] = joint;
        }
    return g;
}

// Graph built directly from an edge list; node output counts default to the
// node strength so size rules have something to work with.
inline collabmap::CollabGraph
graph_from_edges(const std::vector<std::tuple<std::string, std::string, std::int64_t>>& edges,
                 const std::vector<std::string>& extra_nodes = {}) {
    collabmap::CollabGraph g;
    for (const auto& [a, b, w] : edges) {
        g.edges[collabmap::country_pair(a, b)] += w;
        g.nodes[a] += w;
        g.nodes[b] += w;
    }
    for (const auto& code : extra_nodes)
        g.nodes.emplace(code, 0);
    return g;
}

inline collabmap::CollabGraph random_weighted_graph(Rng& rng, int n, double density,
                                                    std::int64_t max_weight) {
    std::vector<std::tuple<std::string, std::string, std::int64_t>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.chance(density))
                edges.emplace_back(synthetic_code(i), synthetic_code(j),
                                   1 + rng.below(max_weight));
    std::vector<std::string> nodes;
    for (int i = 0; i < n; ++i)
        nodes.push_back(synthetic_code(i));
    return graph_from_edges(edges, nodes);
}

// All-shortest-paths betweenness by explicit path enumeration (BFS levels,
// then DFS over predecessor links, listing every geodesic).
inline std::map<std::string, double>
oracle_betweenness(const collabmap::CollabGraph& graph) {
    std::vector<std::string> codes;
    std::map<std::string, int> index;
    for (const auto& [code, count] : graph.nodes) {
        index[code] = static_cast<int>(codes.size());
        codes.push_back(code);
    }
    int n = static_cast<int>(codes.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& [pair, w] : graph.edges)
        if (w > 0) {
            adj[index.at(pair.first)].push_back(index.at(pair.second));
            adj[index.at(pair.second)].push_back(index.at(pair.first));
        }

    std::map<std::string, double> score;
    for (const auto& code : codes)
        score[code] = 0.0;

    for (int s = 0; s < n; ++s) {
        std::vector<int> dist(n, -1);
        dist[s] = 0;
        std::vector<int> queue{s};
        for (std::size_t at = 0; at < queue.size(); ++at) {
            int u = queue[at];
            for (int v : adj[u])
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
        }
        for (int t = s + 1; t < n; ++t) {
            if (dist[t] < 2)
                continue; // unreachable or adjacent: no interior vertices
            std::vector<std::vector<int>> paths;
            std::vector<int> stack{t};
            // walk backwards from t along strictly decreasing BFS levels
            std::function<void()> extend = [&]() {
                int u = stack.back();
                if (u == s) {
                    paths.push_back(stack);
                    return;
                }
                for (int v : adj[u])
                    if (dist[v] == dist[u] - 1) {
                        stack.push_back(v);
                        extend();
                        stack.pop_back();
                    }
            };
            extend();
            if (paths.empty())
                continue;
            double share = 1.0 / static_cast<double>(paths.size());
            for (const auto& path : paths)
                for (std::size_t i = 1; i + 1 < path.size(); ++i)
                    score[codes[path[i]]] += share;
        }
    }
    return score;
}

// Exhaustive ring optimum: first node pinned, remaining orders enumerated.
inline std::int64_t ring_optimum(const collabmap::CollabGraph& graph) {
    std::vector<std::string> codes;
    for (const auto& [code, count] : graph.nodes)
        codes.push_back(code);
    int n = static_cast<int>(codes.size());
    std::map<std::string, int> index;
    for (int i = 0; i < n; ++i)
        index[codes[i]] = i;
    std::vector<int> rest;
    for (int i = 1; i < n; ++i)
        rest.push_back(i);

    auto objective = [&](const std::vector<int>& pos) {
        std::int64_t total = 0;
        for (const auto& [pair, w] : graph.edges) {
            std::int64_t d = std::abs(static_cast<std::int64_t>(pos[index.at(pair.first)]) -
                                      pos[index.at(pair.second)]);
            total += w * std::min(d, static_cast<std::int64_t>(n) - d);
        }
        return total;
    };

    std::int64_t best = -1;
    std::vector<int> pos(static_cast<std::size_t>(n));
    do {
        pos[0] = 0;
        for (int i = 1; i < n; ++i)
            pos[rest[static_cast<std::size_t>(i) - 1]] = i;
        std::int64_t value = objective(pos);
        if (best < 0 || value < best)
            best = value;
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

// Normalized mutual information between two partitions of the same keys.
inline double nmi(const std::map<std::string, int>& a, const std::map<std::string, int>& b) {
    double n = static_cast<double>(a.size());
    std::map<int, double> ca, cb;
    std::map<std::pair<int, int>, double> joint;
    for (const auto& [key, ida] : a) {
        int idb = b.at(key);
        ca[ida] += 1;
        cb[idb] += 1;
        joint[{ida, idb}] += 1;
    }
    auto entropy = [&](const std::map<int, double>& counts) {
        double h = 0;
        for (const auto& [id, c] : counts)
            h -= c / n * std::log(c / n);
        return h;
    };
    double ha = entropy(ca);
    double hb = entropy(cb);
    double mi = 0;
    for (const auto& [pair, c] : joint)
        mi += c / n * std::log(n * c / (ca[pair.first] * cb[pair.second]));
    if (ha + hb == 0)
        return 1.0; // both trivial partitions agree by definition
    return 2 * mi / (ha + hb);
}

// Four dense blocks with sparse cross links; ground truth is block index.
struct PlantedGraph {
    collabmap::CollabGraph graph;
    std::map<std::string, int> truth;
};

inline PlantedGraph planted_blocks(Rng& rng, int blocks, int per_block) {
    PlantedGraph out;
    int n = blocks * per_block;
    for (int i = 0; i < n; ++i) {
        out.truth[synthetic_code(i)] = i / per_block;
        out.graph.nodes[synthetic_code(i)] = 0;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool same = i / per_block == j / per_block;
            std::int64_t w = 0;
            if (same && rng.chance(0.7))
                w = 5 + rng.below(10);
            else if (!same && rng.chance(0.05))
                w = 1 + rng.below(2);
            if (w > 0) {
                out.graph.edges[{synthetic_code(i), synthetic_code(j)}] = w;
                out.graph.nodes[synthetic_code(i)] += w;
                out.graph.nodes[synthetic_code(j)] += w;
            }
        }
    return out;
}

} // namespace testsupport
