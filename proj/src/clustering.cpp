#include "collabmap/clustering.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace collabmap {

namespace {

// Level graph for the move/aggregate loop. Nodes are indices; after each
// aggregation min_member keeps the smallest original index inside a
// super-node, and renumbering by it keeps min_member strictly increasing.
struct LevelGraph {
    int n = 0;
    std::vector<std::vector<std::pair<int, std::int64_t>>> adj; // no self entries
    std::vector<std::int64_t> self_loop;
    std::vector<std::int64_t> strength; // 2*self_loop + incident weight
    std::vector<int> min_member;
};

void shuffle_indices(std::vector<int>& order, std::mt19937_64& engine) {
    // Fisher-Yates with plain bounded draws; std::shuffle's draw sequence is
    // implementation-defined, this one is not.
    for (std::size_t i = order.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(engine() % i);
        std::swap(order[i - 1], order[j]);
    }
}

} // namespace

NormalizedGraph normalize(const CollabGraph& graph) {
    if (graph.nodes.empty())
        throw std::invalid_argument("normalize: empty graph");
    std::int64_t m = graph.total_weight();
    if (m == 0)
        throw std::invalid_argument("normalize: graph has no edges");

    auto s = graph.strengths();
    NormalizedGraph out;
    out.nodes = graph.nodes;
    for (const auto& [pair, w] : graph.edges) {
        double denom = static_cast<double>(s.at(pair.first)) *
                       static_cast<double>(s.at(pair.second));
        out.edges[pair] = 2.0 * static_cast<double>(m) *
                          static_cast<double>(w) / denom;
    }
    return out;
}

int Clustering::cluster_count() const {
    int top = -1;
    for (const auto& [code, id] : assignment)
        top = std::max(top, id);
    return top + 1;
}

Rational quality_score(const CollabGraph& graph,
                       const std::map<std::string, int>& assignment,
                       const Rational& resolution) {
    for (const auto& [code, count] : graph.nodes)
        if (!assignment.count(code))
            throw std::invalid_argument("quality_score: node not covered: " + code);

    std::int64_t m = graph.total_weight();
    if (m == 0)
        return Rational(0);

    std::int64_t in2 = 0; // ordered same-cluster pair weight
    for (const auto& [pair, w] : graph.edges)
        if (assignment.at(pair.first) == assignment.at(pair.second))
            in2 += 2 * w;

    std::map<int, std::int64_t> cluster_strength;
    for (const auto& [code, s] : graph.strengths())
        cluster_strength[assignment.at(code)] += s;
    std::int64_t ss = 0;
    for (const auto& [id, s] : cluster_strength)
        ss += s * s;

    return Rational(in2, 2 * m) - resolution * Rational(ss, 4 * m * m);
}

Clustering cluster(const CollabGraph& graph,
                   const Rational& resolution,
                   std::uint64_t seed) {
    Clustering result;
    result.resolution = resolution;
    if (graph.nodes.empty())
        return result;

    std::vector<std::string> codes;
    codes.reserve(graph.nodes.size());
    for (const auto& [code, count] : graph.nodes)
        codes.push_back(code);
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(codes.size()); ++i)
        index[codes[i]] = i;

    LevelGraph level;
    level.n = static_cast<int>(codes.size());
    level.adj.resize(level.n);
    level.self_loop.assign(level.n, 0);
    level.strength.assign(level.n, 0);
    level.min_member.resize(level.n);
    for (int i = 0; i < level.n; ++i)
        level.min_member[i] = i;
    for (const auto& [pair, w] : graph.edges) {
        int a = index.at(pair.first);
        int b = index.at(pair.second);
        level.adj[a].emplace_back(b, w);
        level.adj[b].emplace_back(a, w);
        level.strength[a] += w;
        level.strength[b] += w;
    }

    std::int64_t m = graph.total_weight();
    // Gains are compared as exact integers scaled by 2*m^2*res_den, so moves
    // and ties are decided without rounding. Fits in 64 bits for the weight
    // ranges this pipeline produces.
    std::int64_t res_num = resolution.numerator();
    std::int64_t res_den = resolution.denominator();

    std::mt19937_64 engine(seed);
    std::vector<int> node_of_orig(level.n);
    for (int i = 0; i < level.n; ++i)
        node_of_orig[i] = i;

    while (true) {
        int n = level.n;
        std::vector<int> comm(n);
        std::vector<std::int64_t> comm_strength(n);
        std::vector<std::set<int>> members(n);
        for (int i = 0; i < n; ++i) {
            comm[i] = i;
            comm_strength[i] = level.strength[i];
            members[i].insert(i);
        }
        // min_member is increasing in node index, so a community's lowest
        // original member sits at the front of its member set.
        auto comm_min = [&](int c) { return level.min_member[*members[c].begin()]; };

        std::vector<int> order(n);
        for (int i = 0; i < n; ++i)
            order[i] = i;

        bool moved_any = false;
        bool moved_pass = true;
        while (moved_pass) {
            moved_pass = false;
            shuffle_indices(order, engine);
            for (int u : order) {
                int from = comm[u];
                std::map<int, std::int64_t> affinity;
                for (const auto& [v, w] : level.adj[u])
                    affinity[comm[v]] += w;
                std::int64_t k_from = 0;
                if (auto it = affinity.find(from); it != affinity.end())
                    k_from = it->second;
                std::int64_t s_u = level.strength[u];
                std::int64_t s_from = comm_strength[from] - s_u;

                std::int64_t best_gain = 0;
                int best = from;
                int best_min = std::numeric_limits<int>::max();
                for (const auto& [cand, k_cand] : affinity) {
                    if (cand == from)
                        continue;
                    std::int64_t gain =
                        2 * m * res_den * (k_cand - k_from) -
                        res_num * s_u * (comm_strength[cand] - s_from);
                    if (gain > best_gain ||
                        (gain == best_gain && best != from && comm_min(cand) < best_min)) {
                        best_gain = gain;
                        best = cand;
                        best_min = comm_min(cand);
                    }
                }
                if (best != from) {
                    members[from].erase(u);
                    comm_strength[from] -= s_u;
                    members[best].insert(u);
                    comm_strength[best] += s_u;
                    comm[u] = best;
                    moved_pass = true;
                    moved_any = true;
                }
            }
        }
        if (!moved_any)
            break;

        // Renumber surviving communities by their lowest original member.
        std::vector<std::pair<int, int>> survivors; // (min original, old id)
        for (int c = 0; c < n; ++c)
            if (!members[c].empty())
                survivors.emplace_back(comm_min(c), c);
        std::sort(survivors.begin(), survivors.end());
        std::vector<int> renumber(n, -1);
        for (int i = 0; i < static_cast<int>(survivors.size()); ++i)
            renumber[survivors[i].second] = i;

        for (int& node : node_of_orig)
            node = renumber[comm[node]];

        int next_n = static_cast<int>(survivors.size());
        if (next_n == n)
            break;

        LevelGraph next;
        next.n = next_n;
        next.adj.resize(next_n);
        next.self_loop.assign(next_n, 0);
        next.strength.assign(next_n, 0);
        next.min_member.resize(next_n);
        for (int i = 0; i < next_n; ++i)
            next.min_member[i] = survivors[i].first;
        for (int c = 0; c < n; ++c)
            if (renumber[c] >= 0)
                for (int u : members[c])
                    next.self_loop[renumber[c]] += level.self_loop[u];
        std::map<std::pair<int, int>, std::int64_t> agg;
        for (int u = 0; u < n; ++u) {
            int cu = renumber[comm[u]];
            for (const auto& [v, w] : level.adj[u]) {
                if (u >= v)
                    continue; // each undirected edge once
                int cv = renumber[comm[v]];
                if (cu == cv)
                    next.self_loop[cu] += w;
                else
                    agg[{std::min(cu, cv), std::max(cu, cv)}] += w;
            }
        }
        for (const auto& [pair, w] : agg) {
            next.adj[pair.first].emplace_back(pair.second, w);
            next.adj[pair.second].emplace_back(pair.first, w);
            next.strength[pair.first] += w;
            next.strength[pair.second] += w;
        }
        for (int i = 0; i < next_n; ++i)
            next.strength[i] += 2 * next.self_loop[i];
        level = std::move(next);
    }

    // Super-node indices are ordered by lowest original member already, so
    // they serve directly as dense cluster ids.
    for (int o = 0; o < static_cast<int>(codes.size()); ++o)
        result.assignment[codes[o]] = node_of_orig[o];
    result.quality = quality_score(graph, result.assignment, resolution);
    return result;
}

} // namespace collabmap
