#pragma once

#include "collabmap/graph.hpp"
#include "collabmap/rational.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace collabmap {

// Association-strength view of a CollabGraph: a_ij = 2m * w_ij / (s_i * s_j).
// Invariant under uniform scaling of the raw weights.
struct NormalizedGraph {
    std::map<std::string, std::int64_t> nodes;  // output counts carried over
    std::map<CountryPair, double> edges;        // association strengths
};

NormalizedGraph normalize(const CollabGraph& graph);

struct Clustering {
    std::map<std::string, int> assignment; // country -> dense cluster id from 0
    Rational resolution{1};
    Rational quality{0};

    int cluster_count() const;
};

// Modularity with resolution gamma, exact:
//   Q = (1/2m) * sum over ordered same-cluster pairs of (w_ij - gamma*s_i*s_j/2m)
// with w_ii = 0 and the null term counted on the diagonal too.
// An edgeless graph scores 0 for any assignment.
Rational quality_score(const CollabGraph& graph,
                       const std::map<std::string, int>& assignment,
                       const Rational& resolution);

// Local moving from singletons with cluster aggregation, repeated until no
// move improves the score. Deterministic for fixed (graph, resolution, seed):
// the seed drives the per-pass visit shuffle, and gain ties resolve toward
// the cluster holding the lowest country code.
Clustering cluster(const CollabGraph& graph,
                   const Rational& resolution = Rational(1),
                   std::uint64_t seed = 0);

} // namespace collabmap
