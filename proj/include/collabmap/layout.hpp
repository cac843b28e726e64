#pragma once

#include "collabmap/clustering.hpp"
#include "collabmap/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace collabmap {

// Ring arrangement of the graph's nodes. Rotations and reflections of an
// order are equivalent; the stored form is canonical (lexicographically
// smallest code first, smaller second neighbour before larger).
struct CircularOrder {
    std::vector<std::string> order;
};

// Sum over edges of weight times ring hop distance (the shorter way around).
std::int64_t seriation_objective(const CollabGraph& graph,
                                 const CircularOrder& order);

// Fiedler-vector order refined by 2-opt segment reversals that strictly
// lower the objective; a few seeded perturbations of the start descend too
// and the best result wins, so the outcome is never worse than the plain
// spectral descent. With a clustering, nodes are grouped into contiguous
// cluster blocks and every refinement step preserves block contiguity.
CircularOrder circular_order(const CollabGraph& graph,
                             const std::optional<Clustering>& clustering = std::nullopt,
                             std::uint64_t seed = 0);

struct MapLayoutOptions {
    std::uint64_t seed = 0;
    double tolerance = 1e-6;
    int max_iterations = 1000;
};

struct MapCoordinates {
    std::map<std::string, std::pair<double, double>> position;
    double stress = 0.0;               // sum of a_ij * d_ij^2 at final coords
    std::vector<double> trace;         // normalized objective per accepted iterate
    int iterations = 0;

    double mean_distance() const;      // over all node pairs
};

// Distance layout for association strengths: minimizes sum a_ij * d_ij^2
// subject to mean pairwise distance 1, by majorization with an optimal
// rescale each step. Final coordinates are canonical: centroid at the
// origin, principal axis along x, first code's signs non-negative.
MapCoordinates map_layout(const NormalizedGraph& graph,
                          const MapLayoutOptions& options = MapLayoutOptions());

} // namespace collabmap
