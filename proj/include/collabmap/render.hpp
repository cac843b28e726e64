#pragma once

#include "collabmap/clustering.hpp"
#include "collabmap/graph.hpp"
#include "collabmap/layout.hpp"
#include "collabmap/records.hpp"

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace collabmap {

// Visual encoding knobs shared by the SVG emitters. Node area is
// proportional to output count (with a 2px radius floor so zero-output
// nodes stay visible); only the max_edges heaviest edges are drawn, ties
// broken by code pair; stroke width grows monotonically with weight.
struct RenderSpec {
    int max_edges = 1000;
    double label_scale = 1.0;
    std::vector<std::string> palette = {
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    };
};

std::string emit_wheel(const CircularOrder& order, const CollabGraph& graph,
                       const RenderSpec& spec = RenderSpec());

std::string emit_map(const MapCoordinates& coords, const Clustering& clustering,
                     const CollabGraph& graph, const RenderSpec& spec = RenderSpec());

enum class GraphFormat { graphml, pajek };

GraphFormat parse_graph_format(std::string_view token);
std::string to_string(GraphFormat format);

// Exports carry node codes, output counts, edge weights and (optionally)
// cluster ids; the per-year breakdown is a pipeline intermediate and is not
// serialized. Importing therefore reconstructs totals exactly and leaves
// the yearly maps empty.
std::string export_graph(const CollabGraph& graph,
                         const std::optional<Clustering>& clustering,
                         GraphFormat format);

struct ImportedGraph {
    CollabGraph graph;
    std::optional<std::map<std::string, int>> clusters;
};

ImportedGraph import_graph(const std::string& text, GraphFormat format);

// Rectangular report table; a missing cell renders blank in CSV and null
// in JSON, never 0.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<std::string>>> rows;
};

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

// Country-by-partner joint paper counts over the graph's whole window;
// a pair that never collaborated renders blank.
Table partner_matrix(const CollabGraph& graph,
                     const std::vector<std::string>& countries,
                     const std::vector<std::string>& partners);

// Year-by-year counts for one focal country: total papers, joint papers
// with each partner, each partner's share of the focal total as a rounded
// integer percent (blank when the total is zero), plus joint counts for
// any extra country groups (e.g. a three-way column).
struct YearlySpec {
    std::string focal;
    std::vector<std::string> partners;
    std::vector<std::set<std::string>> joint_groups;
    YearRange years;
};

Table yearly_series(std::span<const PublicationRecord> records, const YearlySpec& spec);

} // namespace collabmap
