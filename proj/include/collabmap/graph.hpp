#pragma once

#include "collabmap/records.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace collabmap {

// Unordered pair of distinct country codes; first < second always.
using CountryPair = std::pair<std::string, std::string>;

CountryPair country_pair(std::string a, std::string b);

// Weighted country co-authorship graph under whole counting: each paper adds
// one unit to every member country and one unit to every unordered pair among
// its countries.
struct CollabGraph {
    std::map<std::string, std::int64_t> nodes;                       // papers per country
    std::map<std::string, std::map<int, std::int64_t>> node_yearly;  // papers per country per year
    std::map<CountryPair, std::int64_t> edges;                       // joint papers per pair
    std::map<CountryPair, std::map<int, std::int64_t>> edge_yearly;  // joint papers per pair per year
    std::optional<YearRange> year_range;                             // observed min..max years

    std::int64_t output(const std::string& code) const;
    std::int64_t output_in(const std::string& code, int year) const;
    std::int64_t weight(const std::string& a, const std::string& b) const;
    std::int64_t weight_in(const std::string& a, const std::string& b, int year) const;

    std::int64_t total_weight() const;                   // m, the sum of edge weights
    std::map<std::string, std::int64_t> strengths() const; // per-node sum of incident weights

    bool operator==(const CollabGraph&) const = default;
};

// nullopt means every country; otherwise nodes/pairs outside the set are not
// materialized (a record's full country set still defines its pairs).
using GraphScope = std::optional<std::set<std::string>>;

CollabGraph build_graph(std::span<const PublicationRecord> records,
                        const GraphScope& scope = std::nullopt);

enum class UnknownCountryPolicy { reject, keep };

struct GraphBuildReport {
    std::int64_t records_used = 0;
    std::vector<std::pair<std::string, std::string>> rejected; // (record id, unknown code)
};

// Registry-checked build: records naming a country absent from the table are
// rejected (and reported) or kept as-is, per policy.
CollabGraph build_graph(std::span<const PublicationRecord> records,
                        const GraphScope& scope,
                        const CountryTable& table,
                        UnknownCountryPolicy policy,
                        GraphBuildReport* report = nullptr);

// Number of records whose country set contains every code in `countries`,
// optionally restricted to one year. Needs at least two codes.
std::int64_t joint_count(std::span<const PublicationRecord> records,
                         const std::set<std::string>& countries,
                         std::optional<int> year = std::nullopt);

struct DomesticSplit {
    std::int64_t total = 0;         // records with at least one in-region country
    std::int64_t domestic = 0;      // records whose whole country set is in-region
    std::int64_t international = 0; // total - domestic
};

DomesticSplit domestic_split(std::span<const PublicationRecord> records,
                             const std::set<std::string>& region);

enum class ThresholdMode { total_over_window, per_year_minimum };

std::string_view to_string(ThresholdMode mode);
std::optional<ThresholdMode> parse_threshold_mode(std::string_view token);

struct ThresholdPolicy {
    ThresholdMode mode = ThresholdMode::total_over_window;
    int window_years = 5;
    std::int64_t min_total = 25;
    std::int64_t min_per_year = 5;
};

// Keeps the edges that clear the policy over [end_year - window + 1, end_year]
// and drops nodes left without edges. Surviving entries keep their counts.
CollabGraph apply_threshold(const CollabGraph& graph, const ThresholdPolicy& policy, int end_year);

} // namespace collabmap
