#include "collabmap/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace collabmap {

CountryPair country_pair(std::string a, std::string b) {
    if (a == b)
        throw std::invalid_argument("country_pair: self-pair " + a);
    if (b < a)
        std::swap(a, b);
    return {std::move(a), std::move(b)};
}

std::int64_t CollabGraph::output(const std::string& code) const {
    const auto it = nodes.find(code);
    return it == nodes.end() ? 0 : it->second;
}

std::int64_t CollabGraph::output_in(const std::string& code, int year) const {
    const auto it = node_yearly.find(code);
    if (it == node_yearly.end())
        return 0;
    const auto yit = it->second.find(year);
    return yit == it->second.end() ? 0 : yit->second;
}

std::int64_t CollabGraph::weight(const std::string& a, const std::string& b) const {
    const auto it = edges.find(country_pair(a, b));
    return it == edges.end() ? 0 : it->second;
}

std::int64_t CollabGraph::weight_in(const std::string& a, const std::string& b, int year) const {
    const auto it = edge_yearly.find(country_pair(a, b));
    if (it == edge_yearly.end())
        return 0;
    const auto yit = it->second.find(year);
    return yit == it->second.end() ? 0 : yit->second;
}

std::int64_t CollabGraph::total_weight() const {
    std::int64_t m = 0;
    for (const auto& [pair, w] : edges)
        m += w;
    return m;
}

std::map<std::string, std::int64_t> CollabGraph::strengths() const {
    std::map<std::string, std::int64_t> s;
    for (const auto& [code, count] : nodes)
        s.emplace(code, 0);
    for (const auto& [pair, w] : edges) {
        s[pair.first] += w;
        s[pair.second] += w;
    }
    return s;
}

namespace {

bool in_scope(const GraphScope& scope, const std::string& code) {
    return !scope || scope->count(code) != 0;
}

void add_record(CollabGraph& graph, const PublicationRecord& record, const GraphScope& scope) {
    std::vector<const std::string*> members;
    members.reserve(record.countries.size());
    for (const auto& code : record.countries)
        members.push_back(&code);

    for (const auto* code : members) {
        if (!in_scope(scope, *code))
            continue;
        graph.nodes[*code] += 1;
        graph.node_yearly[*code][record.year] += 1;
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (!in_scope(scope, *members[i]) || !in_scope(scope, *members[j]))
                continue;
            // set iteration is sorted, so (i, j) is already the ordered pair
            const CountryPair pair{*members[i], *members[j]};
            graph.edges[pair] += 1;
            graph.edge_yearly[pair][record.year] += 1;
        }
    }

    if (!graph.year_range) {
        graph.year_range = YearRange{record.year, record.year};
    } else {
        graph.year_range->first = std::min(graph.year_range->first, record.year);
        graph.year_range->last = std::max(graph.year_range->last, record.year);
    }
}

} // namespace

CollabGraph build_graph(std::span<const PublicationRecord> records, const GraphScope& scope) {
    CollabGraph graph;
    for (const auto& record : records)
        add_record(graph, record, scope);
    return graph;
}

CollabGraph build_graph(std::span<const PublicationRecord> records,
                        const GraphScope& scope,
                        const CountryTable& table,
                        UnknownCountryPolicy policy,
                        GraphBuildReport* report) {
    CollabGraph graph;
    for (const auto& record : records) {
        const std::string* unknown = nullptr;
        for (const auto& code : record.countries) {
            if (!table.contains(code)) {
                unknown = &code;
                break;
            }
        }
        if (unknown && policy == UnknownCountryPolicy::reject) {
            if (report)
                report->rejected.emplace_back(record.id, *unknown);
            continue;
        }
        add_record(graph, record, scope);
        if (report)
            ++report->records_used;
    }
    return graph;
}

std::int64_t joint_count(std::span<const PublicationRecord> records,
                         const std::set<std::string>& countries,
                         std::optional<int> year) {
    if (countries.size() < 2)
        throw std::invalid_argument("joint_count: need at least two countries");

    std::int64_t count = 0;
    for (const auto& record : records) {
        if (year && record.year != *year)
            continue;
        if (std::includes(record.countries.begin(), record.countries.end(),
                          countries.begin(), countries.end()))
            ++count;
    }
    return count;
}

DomesticSplit domestic_split(std::span<const PublicationRecord> records,
                             const std::set<std::string>& region) {
    if (region.empty())
        throw std::invalid_argument("domestic_split: empty region");

    DomesticSplit split;
    for (const auto& record : records) {
        bool any_inside = false;
        bool all_inside = true;
        for (const auto& code : record.countries) {
            if (region.count(code) != 0)
                any_inside = true;
            else
                all_inside = false;
        }
        if (!any_inside)
            continue;
        ++split.total;
        if (all_inside)
            ++split.domestic;
    }
    split.international = split.total - split.domestic;
    return split;
}

std::string_view to_string(ThresholdMode mode) {
    switch (mode) {
    case ThresholdMode::total_over_window: return "total-over-window";
    case ThresholdMode::per_year_minimum: return "per-year-minimum";
    }
    return "total-over-window";
}

std::optional<ThresholdMode> parse_threshold_mode(std::string_view token) {
    if (token == "total-over-window") return ThresholdMode::total_over_window;
    if (token == "per-year-minimum") return ThresholdMode::per_year_minimum;
    return std::nullopt;
}

CollabGraph apply_threshold(const CollabGraph& graph, const ThresholdPolicy& policy, int end_year) {
    if (policy.window_years < 1)
        throw std::invalid_argument("apply_threshold: window must span at least one year");
    if (policy.min_total < 0 || policy.min_per_year < 0)
        throw std::invalid_argument("apply_threshold: negative threshold");
    if (!graph.year_range)
        throw std::invalid_argument("apply_threshold: graph covers no years");

    const YearRange window{end_year - policy.window_years + 1, end_year};
    if (window.first < graph.year_range->first || window.last > graph.year_range->last)
        throw std::invalid_argument("apply_threshold: window extends outside the graph's year range");

    CollabGraph out;
    out.year_range = graph.year_range;

    for (const auto& [pair, weight] : graph.edges) {
        std::int64_t total = 0;
        std::int64_t min_year = -1;
        const auto yit = graph.edge_yearly.find(pair);
        for (int year = window.first; year <= window.last; ++year) {
            std::int64_t count = 0;
            if (yit != graph.edge_yearly.end()) {
                const auto it = yit->second.find(year);
                if (it != yit->second.end())
                    count = it->second;
            }
            total += count;
            min_year = min_year < 0 ? count : std::min(min_year, count);
        }

        const bool keep = policy.mode == ThresholdMode::total_over_window
                              ? total >= policy.min_total
                              : min_year >= policy.min_per_year;
        if (!keep)
            continue;

        out.edges.emplace(pair, weight);
        if (yit != graph.edge_yearly.end())
            out.edge_yearly.emplace(pair, yit->second);
    }

    for (const auto& [pair, weight] : out.edges) {
        for (const auto* code : {&pair.first, &pair.second}) {
            if (out.nodes.count(*code) != 0)
                continue;
            out.nodes.emplace(*code, graph.output(*code));
            const auto it = graph.node_yearly.find(*code);
            if (it != graph.node_yearly.end())
                out.node_yearly.emplace(*code, it->second);
        }
    }

    return out;
}

} // namespace collabmap
