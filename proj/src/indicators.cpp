#include "collabmap/indicators.hpp"

#include <deque>
#include <vector>

namespace collabmap {

std::string IndicatorValue::display() const {
    switch (style) {
    case DisplayStyle::percent_integer:
        return format_fixed(value * 100, 0);
    case DisplayStyle::percent_one_decimal:
        return format_fixed(value * 100, 1);
    case DisplayStyle::percent_two_decimal:
        return format_fixed(value * 100, 2);
    case DisplayStyle::ratio_one_decimal:
        return format_fixed(value, 1);
    }
    return format_fixed(value, 1);
}

namespace {

IndicatorValue make_value(std::int64_t numerator, Rational denominator, DisplayStyle style) {
    IndicatorValue v;
    v.numerator = numerator;
    v.denominator = denominator;
    v.value = Rational(numerator) / denominator;
    v.style = style;
    return v;
}

} // namespace

IndicatorValue partner_percent(const CollabGraph& graph, const std::string& country,
                               const std::string& partner, int year) {
    const std::int64_t total = graph.output_in(country, year);
    if (total == 0)
        throw UndefinedIndicator("partner_percent: " + country + " has no output in "
                                 + std::to_string(year));
    const std::int64_t joint = graph.weight_in(country, partner, year);
    return make_value(joint, Rational(total), DisplayStyle::percent_integer);
}

IndicatorValue substantive_share(std::span<const PublicationRecord> records, int year) {
    std::int64_t substantive = 0;
    std::int64_t total = 0;
    for (const auto& record : records) {
        if (record.year != year)
            continue;
        ++total;
        if (record.doc_type == DocType::article || record.doc_type == DocType::review)
            ++substantive;
    }
    if (total == 0)
        throw UndefinedIndicator("substantive_share: no records in " + std::to_string(year));
    return make_value(substantive, Rational(total), DisplayStyle::percent_one_decimal);
}

IndicatorValue domestic_share(const DomesticSplit& split) {
    if (split.total == 0)
        throw UndefinedIndicator("domestic_share: split covers no records");
    return make_value(split.domestic, Rational(split.total), DisplayStyle::percent_integer);
}

IndicatorValue gdp_index(const CollabGraph& graph, const CountryTable& table,
                         const std::string& country, int year) {
    const auto entry = table.entries.find(country);
    if (entry == table.entries.end())
        throw UndefinedIndicator("gdp_index: unknown country " + country);
    const auto gdp = entry->second.gdp.find(year);
    if (gdp == entry->second.gdp.end())
        throw UndefinedIndicator("gdp_index: no GDP for " + country + " in " + std::to_string(year));
    if (gdp->second == Rational(0))
        throw UndefinedIndicator("gdp_index: zero GDP for " + country + " in " + std::to_string(year),
                                 "anomalous: output divided by a collapsed GDP is unbounded");
    return make_value(graph.output_in(country, year), gdp->second, DisplayStyle::ratio_one_decimal);
}

IndicatorValue field_world_share(std::int64_t country_count, std::int64_t world_count) {
    if (world_count == 0)
        throw UndefinedIndicator("field_world_share: world count is zero");
    return make_value(country_count, Rational(world_count), DisplayStyle::percent_two_decimal);
}

CentralityMap betweenness(const CollabGraph& graph) {
    std::vector<std::string> codes;
    codes.reserve(graph.nodes.size());
    for (const auto& [code, count] : graph.nodes)
        codes.push_back(code);

    const std::size_t n = codes.size();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i)
        index.emplace(codes[i], i);

    std::vector<std::vector<std::size_t>> adjacency(n);
    for (const auto& [pair, weight] : graph.edges) {
        if (weight <= 0)
            continue;
        const std::size_t a = index.at(pair.first);
        const std::size_t b = index.at(pair.second);
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    }

    // Brandes accumulation; BFS because the skeleton is unweighted.
    std::vector<double> score(n, 0.0);
    std::vector<int> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<std::vector<std::size_t>> parents(n);

    for (std::size_t source = 0; source < n; ++source) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : parents)
            p.clear();

        std::vector<std::size_t> order;
        std::deque<std::size_t> queue;
        dist[source] = 0;
        sigma[source] = 1.0;
        queue.push_back(source);
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (const std::size_t w : adjacency[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    parents[w].push_back(v);
                }
            }
        }

        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const std::size_t w = *it;
            for (const std::size_t v : parents[w])
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != source)
                score[w] += delta[w];
        }
    }

    // Each unordered pair was visited from both endpoints.
    CentralityMap result;
    for (std::size_t i = 0; i < n; ++i)
        result.emplace(codes[i], score[i] / 2.0);
    return result;
}

} // namespace collabmap
