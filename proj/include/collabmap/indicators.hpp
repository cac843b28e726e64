#pragma once

#include "collabmap/graph.hpp"
#include "collabmap/rational.hpp"

#include <map>
#include <span>
#include <string>

namespace collabmap {

// Raised when an indicator has no defined value (zero or missing
// denominator). Never reported as a silent zero.
class UndefinedIndicator : public std::runtime_error {
public:
    explicit UndefinedIndicator(const std::string& what, std::string note = {})
        : std::runtime_error(what), note_(std::move(note)) {}

    // Extra context, e.g. the zero-GDP anomaly flag.
    const std::string& note() const { return note_; }

private:
    std::string note_;
};

enum class DisplayStyle {
    percent_integer,     // "11"
    percent_one_decimal, // "88.0"
    percent_two_decimal, // "1.55"
    ratio_one_decimal,   // "10.0"
};

// An exact ratio plus its rendering rule. Rounding (half away from zero)
// happens only in display(); `value` stays a true rational.
struct IndicatorValue {
    std::int64_t numerator = 0;
    Rational denominator{1};
    Rational value{0};
    DisplayStyle style = DisplayStyle::percent_integer;

    std::string display() const;
};

// Joint papers with `partner` as a share of `country`'s output in `year`.
IndicatorValue partner_percent(const CollabGraph& graph, const std::string& country,
                               const std::string& partner, int year);

// Articles + reviews over all document types for one year.
IndicatorValue substantive_share(std::span<const PublicationRecord> records, int year);

// Wholly-in-region papers over papers with any in-region author.
IndicatorValue domestic_share(const DomesticSplit& split);

// Papers per billion constant USD for (country, year).
IndicatorValue gdp_index(const CollabGraph& graph, const CountryTable& table,
                         const std::string& country, int year);

// A country's share of the world's output in one field.
IndicatorValue field_world_share(std::int64_t country_count, std::int64_t world_count);

using CentralityMap = std::map<std::string, double>;

// Unnormalized shortest-path betweenness over the unweighted skeleton
// (an edge exists wherever weight > 0); each unordered pair contributes
// fractions split equally among its shortest paths.
CentralityMap betweenness(const CollabGraph& graph);

} // namespace collabmap
