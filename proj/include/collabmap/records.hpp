#pragma once

#include "collabmap/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace collabmap {

enum class DocType { article, review, note, proceedings, other };

std::string_view to_string(DocType type);
std::optional<DocType> parse_doc_type(std::string_view token);

struct YearRange {
    int first = 1900;
    int last = 2100;

    bool contains(int year) const { return year >= first && year <= last; }
    bool operator==(const YearRange&) const = default;
};

// One indexed publication. Countries are a set: the counting rule is per
// paper, so author multiplicity never matters.
struct PublicationRecord {
    std::string id;
    int year = 0;
    DocType doc_type = DocType::article;
    std::set<std::string> countries; // ISO-3166 alpha-2
    std::set<std::string> fields;    // subject categories, may be empty

    bool operator==(const PublicationRecord&) const = default;
};

struct RejectedLine {
    std::size_t line = 0;  // 1-based input line number
    std::string reason;    // stable token, e.g. "no-countries"
};

struct ValidationReport {
    std::int64_t records_read = 0;
    std::int64_t records_kept = 0;
    std::vector<RejectedLine> rejects;
};

struct ParsedRecords {
    std::vector<PublicationRecord> records;
    ValidationReport report;
};

struct ParseOptions {
    YearRange valid_years{};
};

// Record line format, one record per line:
//   id <TAB> year <TAB> doc_type <TAB> countries <TAB> fields
// countries and fields are comma-separated; fields may be empty.
// Malformed lines become reject entries, never silent drops.
ParsedRecords parse_records(std::istream& in, const ParseOptions& options = {});

std::string serialize_record(const PublicationRecord& record);
std::string serialize_records(std::span<const PublicationRecord> records);

// Keeps records whose doc type and year both pass; order preserved.
std::vector<PublicationRecord> filter_records(std::span<const PublicationRecord> records,
                                              const std::set<DocType>& doc_types,
                                              const YearRange& years);

enum class Region { north, west, east, central, southern, non_african };

std::string_view to_string(Region region);
std::optional<Region> parse_region(std::string_view token);

struct CountryInfo {
    std::string name;
    Region region = Region::non_african;
    std::map<int, Rational> gdp; // year -> constant billion USD; missing years stay absent

    bool operator==(const CountryInfo&) const = default;
};

struct CountryTable {
    std::map<std::string, CountryInfo> entries;

    bool contains(const std::string& code) const { return entries.count(code) != 0; }

    // Every registered code whose region is inside the continent.
    std::set<std::string> african_codes() const;

    bool operator==(const CountryTable&) const = default;
};

// CSV with required header `code,name,region,year,gdp`, one row per
// (code, year); rows for one code merge. Conflicts and bad values are fatal.
CountryTable parse_country_table(std::istream& in);

} // namespace collabmap
