#include "collabmap/records.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <sstream>

namespace collabmap {
namespace {

bool is_country_code(std::string_view token) {
    return token.size() == 2 && std::isupper(static_cast<unsigned char>(token[0]))
        && std::isupper(static_cast<unsigned char>(token[1]));
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

std::optional<int> parse_int(std::string_view token) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        return std::nullopt;
    return value;
}

// Splits one CSV line, honoring double quotes with "" escapes.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

} // namespace

std::string_view to_string(DocType type) {
    switch (type) {
    case DocType::article: return "article";
    case DocType::review: return "review";
    case DocType::note: return "note";
    case DocType::proceedings: return "proceedings";
    case DocType::other: return "other";
    }
    return "other";
}

std::optional<DocType> parse_doc_type(std::string_view token) {
    if (token == "article") return DocType::article;
    if (token == "review") return DocType::review;
    if (token == "note") return DocType::note;
    if (token == "proceedings") return DocType::proceedings;
    if (token == "other") return DocType::other;
    return std::nullopt;
}

std::string_view to_string(Region region) {
    switch (region) {
    case Region::north: return "north";
    case Region::west: return "west";
    case Region::east: return "east";
    case Region::central: return "central";
    case Region::southern: return "southern";
    case Region::non_african: return "non-african";
    }
    return "non-african";
}

std::optional<Region> parse_region(std::string_view token) {
    if (token == "north") return Region::north;
    if (token == "west") return Region::west;
    if (token == "east") return Region::east;
    if (token == "central") return Region::central;
    if (token == "southern") return Region::southern;
    if (token == "non-african") return Region::non_african;
    return std::nullopt;
}

ParsedRecords parse_records(std::istream& in, const ParseOptions& options) {
    if (!in)
        throw ParseError("record stream is not readable");

    ParsedRecords result;
    std::string line;
    std::size_t line_no = 0;

    auto reject = [&](std::size_t at, const char* reason) {
        result.report.rejects.push_back({at, reason});
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;

        ++result.report.records_read;

        const auto parts = split(line, '\t');
        if (parts.size() != 5) {
            reject(line_no, "bad-field-count");
            continue;
        }

        PublicationRecord record;
        record.id = std::string(parts[0]);
        if (record.id.empty()) {
            reject(line_no, "empty-id");
            continue;
        }

        const auto year = parse_int(parts[1]);
        if (!year) {
            reject(line_no, "bad-year");
            continue;
        }
        if (!options.valid_years.contains(*year)) {
            reject(line_no, "year-out-of-range");
            continue;
        }
        record.year = *year;

        const auto type = parse_doc_type(parts[2]);
        if (!type) {
            reject(line_no, "bad-doc-type");
            continue;
        }
        record.doc_type = *type;

        bool bad_code = false;
        if (!parts[3].empty()) {
            for (const auto token : split(parts[3], ',')) {
                if (!is_country_code(token)) {
                    bad_code = true;
                    break;
                }
                record.countries.emplace(token);
            }
        }
        if (bad_code) {
            reject(line_no, "bad-country-code");
            continue;
        }
        if (record.countries.empty()) {
            reject(line_no, "no-countries");
            continue;
        }

        for (const auto token : split(parts[4], ','))
            if (!token.empty())
                record.fields.emplace(token);

        result.records.push_back(std::move(record));
        ++result.report.records_kept;
    }

    if (in.bad())
        throw ParseError("I/O failure while reading record stream");
    return result;
}

std::string serialize_record(const PublicationRecord& record) {
    std::string out = record.id;
    out += '\t';
    out += std::to_string(record.year);
    out += '\t';
    out += to_string(record.doc_type);
    out += '\t';
    bool first = true;
    for (const auto& code : record.countries) {
        if (!first) out += ',';
        out += code;
        first = false;
    }
    out += '\t';
    first = true;
    for (const auto& field : record.fields) {
        if (!first) out += ',';
        out += field;
        first = false;
    }
    return out;
}

std::string serialize_records(std::span<const PublicationRecord> records) {
    std::string out;
    for (const auto& record : records) {
        out += serialize_record(record);
        out += '\n';
    }
    return out;
}

std::vector<PublicationRecord> filter_records(std::span<const PublicationRecord> records,
                                              const std::set<DocType>& doc_types,
                                              const YearRange& years) {
    if (doc_types.empty())
        throw std::invalid_argument("filter_records: doc type set is empty");
    if (years.first > years.last)
        throw std::invalid_argument("filter_records: degenerate year range");

    std::vector<PublicationRecord> out;
    for (const auto& record : records)
        if (doc_types.count(record.doc_type) != 0 && years.contains(record.year))
            out.push_back(record);
    return out;
}

std::set<std::string> CountryTable::african_codes() const {
    std::set<std::string> codes;
    for (const auto& [code, info] : entries)
        if (info.region != Region::non_african)
            codes.insert(code);
    return codes;
}

CountryTable parse_country_table(std::istream& in) {
    if (!in)
        throw ParseError("country table stream is not readable");

    std::string line;
    if (!std::getline(in, line))
        throw ParseError("country table is empty; header row required");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    {
        const auto header = split_csv(line);
        const std::vector<std::string> expected{"code", "name", "region", "year", "gdp"};
        if (header.size() != expected.size())
            throw ParseError("country table header must be 'code,name,region,year,gdp'");
        for (std::size_t i = 0; i < expected.size(); ++i)
            if (trim(header[i]) != expected[i])
                throw ParseError("country table header must be 'code,name,region,year,gdp'");
    }

    CountryTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;

        const auto fields = split_csv(line);
        if (fields.size() != 5)
            throw ParseError("country table line " + std::to_string(line_no) + ": expected 5 fields");

        const std::string code = trim(fields[0]);
        if (!is_country_code(code))
            throw ParseError("country table line " + std::to_string(line_no) + ": bad country code '"
                             + code + "'");

        const std::string name = trim(fields[1]);
        if (name.empty())
            throw ParseError("country table line " + std::to_string(line_no) + ": empty name for " + code);

        const auto region = parse_region(trim(fields[2]));
        if (!region)
            throw ParseError("country table line " + std::to_string(line_no) + ": unknown region '"
                             + trim(fields[2]) + "'");

        const auto year = parse_int(trim(fields[3]));
        if (!year)
            throw ParseError("country table line " + std::to_string(line_no) + ": bad year '"
                             + trim(fields[3]) + "'");

        Rational gdp;
        try {
            gdp = parse_decimal(trim(fields[4]));
        } catch (const ParseError&) {
            throw ParseError("country table line " + std::to_string(line_no) + ": bad gdp '"
                             + trim(fields[4]) + "'");
        }
        if (gdp < Rational(0))
            throw ParseError("country table line " + std::to_string(line_no) + ": negative gdp for "
                             + code);

        auto it = table.entries.find(code);
        if (it == table.entries.end()) {
            CountryInfo info;
            info.name = name;
            info.region = *region;
            info.gdp.emplace(*year, gdp);
            table.entries.emplace(code, std::move(info));
            continue;
        }

        if (it->second.name != name || it->second.region != *region)
            throw ParseError("country table: duplicate code " + code + " with conflicting name or region");
        if (!it->second.gdp.emplace(*year, gdp).second)
            throw ParseError("country table: duplicate gdp row for " + code + " year "
                             + std::to_string(*year));
    }

    if (in.bad())
        throw ParseError("I/O failure while reading country table");
    return table;
}

} // namespace collabmap
