#include "collabmap/records.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace collabmap;

namespace {

ParsedRecords parse(const std::string& text) {
    std::istringstream in(text);
    return parse_records(in);
}

} // namespace

TEST_CASE("well-formed line maps fields directly") {
    auto parsed = parse("W123\t2011\tarticle\tEG,SA,US\tChemistry\n");
    REQUIRE(parsed.records.size() == 1);
    const auto& rec = parsed.records[0];
    CHECK(rec.id == "W123");
    CHECK(rec.year == 2011);
    CHECK(rec.doc_type == DocType::article);
    CHECK(rec.countries == std::set<std::string>{"EG", "SA", "US"});
    CHECK(rec.fields == std::set<std::string>{"Chemistry"});
    CHECK(parsed.report.records_read == 1);
    CHECK(parsed.report.records_kept == 1);
    CHECK(parsed.report.rejects.empty());
}

TEST_CASE("duplicate countries on one line collapse to a set") {
    auto parsed = parse("W1\t2005\treview\tGH,GH,NG\tBiology\n");
    REQUIRE(parsed.records.size() == 1);
    CHECK(parsed.records[0].countries == std::set<std::string>{"GH", "NG"});
}

TEST_CASE("malformed lines become reject entries with stable reasons") {
    std::string text = "W1\t2005\tarticle\tEG\tX\n"        // fine
                       "W2\t2005\tarticle\t\tX\n"          // no countries
                       "\t2005\tarticle\tEG\tX\n"          // empty id
                       "W4\ttwenty\tarticle\tEG\tX\n"      // bad year
                       "W5\t2005\tpamphlet\tEG\tX\n"       // bad doc type
                       "W6\t2005\tarticle\tEGY\tX\n"       // bad country code
                       "W7\t2005\tarticle\n";              // wrong column count
    auto parsed = parse(text);
    CHECK(parsed.report.records_read == 7);
    CHECK(parsed.report.records_kept == 1);
    REQUIRE(parsed.report.rejects.size() == 6);
    CHECK(parsed.report.rejects[0].line == 2);
    CHECK(parsed.report.rejects[0].reason == "no-countries");
    CHECK(parsed.report.rejects[1].reason == "empty-id");
    CHECK(parsed.report.rejects[2].reason == "bad-year");
    CHECK(parsed.report.rejects[3].reason == "bad-doc-type");
    CHECK(parsed.report.rejects[4].reason == "bad-country-code");
    CHECK(parsed.report.rejects[5].reason == "bad-field-count");
}

TEST_CASE("year window and blank lines") {
    ParseOptions narrow;
    narrow.valid_years = {2000, 2012};
    std::istringstream in("W1\t1999\tarticle\tEG\tX\n\nW2\t2012\tarticle\tEG\tX\n");
    auto parsed = parse_records(in, narrow);
    CHECK(parsed.report.records_read == 2); // blank line is not a record
    CHECK(parsed.report.records_kept == 1);
    REQUIRE(parsed.report.rejects.size() == 1);
    CHECK(parsed.report.rejects[0].reason == "year-out-of-range");
    CHECK(parsed.records[0].id == "W2");
}

TEST_CASE("a thousand generated lines parse without rejects and counts reconcile") {
    testsupport::Rng rng(41);
    std::string text;
    for (int i = 0; i < 1000; ++i) {
        text += "W" + std::to_string(i) + "\t" + std::to_string(rng.range(2000, 2012)) +
                "\tarticle\t" + testsupport::synthetic_code(rng.range(0, 19)) + "," +
                testsupport::synthetic_code(20 + rng.range(0, 5)) + "\tF" +
                std::to_string(i % 7) + "\n";
    }
    auto parsed = parse(text);
    CHECK(parsed.records.size() == 1000);
    CHECK(parsed.report.records_read == 1000);
    CHECK(parsed.report.records_kept == 1000);
    CHECK(parsed.report.rejects.empty());
    CHECK(parsed.report.records_kept +
              static_cast<std::int64_t>(parsed.report.rejects.size()) ==
          parsed.report.records_read);
}

TEST_CASE("parse, serialize, parse is the identity") {
    testsupport::Rng rng(7);
    auto records = testsupport::random_records(rng, 300, 12);
    std::string text = serialize_records(records);
    auto reparsed = parse(text);
    CHECK(reparsed.report.rejects.empty());
    REQUIRE(reparsed.records.size() == records.size());
    CHECK(reparsed.records == records);
    CHECK(serialize_records(reparsed.records) == text);
}

TEST_CASE("filter keeps exactly the matching doc types and years") {
    auto parsed = parse("W1\t2005\tarticle\tEG\tX\n"
                        "W2\t2005\tproceedings\tEG\tX\n"
                        "W3\t2014\tarticle\tEG\tX\n");
    auto kept = filter_records(parsed.records,
                               {DocType::article, DocType::note, DocType::review},
                               {2000, 2012});
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].id == "W1");

    auto all = filter_records(parsed.records,
                              {DocType::article, DocType::review, DocType::note,
                               DocType::proceedings, DocType::other},
                              {1900, 2100});
    CHECK(all == parsed.records);
}

TEST_CASE("filter equals a brute-force predicate scan and is idempotent") {
    testsupport::Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        auto records = testsupport::random_records(rng, 500, 10);
        std::set<DocType> types;
        types.insert(DocType::article);
        if (rng.chance(0.5))
            types.insert(DocType::note);
        if (rng.chance(0.5))
            types.insert(DocType::proceedings);
        YearRange years{rng.range(2000, 2006), rng.range(2006, 2012)};

        std::vector<PublicationRecord> expected;
        for (const auto& rec : records)
            if (types.count(rec.doc_type) && rec.year >= years.first && rec.year <= years.last)
                expected.push_back(rec);

        auto once = filter_records(records, types, years);
        CHECK(once == expected);
        CHECK(filter_records(once, types, years) == once);
    }
}

TEST_CASE("filter argument validation") {
    std::vector<PublicationRecord> none;
    CHECK_THROWS_AS(filter_records(none, {}, {2000, 2001}), std::invalid_argument);
    CHECK_THROWS_AS(filter_records(none, {DocType::article}, {2005, 2001}),
                    std::invalid_argument);
}

TEST_CASE("country table rows map and merge") {
    std::istringstream in("code,name,region,year,gdp\n"
                          "ZA,South Africa,southern,2008,287.1\n"
                          "ZA,South Africa,southern,2010,375.3\n"
                          "EG,Egypt,north,2010,218.9\n");
    auto table = parse_country_table(in);
    REQUIRE(table.entries.size() == 2);
    const auto& za = table.entries.at("ZA");
    CHECK(za.name == "South Africa");
    CHECK(za.region == Region::southern);
    CHECK(za.gdp.at(2008) == Rational(2871, 10));
    CHECK(za.gdp.at(2010) == Rational(3753, 10));
    CHECK(table.african_codes() == std::set<std::string>{"EG", "ZA"});
}

TEST_CASE("country table rejects conflicts and bad values") {
    auto attempt = [](const std::string& rows) {
        std::istringstream in("code,name,region,year,gdp\n" + rows);
        return parse_country_table(in);
    };
    CHECK_THROWS_AS(attempt("EG,Egypt,north,2010,100\nEG,Misr,north,2011,90\n"), ParseError);
    CHECK_THROWS_AS(attempt("EG,Egypt,north,2010,-5\n"), ParseError);
    CHECK_THROWS_AS(attempt("EG,Egypt,atlantis,2010,100\n"), ParseError);
    CHECK_THROWS_AS(attempt("EG,Egypt,north,2010,100\nEG,Egypt,north,2010,90\n"), ParseError);
    CHECK_NOTHROW(attempt("ZW,Zimbabwe,east,2008,0\n")); // zero is a value, not an error
}

TEST_CASE("quoted names with commas survive the country table") {
    std::istringstream in("code,name,region,year,gdp\n"
                          "CD,\"Congo, Democratic Republic\",central,2010,20.5\n");
    auto table = parse_country_table(in);
    CHECK(table.entries.at("CD").name == "Congo, Democratic Republic");
}
