#pragma once

#include "collabmap/records.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace collabmap {

// One year of a focal country's output: total papers, joint papers with
// each of two partners (triples included in both), and the three-way count.
struct PairSeriesRow {
    int year = 0;
    std::int64_t total = 0;
    std::int64_t with_a = 0;
    std::int64_t with_b = 0;
    std::int64_t triple = 0;
};

// The 13-year Egypt/USA/Saudi reference series (2000..2012) the acceptance
// suite checks against; the 2002 three-way count is unreported upstream and
// carried as 0.
std::vector<PairSeriesRow> reference_pair_series();

// Deterministic records realizing the rows exactly: per year, `triple`
// papers {focal,a,b}, then {focal,a} and {focal,b} fills, then focal-only
// papers up to the total. All articles.
std::vector<PublicationRecord> pair_series_records(const std::vector<PairSeriesRow>& rows,
                                                   const std::string& focal = "EG",
                                                   const std::string& partner_a = "US",
                                                   const std::string& partner_b = "SA");

// Single-year corpus with the 2000 baseline shape: 13,271 records of which
// 11,678 are articles or reviews, and 6,319 of those involve African
// countries only. Display rounding then gives an 88.0% substantive share
// and a 54% domestic share.
std::vector<PublicationRecord> africa_2000_mix();

// Country metadata covering the fixture codes, including a zero-GDP year
// that exercises the undefined-indicator path.
std::string fixture_country_csv();

} // namespace collabmap
