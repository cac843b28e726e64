#include "collabmap/fixtures.hpp"

#include <stdexcept>

namespace collabmap {

std::vector<PairSeriesRow> reference_pair_series() {
    return {
        {2000, 2577, 286, 95, 2},    {2001, 2707, 227, 94, 3},
        {2002, 2894, 295, 115, 0},   {2003, 3238, 312, 181, 7},
        {2004, 3212, 318, 169, 4},   {2005, 3338, 326, 164, 3},
        {2006, 3847, 358, 190, 6},   {2007, 4280, 424, 199, 8},
        {2008, 4710, 439, 261, 15},  {2009, 5725, 597, 416, 20},
        {2010, 6281, 708, 614, 33},  {2011, 7416, 823, 1093, 55},
        {2012, 4386, 428, 832, 47},
    };
}

std::vector<PublicationRecord> pair_series_records(const std::vector<PairSeriesRow>& rows,
                                                   const std::string& focal,
                                                   const std::string& partner_a,
                                                   const std::string& partner_b) {
    std::vector<PublicationRecord> records;
    for (const auto& row : rows) {
        std::int64_t only_a = row.with_a - row.triple;
        std::int64_t only_b = row.with_b - row.triple;
        std::int64_t alone = row.total - row.with_a - row.with_b + row.triple;
        if (row.triple < 0 || only_a < 0 || only_b < 0 || alone < 0)
            throw std::invalid_argument("pair_series_records: inconsistent row counts");

        std::int64_t seq = 0;
        auto emit = [&](std::int64_t count, std::set<std::string> countries) {
            for (std::int64_t i = 0; i < count; ++i) {
                PublicationRecord rec;
                rec.id = focal + std::to_string(row.year) + "-" + std::to_string(++seq);
                rec.year = row.year;
                rec.doc_type = DocType::article;
                rec.countries = countries;
                rec.fields = {"General"};
                records.push_back(std::move(rec));
            }
        };
        emit(row.triple, {focal, partner_a, partner_b});
        emit(only_a, {focal, partner_a});
        emit(only_b, {focal, partner_b});
        emit(alone, {focal});
    }
    return records;
}

std::vector<PublicationRecord> africa_2000_mix() {
    std::vector<PublicationRecord> records;
    std::int64_t seq = 0;
    auto emit = [&](std::int64_t count, DocType type, std::set<std::string> countries) {
        for (std::int64_t i = 0; i < count; ++i) {
            PublicationRecord rec;
            rec.id = "MIX2000-" + std::to_string(++seq);
            rec.year = 2000;
            rec.doc_type = type;
            rec.countries = countries;
            rec.fields = {"General"};
            records.push_back(std::move(rec));
        }
    };
    // 11,678 substantive: 6,319 within-region, 5,359 with an outside partner.
    emit(3200, DocType::article, {"EG"});
    emit(2119, DocType::article, {"ZA"});
    emit(1000, DocType::review, {"NG", "KE"});
    emit(2700, DocType::article, {"EG", "US"});
    emit(2000, DocType::article, {"ZA", "GB"});
    emit(659, DocType::review, {"MA", "FR"});
    // 1,593 below the substantive cut.
    emit(797, DocType::note, {"EG"});
    emit(796, DocType::proceedings, {"ZA", "US"});
    return records;
}

std::string fixture_country_csv() {
    return "code,name,region,year,gdp\n"
           "DZ,Algeria,north,2010,161.2\n"
           "EG,Egypt,north,2010,218.9\n"
           "KE,Kenya,east,2010,40.0\n"
           "MA,Morocco,north,2010,93.2\n"
           "NG,Nigeria,west,2010,369.1\n"
           "TN,Tunisia,north,2010,44.1\n"
           "ZA,South Africa,southern,2010,375.3\n"
           "ZW,Zimbabwe,east,2008,0\n"
           "ZW,Zimbabwe,east,2010,12.0\n"
           "FR,France,non-african,2010,2646.8\n"
           "GB,United Kingdom,non-african,2010,2452.9\n"
           "SA,Saudi Arabia,non-african,2010,528.2\n"
           "US,United States,non-african,2010,14964.4\n";
}

} // namespace collabmap
