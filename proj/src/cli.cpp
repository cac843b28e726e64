#include "collabmap/cli.hpp"

#include "collabmap/clustering.hpp"
#include "collabmap/fixtures.hpp"
#include "collabmap/graph.hpp"
#include "collabmap/indicators.hpp"
#include "collabmap/layout.hpp"
#include "collabmap/records.hpp"
#include "collabmap/render.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace collabmap {

namespace {

// Distinguishes bad invocations and unreadable files (exit 2) from
// failures inside the pipeline itself (exit 1).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            if (!current.empty())
                out.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty())
        out.push_back(current);
    return out;
}

struct Options {
    std::string records_path;
    std::string countries_path;
    std::string years;
    std::string doc_types = "article,review";
    std::string threshold_mode = "none";
    std::int64_t min_total = 25;
    std::int64_t min_per_year = 5;
    int window = 5;
    std::string resolution = "1";
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    std::string emit;
    std::string scope = "all";
    std::string focal = "EG";
    std::string partners = "US,FR,GB,SA";
    std::string series_partners = "US,SA";
    double tolerance = 1e-6;
    int max_iterations = 1000;
    bool mix2000 = false;
};

const std::set<std::string> kEmitTokens = {
    "records", "ingest",  "graphml",    "pajek", "partners", "series",
    "clusters", "wheel-order", "map-coords", "wheel", "map",      "report",
};

// Everything the stages share, computed once per invocation.
struct Pipeline {
    Options opt;
    std::set<std::string> emit;
    std::set<DocType> doc_types;
    std::optional<YearRange> years_flag;
    ThresholdPolicy policy;
    bool threshold_enabled = false;
    Rational resolution{1};

    ParsedRecords parsed;
    std::optional<CountryTable> countries;
    std::vector<PublicationRecord> series_records; // doc-filtered, full/flag range
    std::vector<PublicationRecord> graph_records;  // doc-filtered, graph window
    YearRange series_years;
    YearRange graph_years;
    CollabGraph graph; // scoped, thresholded when enabled

    std::vector<std::string> partners;        // matrix columns present in graph
    std::vector<std::string> series_partners; // series columns present in records

    std::optional<Clustering> clusters;
    std::optional<CircularOrder> order;
    std::optional<MapCoordinates> coords;

    bool wants(const std::string& token) const { return emit.count(token) != 0; }
};

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError("cannot open for writing: " + path.string());
    out << content;
    if (!out)
        throw UsageError("write failed: " + path.string());
}

YearRange parse_years_flag(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw UsageError("--years expects A:B, got: " + text);
    try {
        YearRange range{std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
        if (range.first > range.last)
            throw UsageError("--years range is reversed: " + text);
        return range;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("--years expects integers A:B, got: " + text);
    }
}

Pipeline prepare(const Options& opt) {
    Pipeline p;
    p.opt = opt;

    if (opt.emit.empty()) {
        p.emit = kEmitTokens;
    } else {
        for (const auto& token : split_list(opt.emit)) {
            if (!kEmitTokens.count(token))
                throw UsageError("unknown --emit token: " + token);
            p.emit.insert(token);
        }
    }
    for (const auto& token : split_list(opt.doc_types)) {
        auto type = parse_doc_type(token);
        if (!type)
            throw UsageError("unknown --doc-types token: " + token);
        p.doc_types.insert(*type);
    }
    if (p.doc_types.empty())
        throw UsageError("--doc-types must not be empty");
    if (!opt.years.empty())
        p.years_flag = parse_years_flag(opt.years);
    if (opt.threshold_mode != "none") {
        auto mode = parse_threshold_mode(opt.threshold_mode);
        if (!mode)
            throw UsageError("unknown --threshold-mode: " + opt.threshold_mode);
        p.threshold_enabled = true;
        p.policy.mode = *mode;
    }
    if (opt.min_total < 0 || opt.min_per_year < 0 || opt.window < 1)
        throw UsageError("threshold bounds out of range");
    p.policy.min_total = opt.min_total;
    p.policy.min_per_year = opt.min_per_year;
    p.policy.window_years = opt.window;
    try {
        p.resolution = parse_decimal(opt.resolution);
    } catch (const ParseError&) {
        throw UsageError("--resolution expects a decimal number, got: " + opt.resolution);
    }
    if (p.resolution < Rational(0))
        throw UsageError("--resolution must be non-negative");
    if (opt.scope != "all" && opt.scope != "africa")
        throw UsageError("unknown --scope: " + opt.scope);

    if (opt.records_path.empty())
        throw UsageError("--records is required for this subcommand");
    std::ifstream records_in(opt.records_path, std::ios::binary);
    if (!records_in)
        throw UsageError("cannot open records file: " + opt.records_path);
    p.parsed = parse_records(records_in);

    if (!opt.countries_path.empty()) {
        std::ifstream countries_in(opt.countries_path, std::ios::binary);
        if (!countries_in)
            throw UsageError("cannot open country table: " + opt.countries_path);
        p.countries = parse_country_table(countries_in);
    }
    if (opt.scope == "africa" && !p.countries)
        throw UsageError("--scope africa needs --countries");

    int min_year = 0, max_year = 0;
    bool any = false;
    for (const auto& rec : p.parsed.records) {
        if (!any) {
            min_year = max_year = rec.year;
            any = true;
        } else {
            min_year = std::min(min_year, rec.year);
            max_year = std::max(max_year, rec.year);
        }
    }
    if (p.years_flag) {
        p.series_years = *p.years_flag;
        p.graph_years = *p.years_flag;
    } else if (any) {
        p.series_years = {min_year, max_year};
        // the recent window: default graphs cover the last five ingested years
        p.graph_years = {std::max(min_year, max_year - 4), max_year};
    } else {
        p.series_years = {0, -1}; // empty
        p.graph_years = {0, -1};
    }

    if (any) {
        p.series_records = filter_records(p.parsed.records, p.doc_types, p.series_years);
        p.graph_records = filter_records(p.parsed.records, p.doc_types, p.graph_years);
    }

    GraphScope scope;
    if (opt.scope == "africa")
        scope = p.countries->african_codes();
    CollabGraph raw = build_graph(p.graph_records, scope);
    if (p.threshold_enabled)
        p.graph = apply_threshold(raw, p.policy, p.graph_years.last);
    else
        p.graph = std::move(raw);

    for (const auto& code : split_list(opt.partners)) {
        if (p.graph.nodes.count(code))
            p.partners.push_back(code);
        else
            std::cerr << "partner " << code << " not in graph; column omitted\n";
    }
    std::set<std::string> known;
    for (const auto& rec : p.series_records)
        known.insert(rec.countries.begin(), rec.countries.end());
    for (const auto& code : split_list(opt.series_partners)) {
        if (known.count(code))
            p.series_partners.push_back(code);
        else
            std::cerr << "series partner " << code << " not in records; column omitted\n";
    }
    return p;
}

void ensure_out_dir(const Pipeline& p) {
    std::error_code ec;
    std::filesystem::create_directories(p.opt.out_dir, ec);
    if (ec)
        throw UsageError("cannot create output directory: " + p.opt.out_dir);
}

std::filesystem::path out_path(const Pipeline& p, const std::string& name) {
    return std::filesystem::path(p.opt.out_dir) / name;
}

void stage_ingest(Pipeline& p) {
    if (p.wants("records"))
        write_file(out_path(p, "records.tsv"), serialize_records(p.parsed.records));
    if (p.wants("ingest")) {
        nlohmann::ordered_json report;
        report["records_read"] = p.parsed.report.records_read;
        report["records_kept"] = p.parsed.report.records_kept;
        nlohmann::ordered_json rejects = nlohmann::ordered_json::array();
        for (const auto& reject : p.parsed.report.rejects)
            rejects.push_back({{"line", reject.line}, {"reason", reject.reason}});
        report["rejects"] = std::move(rejects);
        write_file(out_path(p, "ingest.json"), report.dump(2) + "\n");
    }
}

void stage_graph(Pipeline& p) {
    if (p.wants("graphml"))
        write_file(out_path(p, "graph.graphml"),
                   export_graph(p.graph, std::nullopt, GraphFormat::graphml));
    if (p.wants("pajek"))
        write_file(out_path(p, "graph.net"),
                   export_graph(p.graph, std::nullopt, GraphFormat::pajek));
}

Table series_table(const Pipeline& p) {
    YearlySpec spec;
    spec.focal = p.opt.focal;
    spec.partners = p.series_partners;
    if (p.series_partners.size() >= 2)
        spec.joint_groups = {
            std::set<std::string>(p.series_partners.begin(), p.series_partners.end())};
    spec.years = p.series_years;
    return yearly_series(p.series_records, spec);
}

void stage_indicators(Pipeline& p) {
    std::vector<std::string> rows;
    if (p.countries) {
        for (const auto& code : p.countries->african_codes())
            if (p.graph.nodes.count(code))
                rows.push_back(code);
    } else {
        for (const auto& [code, count] : p.graph.nodes)
            rows.push_back(code);
    }
    Table matrix = partner_matrix(p.graph, rows, p.partners);
    if (p.wants("partners")) {
        write_file(out_path(p, "partners.csv"), to_csv(matrix));
        write_file(out_path(p, "partners.json"), to_json(matrix));
    }
    Table series = series_table(p);
    if (p.wants("series")) {
        write_file(out_path(p, "series.csv"), to_csv(series));
        write_file(out_path(p, "series.json"), to_json(series));
    }
}

const Clustering& need_clusters(Pipeline& p) {
    if (!p.clusters)
        p.clusters = cluster(p.graph, p.resolution, p.opt.seed);
    return *p.clusters;
}

void stage_cluster(Pipeline& p) {
    const Clustering& clusters = need_clusters(p);
    if (!p.wants("clusters"))
        return;
    nlohmann::ordered_json doc;
    doc["resolution"] = format_fixed(clusters.resolution, 4);
    doc["quality"] = format_fixed(clusters.quality, 6);
    doc["cluster_count"] = clusters.cluster_count();
    nlohmann::ordered_json assignment = nlohmann::ordered_json::object();
    for (const auto& [code, id] : clusters.assignment)
        assignment[code] = id;
    doc["clusters"] = std::move(assignment);
    write_file(out_path(p, "clusters.json"), doc.dump(2) + "\n");
}

void stage_layout(Pipeline& p) {
    if (p.graph.nodes.empty())
        throw std::invalid_argument("layout: graph has no nodes in the selected window");
    p.order = circular_order(p.graph, need_clusters(p), p.opt.seed);
    if (p.wants("wheel-order")) {
        nlohmann::ordered_json doc;
        doc["order"] = p.order->order;
        doc["objective"] = seriation_objective(p.graph, *p.order);
        write_file(out_path(p, "wheel_order.json"), doc.dump(2) + "\n");
    }
    if (p.graph.nodes.size() >= 2 && p.graph.total_weight() > 0) {
        MapLayoutOptions options;
        options.seed = p.opt.seed;
        options.tolerance = p.opt.tolerance;
        options.max_iterations = p.opt.max_iterations;
        p.coords = map_layout(normalize(p.graph), options);
        if (p.wants("map-coords")) {
            nlohmann::ordered_json doc;
            doc["stress"] = format_double(p.coords->stress, 6);
            doc["iterations"] = p.coords->iterations;
            nlohmann::ordered_json positions = nlohmann::ordered_json::object();
            for (const auto& [code, xy] : p.coords->position)
                positions[code] = {format_double(xy.first, 6), format_double(xy.second, 6)};
            doc["positions"] = std::move(positions);
            write_file(out_path(p, "map_coords.json"), doc.dump(2) + "\n");
        }
    } else {
        std::cerr << "map layout skipped: needs at least 2 nodes and 1 edge\n";
    }
}

void stage_render(Pipeline& p) {
    if (!p.order)
        stage_layout(p);
    RenderSpec spec;
    if (p.wants("wheel"))
        write_file(out_path(p, "wheel.svg"), emit_wheel(*p.order, p.graph, spec));
    if (p.coords && p.wants("map"))
        write_file(out_path(p, "map.svg"),
                   emit_map(*p.coords, *p.clusters, p.graph, spec));
}

void stage_report(Pipeline& p) {
    nlohmann::ordered_json doc;
    doc["records"] = {{"read", p.parsed.report.records_read},
                      {"kept", p.parsed.report.records_kept},
                      {"rejected", p.parsed.report.rejects.size()}};
    doc["window"] = {{"series", {p.series_years.first, p.series_years.last}},
                     {"graph", {p.graph_years.first, p.graph_years.last}}};

    std::int64_t edge_count = static_cast<std::int64_t>(p.graph.edges.size());
    doc["graph"] = {{"nodes", p.graph.nodes.size()},
                    {"edges", edge_count},
                    {"total_weight", p.graph.total_weight()},
                    {"thresholded", p.threshold_enabled}};
    if (p.threshold_enabled)
        doc["graph"]["threshold_mode"] = std::string(to_string(p.policy.mode));

    nlohmann::ordered_json shares = nlohmann::ordered_json::array();
    for (int year = p.series_years.first; year <= p.series_years.last; ++year) {
        nlohmann::ordered_json row;
        row["year"] = year;
        try {
            row["substantive_pct"] = substantive_share(p.parsed.records, year).display();
        } catch (const UndefinedIndicator&) {
            row["substantive_pct"] = nullptr;
        }
        if (p.countries) {
            std::vector<PublicationRecord> year_substantive;
            for (const auto& rec : p.series_records)
                if (rec.year == year)
                    year_substantive.push_back(rec);
            auto split = domestic_split(year_substantive, p.countries->african_codes());
            try {
                row["domestic_pct"] = domestic_share(split).display();
            } catch (const UndefinedIndicator&) {
                row["domestic_pct"] = nullptr;
            }
        }
        shares.push_back(std::move(row));
    }
    doc["shares"] = std::move(shares);

    Table series = series_table(p);
    nlohmann::ordered_json series_json = nlohmann::ordered_json::array();
    for (const auto& row : series.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < series.columns.size(); ++i) {
            if (i < row.size() && row[i])
                obj[series.columns[i]] = *row[i];
            else
                obj[series.columns[i]] = nullptr;
        }
        series_json.push_back(std::move(obj));
    }
    doc["series"] = std::move(series_json);

    if (!p.graph.nodes.empty()) {
        const Clustering& clusters = need_clusters(p);
        doc["clusters"] = {{"count", clusters.cluster_count()},
                           {"quality", format_fixed(clusters.quality, 6)}};
        if (!p.order)
            stage_layout(p);
        doc["wheel"] = {{"objective", seriation_objective(p.graph, *p.order)}};
        if (p.coords)
            doc["map"] = {{"stress", format_double(p.coords->stress, 6)},
                          {"iterations", p.coords->iterations}};
        nlohmann::ordered_json central = nlohmann::ordered_json::object();
        for (const auto& [code, value] : betweenness(p.graph))
            central[code] = format_double(value, 4);
        doc["betweenness"] = std::move(central);
    }

    if (p.wants("report"))
        write_file(out_path(p, "report.json"), doc.dump(2) + "\n");
}

int run_fixture(const Options& opt) {
    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    if (ec)
        throw UsageError("cannot create output directory: " + opt.out_dir);
    auto records = pair_series_records(reference_pair_series());
    write_file(std::filesystem::path(opt.out_dir) / "records.tsv",
               serialize_records(records));
    write_file(std::filesystem::path(opt.out_dir) / "countries.csv",
               fixture_country_csv());
    if (opt.mix2000) {
        auto mix = africa_2000_mix();
        write_file(std::filesystem::path(opt.out_dir) / "mix2000.tsv",
                   serialize_records(mix));
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    Options opt;
    CLI::App app{"country co-authorship mapping pipeline"};
    app.set_config("--config", "", "flat key=value file; flags override config values");

    app.add_option("--records", opt.records_path, "publication records file (TSV lines)");
    app.add_option("--countries", opt.countries_path, "country metadata CSV");
    app.add_option("--years", opt.years, "inclusive year range A:B");
    app.add_option("--doc-types", opt.doc_types,
                   "comma list of document types to keep (default article,review)");
    app.add_option("--threshold-mode", opt.threshold_mode,
                   "none | total-over-window | per-year-minimum");
    app.add_option("--min-total", opt.min_total, "window total needed to keep an edge");
    app.add_option("--min-per-year", opt.min_per_year,
                   "per-year minimum needed to keep an edge");
    app.add_option("--window", opt.window, "threshold window length in years");
    app.add_option("--resolution", opt.resolution, "clustering resolution (decimal)");
    app.add_option("--seed", opt.seed, "random seed for clustering and layouts");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--emit", opt.emit, "comma list of artifacts to write (default all)");
    app.add_option("--scope", opt.scope, "node scope: all | africa");
    app.add_option("--focal", opt.focal, "focal country for the yearly series");
    app.add_option("--partners", opt.partners, "partner columns for the matrix");
    app.add_option("--series-partners", opt.series_partners,
                   "partner columns for the yearly series");
    app.add_option("--tol", opt.tolerance, "map layout convergence tolerance");
    app.add_option("--max-iter", opt.max_iterations, "map layout iteration cap");

    auto* sub_ingest = app.add_subcommand("ingest", "parse and validate records");
    auto* sub_graph = app.add_subcommand("graph", "build the co-authorship graph");
    auto* sub_indicators = app.add_subcommand("indicators", "partner matrix and yearly series");
    auto* sub_cluster = app.add_subcommand("cluster", "detect clusters");
    auto* sub_layout = app.add_subcommand("layout", "ring order and map coordinates");
    auto* sub_render = app.add_subcommand("render", "wheel and map SVGs");
    auto* sub_report = app.add_subcommand("report", "combined JSON report");
    auto* sub_all = app.add_subcommand("all", "run every stage");
    auto* sub_fixture = app.add_subcommand("fixture", "write the bundled reference corpus");
    sub_fixture->add_flag("--mix2000", opt.mix2000,
                          "also write the one-year mixed-type corpus");
    // shared flags may follow the stage name: collabmap all --records ...
    for (auto* sub : {sub_ingest, sub_graph, sub_indicators, sub_cluster, sub_layout,
                      sub_render, sub_report, sub_all, sub_fixture})
        sub->fallthrough();
    app.require_subcommand(1);

    std::vector<const char*> argv;
    argv.push_back("collabmap");
    for (const auto& arg : args)
        argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sub_fixture->parsed())
            return run_fixture(opt);

        Pipeline p = prepare(opt);
        ensure_out_dir(p);
        if (sub_ingest->parsed() || sub_all->parsed())
            stage_ingest(p);
        if (sub_graph->parsed() || sub_all->parsed())
            stage_graph(p);
        if (sub_indicators->parsed() || sub_all->parsed())
            stage_indicators(p);
        if (sub_cluster->parsed() || sub_all->parsed())
            stage_cluster(p);
        if (sub_layout->parsed() || sub_all->parsed())
            stage_layout(p);
        if (sub_render->parsed() || sub_all->parsed())
            stage_render(p);
        if (sub_report->parsed() || sub_all->parsed())
            stage_report(p);
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UndefinedIndicator& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (!e.note().empty())
            std::cerr << "note: " << e.note() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace collabmap
