#include "collabmap/render.hpp"

#include "collabmap/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace collabmap {

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string num(double v) { return format_double(v, 2); }

// Heaviest max_edges edges, ties toward the smaller code pair; returned in
// code order so emission is stable.
std::vector<std::pair<CountryPair, std::int64_t>>
retained_edges(const CollabGraph& graph, int max_edges) {
    if (max_edges < 0)
        throw std::invalid_argument("render: max_edges must be >= 0");
    std::vector<std::pair<CountryPair, std::int64_t>> edges(graph.edges.begin(),
                                                            graph.edges.end());
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    if (static_cast<int>(edges.size()) > max_edges)
        edges.resize(static_cast<std::size_t>(max_edges));
    std::sort(edges.begin(), edges.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return edges;
}

double node_radius(std::int64_t output, std::int64_t max_output, double max_radius) {
    if (max_output <= 0 || output <= 0)
        return 2.0;
    double r = max_radius * std::sqrt(static_cast<double>(output) /
                                      static_cast<double>(max_output));
    return std::max(2.0, r);
}

double stroke_width(std::int64_t w, std::int64_t max_w) {
    if (max_w <= 0)
        return 0.75;
    return 0.75 + 4.25 * static_cast<double>(w) / static_cast<double>(max_w);
}

void check_spec(const RenderSpec& spec) {
    if (spec.max_edges < 0)
        throw std::invalid_argument("render: max_edges must be >= 0");
    if (spec.palette.empty())
        throw std::invalid_argument("render: palette must not be empty");
    if (!(spec.label_scale > 0))
        throw std::invalid_argument("render: label_scale must be positive");
}

} // namespace

std::string emit_wheel(const CircularOrder& order, const CollabGraph& graph,
                       const RenderSpec& spec) {
    check_spec(spec);
    std::map<std::string, int> pos;
    for (int p = 0; p < static_cast<int>(order.order.size()); ++p)
        if (!pos.emplace(order.order[p], p).second)
            throw std::invalid_argument("emit_wheel: duplicate code in order");
    for (const auto& [code, count] : graph.nodes)
        if (!pos.count(code))
            throw std::invalid_argument("emit_wheel: order misses node " + code);

    const double cx = 500, cy = 500, radius = 400;
    int n = static_cast<int>(order.order.size());
    auto point = [&](int p, double r) {
        double angle = -1.5707963267948966 +
                       2 * 3.141592653589793 * static_cast<double>(p) /
                           static_cast<double>(std::max(n, 1));
        return std::pair<double, double>{cx + r * std::cos(angle),
                                         cy + r * std::sin(angle)};
    };

    std::int64_t max_output = 0;
    for (const auto& [code, count] : graph.nodes)
        max_output = std::max(max_output, count);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
           "viewBox=\"0 0 1000 1000\">\n"
        << "<rect width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n"
        << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(radius)
        << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";

    auto edges = retained_edges(graph, spec.max_edges);
    std::int64_t max_w = 0;
    for (const auto& [pair, w] : edges)
        max_w = std::max(max_w, w);
    for (const auto& [pair, w] : edges) {
        auto [x1, y1] = point(pos.at(pair.first), radius);
        auto [x2, y2] = point(pos.at(pair.second), radius);
        svg << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
            << "\" y2=\"" << num(y2) << "\" stroke=\"#888888\" stroke-opacity=\"0.55\" "
            << "stroke-width=\"" << num(stroke_width(w, max_w)) << "\"/>\n";
    }

    for (const auto& [code, p] : pos) {
        if (!graph.nodes.count(code))
            continue; // order may carry extra codes; draw graph nodes only
        auto [x, y] = point(p, radius);
        double r = node_radius(graph.nodes.at(code), max_output, 16.0);
        svg << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r)
            << "\" fill=\"#1f77b4\" stroke=\"#333333\"/>\n";
        auto [lx, ly] = point(p, radius + 26.0);
        svg << "<text x=\"" << num(lx) << "\" y=\"" << num(ly)
            << "\" font-family=\"sans-serif\" font-size=\"" << num(12.0 * spec.label_scale)
            << "\" text-anchor=\"middle\" dominant-baseline=\"central\">"
            << xml_escape(code) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string emit_map(const MapCoordinates& coords, const Clustering& clustering,
                     const CollabGraph& graph, const RenderSpec& spec) {
    check_spec(spec);
    for (const auto& [code, count] : graph.nodes) {
        if (!coords.position.count(code))
            throw std::invalid_argument("emit_map: coordinates miss node " + code);
        if (!clustering.assignment.count(code))
            throw std::invalid_argument("emit_map: clustering misses node " + code);
    }

    const double width = 1000, height = 800, margin = 80;
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    bool first = true;
    for (const auto& [code, count] : graph.nodes) {
        auto [x, y] = coords.position.at(code);
        if (first) {
            min_x = max_x = x;
            min_y = max_y = y;
            first = false;
        } else {
            min_x = std::min(min_x, x);
            max_x = std::max(max_x, x);
            min_y = std::min(min_y, y);
            max_y = std::max(max_y, y);
        }
    }
    double dx = max_x - min_x;
    double dy = max_y - min_y;
    double scale = 1.0;
    if (dx > 0 && dy > 0)
        scale = std::min((width - 2 * margin) / dx, (height - 2 * margin) / dy);
    else if (dx > 0)
        scale = (width - 2 * margin) / dx;
    else if (dy > 0)
        scale = (height - 2 * margin) / dy;
    double cx0 = (min_x + max_x) / 2;
    double cy0 = (min_y + max_y) / 2;
    auto place = [&](const std::string& code) {
        auto [x, y] = coords.position.at(code);
        return std::pair<double, double>{width / 2 + (x - cx0) * scale,
                                         height / 2 - (y - cy0) * scale};
    };

    std::int64_t max_output = 0;
    for (const auto& [code, count] : graph.nodes)
        max_output = std::max(max_output, count);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"800\" "
           "viewBox=\"0 0 1000 800\">\n"
        << "<rect width=\"1000\" height=\"800\" fill=\"#ffffff\"/>\n";

    auto edges = retained_edges(graph, spec.max_edges);
    std::int64_t max_w = 0;
    for (const auto& [pair, w] : edges)
        max_w = std::max(max_w, w);
    for (const auto& [pair, w] : edges) {
        auto [x1, y1] = place(pair.first);
        auto [x2, y2] = place(pair.second);
        svg << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
            << "\" y2=\"" << num(y2) << "\" stroke=\"#999999\" stroke-opacity=\"0.5\" "
            << "stroke-width=\"" << num(stroke_width(w, max_w)) << "\"/>\n";
    }

    for (const auto& [code, count] : graph.nodes) {
        auto [x, y] = place(code);
        double r = node_radius(count, max_output, 20.0);
        const std::string& fill =
            spec.palette[static_cast<std::size_t>(clustering.assignment.at(code)) %
                         spec.palette.size()];
        svg << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r)
            << "\" fill=\"" << fill << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << num(x) << "\" y=\"" << num(y - r - 4.0 * spec.label_scale)
            << "\" font-family=\"sans-serif\" font-size=\"" << num(11.0 * spec.label_scale)
            << "\" text-anchor=\"middle\">" << xml_escape(code) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

GraphFormat parse_graph_format(std::string_view token) {
    if (token == "graphml")
        return GraphFormat::graphml;
    if (token == "pajek")
        return GraphFormat::pajek;
    throw std::invalid_argument("unknown graph format: " + std::string(token));
}

std::string to_string(GraphFormat format) {
    return format == GraphFormat::graphml ? "graphml" : "pajek";
}

namespace {

std::string export_graphml(const CollabGraph& graph,
                           const std::optional<Clustering>& clustering) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "<key id=\"output\" for=\"node\" attr.name=\"output\" attr.type=\"long\"/>\n";
    if (clustering)
        out << "<key id=\"cluster\" for=\"node\" attr.name=\"cluster\" attr.type=\"int\"/>\n";
    out << "<key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
        << "<graph id=\"G\" edgedefault=\"undirected\">\n";
    for (const auto& [code, count] : graph.nodes) {
        out << "<node id=\"" << xml_escape(code) << "\"><data key=\"output\">" << count
            << "</data>";
        if (clustering) {
            auto it = clustering->assignment.find(code);
            if (it == clustering->assignment.end())
                throw std::invalid_argument("export_graph: clustering misses node " + code);
            out << "<data key=\"cluster\">" << it->second << "</data>";
        }
        out << "</node>\n";
    }
    for (const auto& [pair, w] : graph.edges)
        out << "<edge source=\"" << xml_escape(pair.first) << "\" target=\""
            << xml_escape(pair.second) << "\"><data key=\"weight\">" << w
            << "</data></edge>\n";
    out << "</graph>\n</graphml>\n";
    return out.str();
}

std::string export_pajek(const CollabGraph& graph,
                         const std::optional<Clustering>& clustering) {
    std::map<std::string, int> id; // 1-based vertex ids in code order
    for (const auto& [code, count] : graph.nodes)
        id[code] = static_cast<int>(id.size()) + 1;

    std::ostringstream out;
    out << "*Vertices " << graph.nodes.size() << "\n";
    for (const auto& [code, count] : graph.nodes)
        out << id.at(code) << " \"" << code << "\"\n";
    out << "*Edges\n";
    for (const auto& [pair, w] : graph.edges)
        out << id.at(pair.first) << " " << id.at(pair.second) << " " << w << "\n";
    if (clustering) {
        out << "*Partition cluster\n";
        for (const auto& [code, count] : graph.nodes) {
            auto it = clustering->assignment.find(code);
            if (it == clustering->assignment.end())
                throw std::invalid_argument("export_graph: clustering misses node " + code);
            out << it->second + 1 << "\n";
        }
    }
    out << "*Vector output\n";
    for (const auto& [code, count] : graph.nodes)
        out << count << "\n";
    return out.str();
}

std::string xml_unescape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        if (s[i] != '&') {
            out += s[i++];
            continue;
        }
        auto try_entity = [&](std::string_view entity, char c) {
            if (s.substr(i, entity.size()) == entity) {
                out += c;
                i += entity.size();
                return true;
            }
            return false;
        };
        if (try_entity("&amp;", '&') || try_entity("&lt;", '<') || try_entity("&gt;", '>') ||
            try_entity("&quot;", '"') || try_entity("&apos;", '\''))
            continue;
        throw ParseError("graphml: unknown entity");
    }
    return out;
}

std::string require_attr(std::string_view tag, std::string_view name) {
    std::string probe = std::string(name) + "=\"";
    auto at = tag.find(probe);
    if (at == std::string_view::npos)
        throw ParseError("graphml: missing attribute " + std::string(name));
    at += probe.size();
    auto end = tag.find('"', at);
    if (end == std::string_view::npos)
        throw ParseError("graphml: unterminated attribute");
    return xml_unescape(tag.substr(at, end - at));
}

std::optional<std::string> data_value(std::string_view element, const std::string& key) {
    std::string probe = "<data key=\"" + key + "\">";
    auto at = element.find(probe);
    if (at == std::string_view::npos)
        return std::nullopt;
    at += probe.size();
    auto end = element.find("</data>", at);
    if (end == std::string_view::npos)
        throw ParseError("graphml: unterminated data element");
    return std::string(element.substr(at, end - at));
}

std::int64_t parse_count(std::string_view text, const char* what) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError(std::string("bad integer in ") + what);
    return value;
}

ImportedGraph import_graphml(const std::string& text) {
    ImportedGraph out;
    std::map<std::string, int> clusters;
    bool any_cluster = false;

    std::size_t cursor = 0;
    while (true) {
        std::size_t node_at = text.find("<node ", cursor);
        std::size_t edge_at = text.find("<edge ", cursor);
        if (node_at == std::string::npos && edge_at == std::string::npos)
            break;
        bool is_node = node_at < edge_at;
        std::size_t start = is_node ? node_at : edge_at;
        std::size_t tag_end = text.find('>', start);
        if (tag_end == std::string::npos)
            throw ParseError("graphml: unterminated tag");
        const char* close = is_node ? "</node>" : "</edge>";
        std::size_t end = text.find(close, tag_end);
        if (end == std::string::npos)
            throw ParseError("graphml: missing closing tag");
        std::string_view tag(text.data() + start, tag_end - start);
        std::string_view body(text.data() + tag_end + 1, end - tag_end - 1);
        cursor = end;

        if (is_node) {
            std::string code = require_attr(tag, "id");
            auto output = data_value(body, "output");
            if (!output)
                throw ParseError("graphml: node without output count");
            if (!out.graph.nodes.emplace(code, parse_count(*output, "output")).second)
                throw ParseError("graphml: duplicate node " + code);
            if (auto cl = data_value(body, "cluster")) {
                clusters[code] = static_cast<int>(parse_count(*cl, "cluster"));
                any_cluster = true;
            }
        } else {
            std::string source = require_attr(tag, "source");
            std::string target = require_attr(tag, "target");
            auto weight = data_value(body, "weight");
            if (!weight)
                throw ParseError("graphml: edge without weight");
            if (!out.graph.nodes.count(source) || !out.graph.nodes.count(target))
                throw ParseError("graphml: edge endpoint not declared");
            auto pair = country_pair(source, target);
            if (!out.graph.edges.emplace(pair, parse_count(*weight, "weight")).second)
                throw ParseError("graphml: duplicate edge");
        }
    }
    if (any_cluster) {
        if (clusters.size() != out.graph.nodes.size())
            throw ParseError("graphml: cluster ids cover only part of the nodes");
        out.clusters = std::move(clusters);
    }
    return out;
}

ImportedGraph import_pajek(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            if (!current.empty() && current.back() == '\r')
                current.pop_back();
            lines.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty())
        lines.push_back(current);

    auto lower = [](std::string s) {
        for (char& c : s)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };

    ImportedGraph out;
    std::vector<std::string> code_of; // index 0 unused
    std::size_t ln = 0;
    auto next_content = [&]() -> std::optional<std::string> {
        while (ln < lines.size()) {
            const std::string& line = lines[ln];
            if (line.find_first_not_of(" \t") == std::string::npos) {
                ++ln;
                continue;
            }
            return line;
        }
        return std::nullopt;
    };

    auto header = next_content();
    if (!header || lower(*header).rfind("*vertices", 0) != 0)
        throw ParseError("pajek: expected *Vertices header");
    std::size_t count_at = header->find_first_of("0123456789");
    if (count_at == std::string::npos)
        throw ParseError("pajek: vertex count missing");
    std::int64_t n = parse_count(std::string_view(*header).substr(count_at), "vertex count");
    ++ln;
    code_of.resize(static_cast<std::size_t>(n) + 1);
    for (std::int64_t i = 0; i < n; ++i) {
        auto line = next_content();
        if (!line)
            throw ParseError("pajek: truncated vertex list");
        std::istringstream ss(*line);
        std::int64_t id = 0;
        ss >> id;
        if (!ss || id < 1 || id > n)
            throw ParseError("pajek: bad vertex id");
        auto quote = line->find('"');
        auto end_quote = quote == std::string::npos ? quote : line->find('"', quote + 1);
        if (quote == std::string::npos || end_quote == std::string::npos)
            throw ParseError("pajek: vertex label must be quoted");
        std::string code = line->substr(quote + 1, end_quote - quote - 1);
        if (!code_of[static_cast<std::size_t>(id)].empty())
            throw ParseError("pajek: duplicate vertex id");
        code_of[static_cast<std::size_t>(id)] = code;
        if (!out.graph.nodes.emplace(code, 0).second)
            throw ParseError("pajek: duplicate vertex label " + code);
        ++ln;
    }

    while (auto line = next_content()) {
        std::string low = lower(*line);
        if (low.rfind("*edges", 0) == 0) {
            ++ln;
            while (auto edge_line = next_content()) {
                if ((*edge_line)[edge_line->find_first_not_of(" \t")] == '*')
                    break;
                std::istringstream ss(*edge_line);
                std::int64_t a = 0, b = 0, w = 0;
                ss >> a >> b >> w;
                if (!ss || a < 1 || a > n || b < 1 || b > n || a == b)
                    throw ParseError("pajek: bad edge line");
                auto pair = country_pair(code_of[static_cast<std::size_t>(a)],
                                         code_of[static_cast<std::size_t>(b)]);
                if (!out.graph.edges.emplace(pair, w).second)
                    throw ParseError("pajek: duplicate edge");
                ++ln;
            }
        } else if (low.rfind("*partition", 0) == 0) {
            ++ln;
            std::map<std::string, int> clusters;
            for (std::int64_t i = 1; i <= n; ++i) {
                auto value_line = next_content();
                if (!value_line)
                    throw ParseError("pajek: truncated partition");
                std::int64_t v = parse_count(
                    std::string_view(*value_line)
                        .substr(value_line->find_first_not_of(" \t")),
                    "partition");
                clusters[code_of[static_cast<std::size_t>(i)]] = static_cast<int>(v - 1);
                ++ln;
            }
            out.clusters = std::move(clusters);
        } else if (low.rfind("*vector", 0) == 0) {
            ++ln;
            for (std::int64_t i = 1; i <= n; ++i) {
                auto value_line = next_content();
                if (!value_line)
                    throw ParseError("pajek: truncated vector");
                std::int64_t v = parse_count(
                    std::string_view(*value_line)
                        .substr(value_line->find_first_not_of(" \t")),
                    "vector");
                out.graph.nodes[code_of[static_cast<std::size_t>(i)]] = v;
                ++ln;
            }
        } else {
            throw ParseError("pajek: unknown section " + *line);
        }
    }
    return out;
}

} // namespace

std::string export_graph(const CollabGraph& graph,
                         const std::optional<Clustering>& clustering,
                         GraphFormat format) {
    return format == GraphFormat::graphml ? export_graphml(graph, clustering)
                                          : export_pajek(graph, clustering);
}

ImportedGraph import_graph(const std::string& text, GraphFormat format) {
    return format == GraphFormat::graphml ? import_graphml(text) : import_pajek(text);
}

std::string to_csv(const Table& table) {
    auto escape = [](const std::string& cell) {
        if (cell.find_first_of(",\"\n") == std::string::npos)
            return cell;
        std::string out = "\"";
        for (char c : cell) {
            if (c == '"')
                out += '"';
            out += c;
        }
        out += '"';
        return out;
    };
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i)
            out += ',';
        out += escape(table.columns[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            if (i)
                out += ',';
            if (i < row.size() && row[i])
                out += escape(*row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            if (i < row.size() && row[i])
                obj[table.columns[i]] = *row[i];
            else
                obj[table.columns[i]] = nullptr;
        }
        rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
}

Table partner_matrix(const CollabGraph& graph,
                     const std::vector<std::string>& countries,
                     const std::vector<std::string>& partners) {
    for (const auto& code : countries)
        if (!graph.nodes.count(code))
            throw std::invalid_argument("partner_matrix: unknown country " + code);
    for (const auto& code : partners)
        if (!graph.nodes.count(code))
            throw std::invalid_argument("partner_matrix: unknown partner " + code);

    Table table;
    table.columns.push_back("country");
    for (const auto& p : partners)
        table.columns.push_back(p);
    for (const auto& code : countries) {
        std::vector<std::optional<std::string>> row;
        row.emplace_back(code);
        for (const auto& p : partners) {
            if (p == code) {
                row.emplace_back(std::nullopt);
                continue;
            }
            auto it = graph.edges.find(country_pair(code, p));
            if (it == graph.edges.end())
                row.emplace_back(std::nullopt);
            else
                row.emplace_back(std::to_string(it->second));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table yearly_series(std::span<const PublicationRecord> records, const YearlySpec& spec) {
    std::set<std::string> known;
    for (const auto& rec : records)
        known.insert(rec.countries.begin(), rec.countries.end());
    auto check = [&](const std::string& code) {
        if (!known.count(code))
            throw std::invalid_argument("yearly_series: unknown country " + code);
    };
    check(spec.focal);
    for (const auto& p : spec.partners)
        check(p);
    for (const auto& group : spec.joint_groups)
        for (const auto& code : group)
            check(code);

    Table table;
    table.columns.push_back("year");
    table.columns.push_back(spec.focal + "_total");
    for (const auto& p : spec.partners) {
        table.columns.push_back(p + "_joint");
        table.columns.push_back(p + "_pct");
    }
    std::vector<std::string> group_names;
    for (const auto& group : spec.joint_groups) {
        std::string name;
        for (const auto& code : group)
            name += (name.empty() ? "" : "+") + code;
        group_names.push_back(name + "_joint");
        table.columns.push_back(group_names.back());
    }

    for (int year = spec.years.first; year <= spec.years.last; ++year) {
        std::int64_t total = 0;
        std::vector<std::int64_t> joint(spec.partners.size(), 0);
        std::vector<std::int64_t> group_joint(spec.joint_groups.size(), 0);
        for (const auto& rec : records) {
            if (rec.year != year || !rec.countries.count(spec.focal))
                continue;
            ++total;
            for (std::size_t i = 0; i < spec.partners.size(); ++i)
                if (rec.countries.count(spec.partners[i]))
                    ++joint[i];
            for (std::size_t i = 0; i < spec.joint_groups.size(); ++i) {
                bool all = true;
                for (const auto& code : spec.joint_groups[i])
                    if (!rec.countries.count(code)) {
                        all = false;
                        break;
                    }
                if (all)
                    ++group_joint[i];
            }
        }
        std::vector<std::optional<std::string>> row;
        row.emplace_back(std::to_string(year));
        row.emplace_back(std::to_string(total));
        for (std::size_t i = 0; i < spec.partners.size(); ++i) {
            row.emplace_back(std::to_string(joint[i]));
            if (total > 0)
                row.emplace_back(std::to_string(
                    round_half_away(Rational(100 * joint[i], total))));
            else
                row.emplace_back(std::nullopt);
        }
        for (std::size_t i = 0; i < spec.joint_groups.size(); ++i)
            row.emplace_back(std::to_string(group_joint[i]));
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace collabmap
