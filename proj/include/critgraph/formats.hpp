#ifndef CRITGRAPH_FORMATS_HPP
#define CRITGRAPH_FORMATS_HPP

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "critgraph/graph.hpp"

namespace critgraph {

// graph6 and DIMACS are interchange formats for downstream solvers; they
// drop roles and tags.  The JSON format round-trips the full graph.
enum class GraphFormat { Graph6, DimacsCol, EdgeList, JsonRoles };

inline const char* format_name(GraphFormat f)
{
    switch (f) {
    case GraphFormat::Graph6: return "graph6";
    case GraphFormat::DimacsCol: return "dimacs";
    case GraphFormat::EdgeList: return "edges";
    case GraphFormat::JsonRoles: return "json";
    }
    return "?";
}

inline GraphFormat format_from_name(const std::string& s)
{
    if (s == "graph6" || s == "g6") return GraphFormat::Graph6;
    if (s == "dimacs" || s == "col") return GraphFormat::DimacsCol;
    if (s == "edges" || s == "edgelist") return GraphFormat::EdgeList;
    if (s == "json") return GraphFormat::JsonRoles;
    throw std::invalid_argument("unknown graph format: " + s);
}

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : std::runtime_error("parse error at byte " + std::to_string(offset) + ": " + what)
        , offset_(offset)
    {
    }
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

namespace detail {

inline void g6_append_number(std::string& out, long long n)
{
    if (n < 0) throw std::invalid_argument("graph6: negative order");
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back(126);
        for (int shift = 12; shift >= 0; shift -= 6)
            out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    } else if (n <= 68719476735LL) {
        out.push_back(126);
        out.push_back(126);
        for (int shift = 30; shift >= 0; shift -= 6)
            out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    } else {
        throw std::invalid_argument("graph6: order too large");
    }
}

inline long long g6_read_number(std::string_view s, std::size_t& pos)
{
    auto need = [&](std::size_t count) {
        if (pos + count > s.size()) throw ParseError(s.size(), "graph6 data truncated");
    };
    auto byte = [&](std::size_t at) -> long long {
        unsigned char c = static_cast<unsigned char>(s[at]);
        if (c < 63 || c > 126) throw ParseError(at, "graph6 byte out of range");
        return c - 63;
    };
    need(1);
    if (byte(pos) != 63) return byte(pos++);
    ++pos;
    need(1);
    int groups = 3;
    if (byte(pos) == 63) {
        ++pos;
        groups = 6;
    }
    need(static_cast<std::size_t>(groups));
    long long n = 0;
    for (int i = 0; i < groups; ++i) n = (n << 6) | byte(pos++);
    return n;
}

} // namespace detail

inline std::string export_graph6(const Graph& g)
{
    std::string out;
    detail::g6_append_number(out, g.vertex_count());
    const int n = g.vertex_count();
    int bits = 0, acc = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++bits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                bits = 0;
                acc = 0;
            }
        }
    if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
    return out;
}

inline Graph parse_graph6(std::string_view s)
{
    // Tolerate one trailing newline, as emitted by geng and friends.
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
    if (!s.empty() && s.substr(0, 10) == ">>graph6<<") s.remove_prefix(10);
    std::size_t pos = 0;
    long long n = detail::g6_read_number(s, pos);
    if (n > 1000000) throw ParseError(0, "graph6 order implausibly large");
    Graph g(static_cast<int>(n));
    const long long pairs = n * (n - 1) / 2;
    const std::size_t bytes = static_cast<std::size_t>((pairs + 5) / 6);
    if (s.size() - pos < bytes) throw ParseError(s.size(), "graph6 data truncated");
    if (s.size() - pos > bytes) throw ParseError(pos + bytes, "graph6 trailing data");
    long long bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit) {
            std::size_t at = pos + static_cast<std::size_t>(bit / 6);
            unsigned char c = static_cast<unsigned char>(s[at]);
            if (c < 63 || c > 126) throw ParseError(at, "graph6 byte out of range");
            if ((c - 63) & (1 << (5 - bit % 6))) g.add_edge(i, j);
        }
    return g;
}

inline std::string export_dimacs(const Graph& g)
{
    std::ostringstream out;
    out << "p edge " << g.vertex_count() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) out << "e " << (u + 1) << " " << (v + 1) << "\n";
    return out.str();
}

namespace detail {

struct LineScanner {
    std::string_view text;
    std::size_t pos = 0;

    bool next(std::string_view& line, std::size_t& line_start)
    {
        if (pos >= text.size()) return false;
        line_start = pos;
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = end + 1;
        return true;
    }
};

} // namespace detail

inline Graph parse_dimacs(std::string_view s)
{
    detail::LineScanner scan{s};
    std::string_view line;
    std::size_t at = 0;
    bool have_header = false;
    long long n = 0, m = 0, seen = 0;
    Graph g;
    while (scan.next(line, at)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ss{std::string(line)};
        if (!have_header) {
            std::string p, kind;
            if (!(ss >> p >> kind >> n >> m) || p != "p" || kind != "edge" || n < 0 || m < 0)
                throw ParseError(at, "expected DIMACS header 'p edge n m'");
            g = Graph(static_cast<int>(n));
            have_header = true;
            continue;
        }
        char e = 0;
        long long u = 0, v = 0;
        if (!(ss >> e >> u >> v) || e != 'e')
            throw ParseError(at, "expected edge line 'e u v'");
        if (u < 1 || u > n || v < 1 || v > n)
            throw ParseError(at, "edge endpoint out of range");
        g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
        ++seen;
    }
    if (!have_header) throw ParseError(s.size(), "missing DIMACS header");
    if (seen != m) throw ParseError(s.size(), "edge count does not match header");
    return g;
}

inline std::string export_edge_list(const Graph& g)
{
    std::ostringstream out;
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

// Vertex count is inferred as (max id + 1); trailing isolated vertices do
// not survive this format.
inline Graph parse_edge_list(std::string_view s)
{
    detail::LineScanner scan{s};
    std::string_view line;
    std::size_t at = 0;
    std::vector<std::pair<long long, long long>> pairs;
    long long maxid = -1;
    while (scan.next(line, at)) {
        if (line.empty()) continue;
        std::istringstream ss{std::string(line)};
        long long u = 0, v = 0;
        if (!(ss >> u >> v) || u < 0 || v < 0)
            throw ParseError(at, "expected '0-based-u 0-based-v'");
        std::string rest;
        if (ss >> rest) throw ParseError(at, "trailing tokens on edge line");
        pairs.emplace_back(u, v);
        maxid = std::max({maxid, u, v});
    }
    Graph g(static_cast<int>(maxid + 1));
    for (auto [u, v] : pairs) g.add_edge(static_cast<int>(u), static_cast<int>(v));
    return g;
}

inline std::string export_json(const Graph& g)
{
    nlohmann::ordered_json j;
    j["n"] = g.vertex_count();
    auto edges = nlohmann::ordered_json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    auto roles = nlohmann::ordered_json::array();
    auto tags = nlohmann::ordered_json::array();
    for (int v = 0; v < g.vertex_count(); ++v) {
        roles.push_back(role_to_string(g.role(v)));
        tags.push_back(g.tag(v));
    }
    j["roles"] = std::move(roles);
    j["tags"] = std::move(tags);
    return j.dump(2) + "\n";
}

inline Graph parse_json_graph(std::string_view s)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.byte, e.what());
    }
    try {
        Graph g(j.at("n").get<int>());
        for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
        if (j.contains("roles")) {
            const auto& roles = j.at("roles");
            for (int v = 0; v < g.vertex_count(); ++v)
                g.set_role(v, role_from_string(roles.at(static_cast<std::size_t>(v)).get<std::string>()));
        }
        if (j.contains("tags")) {
            const auto& tags = j.at("tags");
            for (int v = 0; v < g.vertex_count(); ++v)
                g.set_tag(v, tags.at(static_cast<std::size_t>(v)).get<std::string>());
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, e.what());
    }
}

inline std::string export_graph(const Graph& g, GraphFormat f)
{
    switch (f) {
    case GraphFormat::Graph6: return export_graph6(g) + "\n";
    case GraphFormat::DimacsCol: return export_dimacs(g);
    case GraphFormat::EdgeList: return export_edge_list(g);
    case GraphFormat::JsonRoles: return export_json(g);
    }
    throw std::invalid_argument("bad format");
}

inline Graph parse_graph(std::string_view bytes, GraphFormat f)
{
    switch (f) {
    case GraphFormat::Graph6: return parse_graph6(bytes);
    case GraphFormat::DimacsCol: return parse_dimacs(bytes);
    case GraphFormat::EdgeList: return parse_edge_list(bytes);
    case GraphFormat::JsonRoles: return parse_json_graph(bytes);
    }
    throw std::invalid_argument("bad format");
}

} // namespace critgraph

#endif
