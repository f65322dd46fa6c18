#ifndef CRITGRAPH_GRAPH_HPP
#define CRITGRAPH_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace critgraph {

using Rat = boost::rational<long long>;

// Vertex roles.  A vertex has exactly one role; `layer` is meaningful only
// for Structural (layer index >= 1).
enum class RoleKind : std::uint8_t { Plain, Active, Structural, Forward, Base, Apex };

struct Role {
    RoleKind kind = RoleKind::Plain;
    int layer = 0;

    static Role plain() { return {RoleKind::Plain, 0}; }
    static Role active() { return {RoleKind::Active, 0}; }
    static Role structural(int layer) { return {RoleKind::Structural, layer}; }
    static Role forward() { return {RoleKind::Forward, 0}; }
    static Role base() { return {RoleKind::Base, 0}; }
    static Role apex() { return {RoleKind::Apex, 0}; }

    friend bool operator==(const Role& a, const Role& b)
    {
        return a.kind == b.kind && (a.kind != RoleKind::Structural || a.layer == b.layer);
    }
    friend bool operator!=(const Role& a, const Role& b) { return !(a == b); }
};

inline std::string role_to_string(const Role& r)
{
    switch (r.kind) {
    case RoleKind::Plain: return "plain";
    case RoleKind::Active: return "active";
    case RoleKind::Structural: return "structural:" + std::to_string(r.layer);
    case RoleKind::Forward: return "forward";
    case RoleKind::Base: return "base";
    case RoleKind::Apex: return "apex";
    }
    return "plain";
}

inline Role role_from_string(const std::string& s)
{
    if (s == "plain") return Role::plain();
    if (s == "active") return Role::active();
    if (s == "forward") return Role::forward();
    if (s == "base") return Role::base();
    if (s == "apex") return Role::apex();
    if (s.rfind("structural:", 0) == 0) {
        int layer = std::stoi(s.substr(11));
        if (layer < 1) throw std::invalid_argument("structural layer must be >= 1");
        return Role::structural(layer);
    }
    throw std::invalid_argument("unknown role: " + s);
}

// Undirected simple graph over dense vertex ids 0..n-1 with sorted neighbor
// lists, per-vertex roles and optional provenance tags.  Immutable by
// convention once a construction finishes; queries are read-only.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n)
    {
        if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
        n_ = n;
        adj_.resize(static_cast<std::size_t>(n));
        roles_.assign(static_cast<std::size_t>(n), Role::plain());
        tags_.assign(static_cast<std::size_t>(n), std::string());
    }

    int vertex_count() const { return n_; }
    long long edge_count() const { return edges_; }

    void check_vertex(int v) const
    {
        if (v < 0 || v >= n_)
            throw std::invalid_argument("vertex id " + std::to_string(v) + " out of range [0,"
                + std::to_string(n_) + ")");
    }

    // Inserts the edge if absent; idempotent.  Self-loops and out-of-range
    // ids are rejected.
    bool add_edge(int u, int v)
    {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("self-loop rejected at vertex " + std::to_string(u));
        if (!insert_arc(u, v)) return false;
        insert_arc(v, u);
        ++edges_;
        return true;
    }

    bool has_edge(int u, int v) const
    {
        check_vertex(u);
        check_vertex(v);
        const auto& a = adj_[static_cast<std::size_t>(u)];
        return std::binary_search(a.begin(), a.end(), v);
    }

    std::span<const int> neighbors(int v) const
    {
        check_vertex(v);
        return adj_[static_cast<std::size_t>(v)];
    }

    int degree(int v) const
    {
        check_vertex(v);
        return static_cast<int>(adj_[static_cast<std::size_t>(v)].size());
    }

    Role role(int v) const
    {
        check_vertex(v);
        return roles_[static_cast<std::size_t>(v)];
    }

    void set_role(int v, Role r)
    {
        check_vertex(v);
        if (r.kind == RoleKind::Structural && r.layer < 1)
            throw std::invalid_argument("structural layer must be >= 1");
        roles_[static_cast<std::size_t>(v)] = r;
    }

    const std::string& tag(int v) const
    {
        check_vertex(v);
        return tags_[static_cast<std::size_t>(v)];
    }

    void set_tag(int v, std::string t)
    {
        check_vertex(v);
        tags_[static_cast<std::size_t>(v)] = std::move(t);
    }

    std::vector<std::pair<int, int>> edges() const
    {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(edges_));
        for (int u = 0; u < n_; ++u)
            for (int v : adj_[static_cast<std::size_t>(u)])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    std::vector<int> vertices_with_role(RoleKind kind) const
    {
        std::vector<int> out;
        for (int v = 0; v < n_; ++v)
            if (roles_[static_cast<std::size_t>(v)].kind == kind) out.push_back(v);
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b)
    {
        return a.n_ == b.n_ && a.adj_ == b.adj_ && a.roles_ == b.roles_ && a.tags_ == b.tags_;
    }

private:
    bool insert_arc(int u, int v)
    {
        auto& a = adj_[static_cast<std::size_t>(u)];
        auto it = std::lower_bound(a.begin(), a.end(), v);
        if (it != a.end() && *it == v) return false;
        a.insert(it, v);
        return true;
    }

    int n_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<Role> roles_;
    std::vector<std::string> tags_;
    long long edges_ = 0;
};

inline Graph new_graph(int n) { return Graph(n); }

// Length of a shortest odd cycle; disengaged for bipartite graphs.
struct OddGirth {
    std::optional<int> value;

    bool infinite() const { return !value.has_value(); }
    friend bool operator==(const OddGirth& a, const OddGirth& b) { return a.value == b.value; }
};

namespace detail {

// Shortest odd closed walk through `root`, found as the (root,even) ->
// (root,odd) distance in the bipartite double cover.  Walks longer than
// `cap` are not explored.
inline int odd_walk_through(const Graph& g, int root, int cap)
{
    const int n = g.vertex_count();
    // dist[v * 2 + parity]
    std::vector<int> dist(static_cast<std::size_t>(n) * 2, -1);
    std::deque<int> queue;
    dist[static_cast<std::size_t>(root) * 2] = 0;
    queue.push_back(root * 2);
    while (!queue.empty()) {
        int state = queue.front();
        queue.pop_front();
        int v = state / 2, parity = state % 2;
        int d = dist[static_cast<std::size_t>(state)];
        if (d >= cap) continue;
        for (int w : g.neighbors(v)) {
            int next = w * 2 + (1 - parity);
            if (dist[static_cast<std::size_t>(next)] < 0) {
                dist[static_cast<std::size_t>(next)] = d + 1;
                if (w == root && parity == 0) return d + 1;
                queue.push_back(next);
            }
        }
    }
    int found = dist[static_cast<std::size_t>(root) * 2 + 1];
    return found < 0 ? std::numeric_limits<int>::max() : found;
}

} // namespace detail

inline OddGirth odd_girth(const Graph& g)
{
    int best = std::numeric_limits<int>::max();
    for (int v = 0; v < g.vertex_count(); ++v) {
        int cap = best == std::numeric_limits<int>::max() ? g.vertex_count() : best - 1;
        best = std::min(best, detail::odd_walk_through(g, v, cap));
        if (best == 3) break;
    }
    if (best == std::numeric_limits<int>::max()) return {};
    return {best};
}

// True iff the graph contains an odd cycle of length <= bound.  bound = 3 is
// triangle detection and uses bitset row intersection so it stays cheap on
// instances with millions of edges.
inline bool has_odd_cycle_at_most(const Graph& g, int bound)
{
    if (bound < 3 || bound % 2 == 0) throw std::invalid_argument("bound must be odd and >= 3");
    const int n = g.vertex_count();
    if (bound == 3) {
        const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
        std::vector<std::uint64_t> rows(words * static_cast<std::size_t>(n), 0);
        for (int u = 0; u < n; ++u)
            for (int v : g.neighbors(u))
                rows[static_cast<std::size_t>(u) * words + static_cast<std::size_t>(v) / 64]
                    |= std::uint64_t{1} << (v % 64);
        for (int u = 0; u < n; ++u)
            for (int v : g.neighbors(u)) {
                if (v >= u) break;
                const std::uint64_t* ru = rows.data() + static_cast<std::size_t>(u) * words;
                const std::uint64_t* rv = rows.data() + static_cast<std::size_t>(v) * words;
                for (std::size_t w = 0; w < words; ++w)
                    if (ru[w] & rv[w]) return true;
            }
        return false;
    }
    for (int v = 0; v < n; ++v)
        if (detail::odd_walk_through(g, v, bound) <= bound) return true;
    return false;
}

struct DensityStats {
    long long vertices = 0;
    long long edges = 0;
    Rat ratio;
    double ratio_float = 0.0;
};

inline DensityStats density_stats(const Graph& g)
{
    if (g.vertex_count() < 1) throw std::invalid_argument("density_stats requires n >= 1");
    DensityStats s;
    s.vertices = g.vertex_count();
    s.edges = g.edge_count();
    s.ratio = Rat(s.edges, s.vertices * s.vertices);
    s.ratio_float = static_cast<double>(s.edges) / (static_cast<double>(s.vertices) * static_cast<double>(s.vertices));
    return s;
}

struct UnionResult {
    Graph graph;
    std::vector<int> offsets; // offsets[i] = id shift applied to gs[i]
};

inline UnionResult disjoint_union(std::span<const Graph> gs)
{
    long long total = 0;
    for (const Graph& g : gs) total += g.vertex_count();
    UnionResult out;
    out.graph = Graph(static_cast<int>(total));
    int offset = 0;
    for (const Graph& g : gs) {
        out.offsets.push_back(offset);
        for (int v = 0; v < g.vertex_count(); ++v) {
            out.graph.set_role(offset + v, g.role(v));
            out.graph.set_tag(offset + v, g.tag(v));
            for (int w : g.neighbors(v))
                if (v < w) out.graph.add_edge(offset + v, offset + w);
        }
        offset += g.vertex_count();
    }
    return out;
}

inline bool is_independent_set(const Graph& g, std::span<const int> vs)
{
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (g.has_edge(vs[i], vs[j])) return false;
    return true;
}

// No vertex may see both sides before a complete-bipartite join; together
// with independence of A and B this is what keeps the join triangle-free.
inline bool join_preserves_triangle_freeness(const Graph& g, std::span<const int> a, std::span<const int> b)
{
    std::vector<char> in_a(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<char> in_b(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : a) in_a[static_cast<std::size_t>(v)] = 1;
    for (int v : b) in_b[static_cast<std::size_t>(v)] = 1;
    for (int v = 0; v < g.vertex_count(); ++v) {
        bool sees_a = false, sees_b = false;
        for (int w : g.neighbors(v)) {
            sees_a = sees_a || in_a[static_cast<std::size_t>(w)];
            sees_b = sees_b || in_b[static_cast<std::size_t>(w)];
        }
        if (sees_a && sees_b) return false;
    }
    return true;
}

inline void join_complete_bipartite(Graph& g, std::span<const int> a, std::span<const int> b)
{
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : a) {
        g.check_vertex(v);
        seen[static_cast<std::size_t>(v)] = 1;
    }
    for (int v : b) {
        g.check_vertex(v);
        if (seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("join_complete_bipartite: sets overlap at vertex " + std::to_string(v));
    }
    if (!is_independent_set(g, a) || !is_independent_set(g, b))
        throw std::invalid_argument("join_complete_bipartite: side is not an independent set");
    for (int u : a)
        for (int v : b) g.add_edge(u, v);
}

inline void join_matching(Graph& g, std::span<const int> a, std::span<const int> b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("join_matching: length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) throw std::invalid_argument("join_matching: sides share a vertex");
        g.add_edge(a[i], b[i]);
    }
}

inline Graph remove_edge_copy(const Graph& g, int u, int v)
{
    if (!g.has_edge(u, v)) throw std::invalid_argument("remove_edge_copy: edge absent");
    Graph out(g.vertex_count());
    for (int x = 0; x < g.vertex_count(); ++x) {
        out.set_role(x, g.role(x));
        out.set_tag(x, g.tag(x));
        for (int y : g.neighbors(x)) {
            if (x >= y) continue;
            if ((x == u && y == v) || (x == v && y == u)) continue;
            out.add_edge(x, y);
        }
    }
    return out;
}

struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_original; // new id -> old id
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> vs)
{
    InducedSubgraph out;
    out.graph = Graph(static_cast<int>(vs.size()));
    out.to_original.assign(vs.begin(), vs.end());
    std::vector<int> back(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        g.check_vertex(vs[i]);
        back[static_cast<std::size_t>(vs[i])] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
        out.graph.set_role(static_cast<int>(i), g.role(vs[i]));
        out.graph.set_tag(static_cast<int>(i), g.tag(vs[i]));
        for (int w : g.neighbors(vs[i])) {
            int j = back[static_cast<std::size_t>(w)];
            if (j >= 0 && static_cast<int>(i) < j) out.graph.add_edge(static_cast<int>(i), j);
        }
    }
    return out;
}

} // namespace critgraph

#endif
