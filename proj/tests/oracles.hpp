#ifndef CRITGRAPH_TEST_ORACLES_HPP
#define CRITGRAPH_TEST_ORACLES_HPP

// Independent reference implementations used only by tests.  These must not
// share code paths with the library: the odd-girth oracle enumerates simple
// cycles directly, the chromatic oracle enumerates assignments.

#include <optional>
#include <random>

#include "critgraph/graph.hpp"

namespace oracles {

namespace detail {

// Is there a simple path of `edges_left` further edges from `v` back to
// `target`, using only vertices > target?
inline bool path_to_target(const critgraph::Graph& g, int v, int target, int edges_left,
    std::vector<char>& used)
{
    if (edges_left == 1) return g.has_edge(v, target);
    for (int w : g.neighbors(v)) {
        if (w <= target || used[static_cast<std::size_t>(w)]) continue;
        used[static_cast<std::size_t>(w)] = 1;
        bool found = path_to_target(g, w, target, edges_left - 1, used);
        used[static_cast<std::size_t>(w)] = 0;
        if (found) return true;
    }
    return false;
}

} // namespace detail

// Brute-force enumeration of simple odd cycles in increasing length order;
// each cycle is rooted at its smallest vertex.
inline std::optional<int> brute_odd_girth(const critgraph::Graph& g, int max_len = -1)
{
    const int n = g.vertex_count();
    if (max_len < 0) max_len = n;
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (int len = 3; len <= max_len; len += 2) {
        for (int v = 0; v < n; ++v) {
            used[static_cast<std::size_t>(v)] = 1;
            bool found = detail::path_to_target(g, v, v, len, used);
            used[static_cast<std::size_t>(v)] = 0;
            if (found) return len;
        }
    }
    return std::nullopt;
}

namespace detail {

inline bool assignments_exist(const critgraph::Graph& g, int k, int next, std::vector<int>& color)
{
    if (next == g.vertex_count()) return true;
    for (int c = 1; c <= k; ++c) {
        bool ok = true;
        for (int w : g.neighbors(next))
            if (w < next && color[static_cast<std::size_t>(w)] == c) {
                ok = false;
                break;
            }
        if (!ok) continue;
        color[static_cast<std::size_t>(next)] = c;
        if (assignments_exist(g, k, next + 1, color)) return true;
    }
    color[static_cast<std::size_t>(next)] = 0;
    return false;
}

} // namespace detail

// Exhaustive enumeration over k^n assignments (pruned only by properness of
// the prefix), k = 1, 2, ... in vertex-id order.
inline int brute_chromatic_number(const critgraph::Graph& g)
{
    if (g.vertex_count() == 0) return 0;
    std::vector<int> color(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int k = 1;; ++k)
        if (detail::assignments_exist(g, k, 0, color)) return k;
}

// Minimum number of distinct colors on `subset` over all proper k-colorings,
// by direct enumeration.
inline std::optional<int> brute_min_colors_on_subset(
    const critgraph::Graph& g, int k, const std::vector<int>& subset)
{
    const int n = g.vertex_count();
    std::vector<int> color(static_cast<std::size_t>(n), 0);
    int best = k + 1;
    std::vector<char> in_subset(static_cast<std::size_t>(n), 0);
    for (int v : subset) in_subset[static_cast<std::size_t>(v)] = 1;

    struct Walker {
        const critgraph::Graph& g;
        int k;
        const std::vector<char>& in_subset;
        std::vector<int>& color;
        int& best;
        void walk(int next)
        {
            if (next == g.vertex_count()) {
                std::vector<char> seen(static_cast<std::size_t>(k) + 1, 0);
                int distinct = 0;
                for (int v = 0; v < g.vertex_count(); ++v)
                    if (in_subset[static_cast<std::size_t>(v)]
                        && !seen[static_cast<std::size_t>(color[static_cast<std::size_t>(v)])]) {
                        seen[static_cast<std::size_t>(color[static_cast<std::size_t>(v)])] = 1;
                        ++distinct;
                    }
                best = std::min(best, distinct);
                return;
            }
            for (int c = 1; c <= k; ++c) {
                bool ok = true;
                for (int w : g.neighbors(next))
                    if (w < next && color[static_cast<std::size_t>(w)] == c) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                color[static_cast<std::size_t>(next)] = c;
                walk(next + 1);
            }
            color[static_cast<std::size_t>(next)] = 0;
        }
    } walker{g, k, in_subset, color, best};
    walker.walk(0);
    if (best > k) return std::nullopt;
    return best;
}

// A second graph6 encoder, written against the format description rather
// than the library implementation.
inline std::string independent_graph6(const critgraph::Graph& g)
{
    const long long n = g.vertex_count();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(63 + n));
    } else {
        out.push_back('~');
        out.push_back(static_cast<char>(63 + ((n >> 12) & 63)));
        out.push_back(static_cast<char>(63 + ((n >> 6) & 63)));
        out.push_back(static_cast<char>(63 + (n & 63)));
    }
    std::vector<int> bits;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) bits.push_back(g.has_edge(i, j) ? 1 : 0);
    while (bits.size() % 6 != 0) bits.push_back(0);
    for (std::size_t at = 0; at < bits.size(); at += 6) {
        int value = 0;
        for (int b = 0; b < 6; ++b) value = value * 2 + bits[at + static_cast<std::size_t>(b)];
        out.push_back(static_cast<char>(63 + value));
    }
    return out;
}

inline critgraph::Graph random_graph(std::mt19937_64& rng, int n, double p)
{
    critgraph::Graph g(n);
    std::bernoulli_distribution flip(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (flip(rng)) g.add_edge(u, v);
    return g;
}

} // namespace oracles

#endif
