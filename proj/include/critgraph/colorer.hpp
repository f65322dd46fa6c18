#ifndef CRITGRAPH_COLORER_HPP
#define CRITGRAPH_COLORER_HPP

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "critgraph/graph.hpp"

namespace critgraph {

// Palette restrictions on vertex subsets plus per-vertex forced colors.
// Colors are 1-based, drawn from {1..k}.
struct ColorConstraint {
    int k = 0;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> subset_palettes;
    std::vector<std::pair<int, int>> forced_colors;

    static ColorConstraint palette(int k) { return ColorConstraint{k, {}, {}}; }

    ColorConstraint& restrict(std::vector<int> vertices, std::vector<int> colors)
    {
        subset_palettes.emplace_back(std::move(vertices), std::move(colors));
        return *this;
    }

    ColorConstraint& force(int vertex, int color)
    {
        forced_colors.emplace_back(vertex, color);
        return *this;
    }

    void validate(const Graph& g) const
    {
        if (k < 1 || k > 62) throw std::invalid_argument("palette size must be in [1,62]");
        for (const auto& [vs, cs] : subset_palettes) {
            for (int v : vs) g.check_vertex(v);
            for (int c : cs)
                if (c < 1 || c > k) throw std::invalid_argument("palette color out of range");
        }
        for (auto [v, c] : forced_colors) {
            g.check_vertex(v);
            if (c < 1 || c > k) throw std::invalid_argument("forced color out of range");
        }
    }
};

struct ColoringWitness {
    int k = 0;
    std::vector<int> assignment; // vertex -> color in 1..k
};

inline bool verify_witness(const Graph& g, const ColoringWitness& w, const ColorConstraint& c)
{
    if (w.assignment.size() != static_cast<std::size_t>(g.vertex_count())) return false;
    if (w.k != c.k) return false;
    for (int v = 0; v < g.vertex_count(); ++v) {
        int col = w.assignment[static_cast<std::size_t>(v)];
        if (col < 1 || col > w.k) return false;
        for (int u : g.neighbors(v))
            if (u > v && w.assignment[static_cast<std::size_t>(u)] == col) return false;
    }
    for (const auto& [vs, cs] : c.subset_palettes)
        for (int v : vs)
            if (std::find(cs.begin(), cs.end(), w.assignment[static_cast<std::size_t>(v)]) == cs.end())
                return false;
    for (auto [v, col] : c.forced_colors)
        if (w.assignment[static_cast<std::size_t>(v)] != col) return false;
    return true;
}

struct Budget {
    std::uint64_t max_nodes = 10'000'000;
    double max_seconds = 60.0;
};

enum class Outcome { Yes, No, Unknown };

struct DecideResult {
    Outcome outcome = Outcome::Unknown;
    std::optional<ColoringWitness> witness;
    std::uint64_t nodes = 0;
};

namespace detail {

// Saturation-ordered branch and bound on one connected component.
// Color symmetry is broken per equivalence class of interchangeable colors:
// an unused color may be branched on only if it is the smallest unused
// member of its class.  All tie-breaks fall back to lowest vertex id.
class ComponentSearch {
public:
    ComponentSearch(const std::vector<std::vector<int>>& adj, int k,
        const std::vector<std::uint64_t>& initial_allowed, const std::vector<int>& color_class)
        : adj_(adj)
        , k_(k)
        , allowed_(initial_allowed)
        , class_of_(color_class)
        , color_(adj.size(), 0)
        , used_(static_cast<std::size_t>(k) + 1, 0)
        , degree_(adj.size())
    {
        for (std::size_t v = 0; v < adj.size(); ++v) degree_[v] = static_cast<int>(adj[v].size());
    }

    // Returns Yes/No/Unknown; on Yes, color() holds a proper assignment.
    Outcome run(std::uint64_t node_budget, std::chrono::steady_clock::time_point deadline,
        std::uint64_t& nodes_used)
    {
        node_budget_ = node_budget;
        deadline_ = deadline;
        nodes_ = 0;
        aborted_ = false;
        Outcome out = search(static_cast<int>(adj_.size()));
        nodes_used = nodes_;
        return out;
    }

    const std::vector<int>& color() const { return color_; }

private:
    Outcome search(int uncolored)
    {
        if (uncolored == 0) return Outcome::Yes;

        // Most-saturated vertex first: fewest allowed colors, then highest
        // degree, then lowest id.
        int best = -1;
        int best_pop = 65, best_deg = -1;
        for (std::size_t v = 0; v < adj_.size(); ++v) {
            if (color_[v] != 0) continue;
            int pop = std::popcount(allowed_[v]);
            if (pop == 0) return Outcome::No;
            if (pop < best_pop || (pop == best_pop && degree_[v] > best_deg)) {
                best = static_cast<int>(v);
                best_pop = pop;
                best_deg = degree_[v];
            }
        }

        std::uint64_t candidates = candidate_mask(allowed_[static_cast<std::size_t>(best)]);
        while (candidates) {
            int c = std::countr_zero(candidates) + 1;
            candidates &= candidates - 1;

            ++nodes_;
            if (nodes_ >= node_budget_ || (nodes_ % 4096 == 0 && std::chrono::steady_clock::now() > deadline_)) {
                aborted_ = true;
                return Outcome::Unknown;
            }

            std::size_t trail_mark = trail_.size();
            assign(best, c);
            Outcome sub = search(uncolored - 1);
            if (sub == Outcome::Yes) return Outcome::Yes;
            undo(best, c, trail_mark);
            if (sub == Outcome::Unknown) return Outcome::Unknown;
        }
        return aborted_ ? Outcome::Unknown : Outcome::No;
    }

    // Drop unused colors that are not the smallest unused of their class.
    std::uint64_t candidate_mask(std::uint64_t allowed) const
    {
        std::uint64_t keep = 0;
        std::uint64_t m = allowed;
        while (m) {
            int c = std::countr_zero(m) + 1;
            m &= m - 1;
            if (used_[static_cast<std::size_t>(c)] > 0) {
                keep |= std::uint64_t{1} << (c - 1);
                continue;
            }
            bool smallest_unused = true;
            for (int d = 1; d < c; ++d)
                if (class_of_[static_cast<std::size_t>(d)] == class_of_[static_cast<std::size_t>(c)]
                    && used_[static_cast<std::size_t>(d)] == 0) {
                    smallest_unused = false;
                    break;
                }
            if (smallest_unused) keep |= std::uint64_t{1} << (c - 1);
        }
        return keep;
    }

    void assign(int v, int c)
    {
        color_[static_cast<std::size_t>(v)] = c;
        ++used_[static_cast<std::size_t>(c)];
        const std::uint64_t bit = std::uint64_t{1} << (c - 1);
        for (int u : adj_[static_cast<std::size_t>(v)]) {
            if (color_[static_cast<std::size_t>(u)] == 0 && (allowed_[static_cast<std::size_t>(u)] & bit)) {
                allowed_[static_cast<std::size_t>(u)] &= ~bit;
                trail_.push_back(u);
            }
        }
    }

    void undo(int v, int c, std::size_t trail_mark)
    {
        const std::uint64_t bit = std::uint64_t{1} << (c - 1);
        while (trail_.size() > trail_mark) {
            allowed_[static_cast<std::size_t>(trail_.back())] |= bit;
            trail_.pop_back();
        }
        --used_[static_cast<std::size_t>(c)];
        color_[static_cast<std::size_t>(v)] = 0;
    }

    const std::vector<std::vector<int>>& adj_;
    int k_;
    std::vector<std::uint64_t> allowed_;
    const std::vector<int>& class_of_; // 1-based color -> class id
    std::vector<int> color_;
    std::vector<int> used_;
    std::vector<int> degree_;
    std::vector<int> trail_;
    std::uint64_t node_budget_ = 0;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    std::chrono::steady_clock::time_point deadline_;
};

// Colors a and b are interchangeable on a vertex set iff every allowed mask
// contains both or neither.
inline std::vector<int> classes_from_masks(
    int k, const std::vector<std::uint64_t>& masks, const std::vector<int>& verts)
{
    std::vector<int> classes(static_cast<std::size_t>(k) + 1, 0);
    int next_class = 0;
    for (int a = 1; a <= k; ++a) {
        if (classes[static_cast<std::size_t>(a)] != 0) continue;
        ++next_class;
        classes[static_cast<std::size_t>(a)] = next_class;
        for (int b = a + 1; b <= k; ++b) {
            if (classes[static_cast<std::size_t>(b)] != 0) continue;
            bool same = true;
            for (int v : verts) {
                std::uint64_t m = masks[static_cast<std::size_t>(v)];
                if (((m >> (a - 1)) & 1) != ((m >> (b - 1)) & 1)) {
                    same = false;
                    break;
                }
            }
            if (same) classes[static_cast<std::size_t>(b)] = next_class;
        }
    }
    return classes;
}

// Complete-bipartite cut between two independent sets: removing the A x B
// edges separates side X (containing A) from side Y (containing B).  These
// cuts are the seams along which the dense critical constructions are
// pasted; a proper coloring exists iff the palette can be split disjointly
// across the cut.
struct JoinSplit {
    std::vector<int> a, b;
    std::vector<int> x, y;
};

// The recursive exact decision engine: connected components, complete-join
// splitting with palette caps, and saturation-ordered branch and bound at
// the leaves.
class RecursiveDecider {
public:
    RecursiveDecider(const Graph& g, int k, std::vector<std::uint64_t> masks, const Budget& budget)
        : g_(g)
        , k_(k)
        , masks_(std::move(masks))
        , assign_(static_cast<std::size_t>(g.vertex_count()), 0)
        , nodes_left_(budget.max_nodes)
        , deadline_(std::chrono::steady_clock::now()
              + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                  std::chrono::duration<double>(budget.max_seconds)))
    {
    }

    Outcome run()
    {
        std::vector<int> all(static_cast<std::size_t>(g_.vertex_count()));
        for (int v = 0; v < g_.vertex_count(); ++v) all[static_cast<std::size_t>(v)] = v;
        return solve(all);
    }

    const std::vector<int>& assignment() const { return assign_; }
    std::uint64_t nodes_used() const { return nodes_; }

private:
    Outcome solve(const std::vector<int>& verts)
    {
        if (verts.empty()) return Outcome::Yes;
        for (int v : verts)
            if (masks_[static_cast<std::size_t>(v)] == 0) return Outcome::No;

        std::vector<std::vector<int>> comps = components_of(verts);
        std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
        });
        for (const auto& comp : comps) {
            Outcome out = solve_component(comp);
            if (out != Outcome::Yes) return out;
        }
        return Outcome::Yes;
    }

    Outcome solve_component(const std::vector<int>& comp)
    {
        if (comp.size() >= 12) {
            // split structure is mask-independent; reuse it across palette caps
            auto cached = split_cache_.find(comp);
            if (cached == split_cache_.end())
                cached = split_cache_.emplace(comp, find_split(comp)).first;
            if (const auto& split = cached->second) {
#ifdef CRITGRAPH_SPLIT_DEBUG
                fprintf(stderr, "split comp=%zu |A|=%zu |B|=%zu |X|=%zu |Y|=%zu a0=%d b0=%d\n",
                    comp.size(), split->a.size(), split->b.size(), split->x.size(), split->y.size(),
                    split->a.front(), split->b.front());
#endif
                return solve_split(comp, *split);
            }
#ifdef CRITGRAPH_SPLIT_DEBUG
            fprintf(stderr, "leaf comp=%zu nodes_so_far=%llu\n", comp.size(),
                (unsigned long long)nodes_);
#endif
        }
        return leaf_search(comp);
    }

    std::map<std::vector<int>, std::optional<JoinSplit>> split_cache_;

    Outcome solve_split(const std::vector<int>& comp, const JoinSplit& split)
    {
        const std::vector<int> classes = classes_from_masks(k_, masks_, comp);
        const std::uint64_t palette = k_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k_) - 1;
        bool saw_unknown = false;
        std::vector<std::uint64_t> seen_signatures;

        for (std::uint64_t cap = 0; cap <= palette; ++cap) {
            // canonicalize the cap by per-class intersection sizes
            std::uint64_t signature = cap;
            if (k_ <= 16) {
                signature = 0;
                for (int c = 1; c <= k_; ++c)
                    if ((cap >> (c - 1)) & 1)
                        signature += std::uint64_t{1} << (4 * (classes[static_cast<std::size_t>(c)] - 1));
            }
            if (std::find(seen_signatures.begin(), seen_signatures.end(), signature)
                != seen_signatures.end())
                continue;
            seen_signatures.push_back(signature);

            if (++nodes_ >= nodes_left_ || std::chrono::steady_clock::now() > deadline_)
                return Outcome::Unknown;

            std::vector<std::pair<int, std::uint64_t>> saved;
            for (int v : split.a) {
                saved.emplace_back(v, masks_[static_cast<std::size_t>(v)]);
                masks_[static_cast<std::size_t>(v)] &= cap;
            }
            for (int v : split.b) {
                saved.emplace_back(v, masks_[static_cast<std::size_t>(v)]);
                masks_[static_cast<std::size_t>(v)] &= ~cap;
            }
            Outcome rx = solve(split.x);
            Outcome ry = rx == Outcome::Yes ? solve(split.y) : Outcome::No;
            // restore on every path: the found colors live in assign_, and a
            // later cap iteration must see the caller's masks untouched
            for (auto [v, m] : saved) masks_[static_cast<std::size_t>(v)] = m;
            if (rx == Outcome::Yes && ry == Outcome::Yes) return Outcome::Yes;
            saw_unknown = saw_unknown || rx == Outcome::Unknown || ry == Outcome::Unknown;
        }
        return saw_unknown ? Outcome::Unknown : Outcome::No;
    }

    Outcome leaf_search(const std::vector<int>& comp)
    {
        std::vector<int> local_of(static_cast<std::size_t>(g_.vertex_count()), -1);
        for (std::size_t i = 0; i < comp.size(); ++i)
            local_of[static_cast<std::size_t>(comp[i])] = static_cast<int>(i);
        std::vector<std::vector<int>> adj(comp.size());
        std::vector<std::uint64_t> local_masks(comp.size());
        for (std::size_t i = 0; i < comp.size(); ++i) {
            local_masks[i] = masks_[static_cast<std::size_t>(comp[i])];
            for (int u : g_.neighbors(comp[i])) {
                int j = local_of[static_cast<std::size_t>(u)];
                if (j >= 0) adj[i].push_back(j);
            }
        }
        const std::vector<int> classes = classes_from_masks(k_, masks_, comp);
        ComponentSearch search(adj, k_, local_masks, classes);
        std::uint64_t used = 0;
        Outcome out = search.run(nodes_left_ > nodes_ ? nodes_left_ - nodes_ : 0, deadline_, used);
        nodes_ += used;
        if (out == Outcome::Yes)
            for (std::size_t i = 0; i < comp.size(); ++i)
                assign_[static_cast<std::size_t>(comp[i])] = search.color()[i];
        return out;
    }

    std::vector<std::vector<int>> components_of(const std::vector<int>& verts) const
    {
        std::vector<int> mark(static_cast<std::size_t>(g_.vertex_count()), -1);
        for (int v : verts) mark[static_cast<std::size_t>(v)] = 0;
        std::vector<std::vector<int>> comps;
        std::vector<int> stack;
        for (int s : verts) {
            if (mark[static_cast<std::size_t>(s)] != 0) continue;
            comps.emplace_back();
            mark[static_cast<std::size_t>(s)] = 1;
            stack.push_back(s);
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                comps.back().push_back(v);
                for (int u : g_.neighbors(v))
                    if (mark[static_cast<std::size_t>(u)] == 0) {
                        mark[static_cast<std::size_t>(u)] = 1;
                        stack.push_back(u);
                    }
            }
            std::sort(comps.back().begin(), comps.back().end());
        }
        return comps;
    }

    // vertices of the component adjacent to every member of target
    std::vector<int> coverers(const std::vector<int>& target, const std::vector<char>& in_comp,
        const std::vector<int>& comp) const
    {
        std::vector<int> count(static_cast<std::size_t>(g_.vertex_count()), 0);
        for (int t : target)
            for (int w : g_.neighbors(t))
                if (in_comp[static_cast<std::size_t>(w)]) ++count[static_cast<std::size_t>(w)];
        std::vector<int> out;
        for (int v : comp)
            if (count[static_cast<std::size_t>(v)] == static_cast<int>(target.size())) out.push_back(v);
        return out;
    }

    std::optional<JoinSplit> find_split(const std::vector<int>& comp) const
    {
        std::vector<char> in_comp(static_cast<std::size_t>(g_.vertex_count()), 0);
        std::vector<int> deg(static_cast<std::size_t>(g_.vertex_count()), 0);
        for (int v : comp) in_comp[static_cast<std::size_t>(v)] = 1;
        for (int v : comp)
            for (int u : g_.neighbors(v))
                if (in_comp[static_cast<std::size_t>(u)]) ++deg[static_cast<std::size_t>(v)];

        // Seed with nonadjacent pairs: two vertices of the same join side
        // share the whole far side as common neighborhood.  Sample a few
        // vertices per degree class so no seam level gets crowded out.
        std::vector<int> sorted(comp);
        std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
            return deg[static_cast<std::size_t>(a)] != deg[static_cast<std::size_t>(b)]
                ? deg[static_cast<std::size_t>(a)] > deg[static_cast<std::size_t>(b)]
                : a < b;
        });
        // take a few vertices from both ends of every degree class: ties can
        // hold both sides of a seam
        std::vector<int> cands;
        for (std::size_t lo = 0; lo < sorted.size() && cands.size() < 64;) {
            std::size_t hi = lo;
            while (hi < sorted.size()
                && deg[static_cast<std::size_t>(sorted[hi])] == deg[static_cast<std::size_t>(sorted[lo])])
                ++hi;
            if (hi - lo <= 8) {
                for (std::size_t i = lo; i < hi; ++i) cands.push_back(sorted[i]);
            } else {
                for (std::size_t i = lo; i < lo + 4; ++i) cands.push_back(sorted[i]);
                for (std::size_t i = hi - 4; i < hi; ++i) cands.push_back(sorted[i]);
            }
            lo = hi;
        }
        if (cands.size() > 64) cands.resize(64);

        std::vector<std::pair<std::vector<int>, std::pair<int, int>>> seeds;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            // a lone high-degree vertex can be the whole far side of a seam
            seeds.push_back({{cands[i]}, {cands[i], cands[i]}});
            for (std::size_t j = i + 1; j < cands.size(); ++j) {
                int p = cands[i], q = cands[j];
                if (g_.has_edge(p, q)) continue;
                std::vector<int> common;
                auto np = g_.neighbors(p);
                auto nq = g_.neighbors(q);
                std::set_intersection(np.begin(), np.end(), nq.begin(), nq.end(),
                    std::back_inserter(common));
                std::erase_if(common, [&](int w) { return !in_comp[static_cast<std::size_t>(w)]; });
                if (common.empty()) continue;
                seeds.push_back({std::move(common), {p, q}});
            }
        }
        std::sort(seeds.begin(), seeds.end(), [](const auto& a, const auto& b) {
            return a.first.size() != b.first.size() ? a.first.size() > b.first.size()
                                                    : a.second < b.second;
        });
        for (const auto& [common, seed] : seeds)
            if (auto split = try_block(common, in_comp, comp)) return split;
        return std::nullopt;
    }

    std::optional<JoinSplit> try_block(const std::vector<int>& b_seed,
        const std::vector<char>& in_comp, const std::vector<int>& comp) const
    {
        std::vector<int> a = coverers(b_seed, in_comp, comp);
        if (a.size() < 2) return std::nullopt;
        std::vector<int> b = coverers(a, in_comp, comp);
        if (b.empty()) return std::nullopt;
        if (!is_independent_set(g_, a) || !is_independent_set(g_, b)) return std::nullopt;

        // the A x B edges must disconnect A's side from B's side
        std::vector<char> side(static_cast<std::size_t>(g_.vertex_count()), 0);
        std::vector<char> in_a(static_cast<std::size_t>(g_.vertex_count()), 0);
        std::vector<char> in_b(static_cast<std::size_t>(g_.vertex_count()), 0);
        for (int x : a) in_a[static_cast<std::size_t>(x)] = 1;
        for (int y : b) in_b[static_cast<std::size_t>(y)] = 1;

        std::vector<int> stack = a;
        for (int x : a) side[static_cast<std::size_t>(x)] = 1;
        while (!stack.empty()) {
            int w = stack.back();
            stack.pop_back();
            for (int z : g_.neighbors(w)) {
                if (!in_comp[static_cast<std::size_t>(z)] || side[static_cast<std::size_t>(z)]) continue;
                if (in_a[static_cast<std::size_t>(w)] && in_b[static_cast<std::size_t>(z)]) continue;
                if (in_b[static_cast<std::size_t>(w)] && in_a[static_cast<std::size_t>(z)]) continue;
                if (in_b[static_cast<std::size_t>(z)]) return std::nullopt; // reached B off the seam
                side[static_cast<std::size_t>(z)] = 1;
                stack.push_back(z);
            }
        }
        JoinSplit split;
        split.a = a;
        split.b = b;
        for (int w : comp)
            (side[static_cast<std::size_t>(w)] ? split.x : split.y).push_back(w);
        if (split.y.empty()) return std::nullopt;
        // peeling a single seam vertex only makes progress when it is a hub
        // whose removal shatters the far side
        if (b.size() < 2 && (a.size() < 8 || components_of(split.x).size() < 2)) return std::nullopt;
        return split;
    }

    const Graph& g_;
    int k_;
    std::vector<std::uint64_t> masks_;
    std::vector<int> assign_;
    std::uint64_t nodes_ = 0;
    std::uint64_t nodes_left_;
    std::chrono::steady_clock::time_point deadline_;
};

} // namespace detail

// Exact decision: Yes carries a verified witness, No means the search space
// was exhausted, Unknown is returned only on budget exhaustion.
inline DecideResult decide_colorable(const Graph& g, const ColorConstraint& c, const Budget& budget = {})
{
    c.validate(g);
    DecideResult result;

    const int n = g.vertex_count();
    const std::uint64_t full = c.k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << c.k) - 1;
    std::vector<std::uint64_t> allowed(static_cast<std::size_t>(n), full);
    for (const auto& [vs, cs] : c.subset_palettes) {
        std::uint64_t mask = 0;
        for (int col : cs) mask |= std::uint64_t{1} << (col - 1);
        for (int v : vs) allowed[static_cast<std::size_t>(v)] &= mask;
    }
    for (auto [v, col] : c.forced_colors) allowed[static_cast<std::size_t>(v)] &= std::uint64_t{1} << (col - 1);

    detail::RecursiveDecider solver(g, c.k, std::move(allowed), budget);
    result.outcome = solver.run();
    result.nodes = solver.nodes_used();
    if (result.outcome == Outcome::Yes) {
        result.witness = ColoringWitness{c.k, solver.assignment()};
        if (!verify_witness(g, *result.witness, c))
            throw std::logic_error("internal error: unverifiable witness produced");
    }
    return result;
}

struct ChromaticResult {
    bool exact = false;
    int lo = 1;
    int hi = 1;
    std::optional<ColoringWitness> witness;
    int chi() const
    {
        if (!exact) throw std::logic_error("chromatic number not exact");
        return lo;
    }
};

namespace detail {

inline int greedy_clique_lower_bound(const Graph& g)
{
    int best = g.vertex_count() > 0 ? 1 : 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<int> clique{v};
        for (int u : g.neighbors(v)) {
            bool ok = true;
            for (int w : clique)
                if (u != w && !g.has_edge(u, w)) {
                    ok = false;
                    break;
                }
            if (ok) clique.push_back(u);
        }
        best = std::max(best, static_cast<int>(clique.size()));
    }
    return best;
}

inline ColoringWitness greedy_coloring(const Graph& g)
{
    const int n = g.vertex_count();
    std::vector<int> color(static_cast<std::size_t>(n), 0);
    std::vector<std::uint64_t> seen_mask(static_cast<std::size_t>(n), 0);
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    int used = 0;
    for (int step = 0; step < n; ++step) {
        int best = -1, best_pop = -1, best_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (done[static_cast<std::size_t>(v)]) continue;
            int pop = std::popcount(seen_mask[static_cast<std::size_t>(v)]);
            if (pop > best_pop || (pop == best_pop && g.degree(v) > best_deg)) {
                best = v;
                best_pop = pop;
                best_deg = g.degree(v);
            }
        }
        int c = 1;
        while (c <= 64 && (seen_mask[static_cast<std::size_t>(best)] >> (c - 1)) & 1) ++c;
        color[static_cast<std::size_t>(best)] = c;
        used = std::max(used, c);
        done[static_cast<std::size_t>(best)] = 1;
        for (int u : g.neighbors(best))
            seen_mask[static_cast<std::size_t>(u)] |= std::uint64_t{1} << (c - 1);
    }
    return ColoringWitness{std::max(used, 1), std::move(color)};
}

} // namespace detail

inline ChromaticResult chromatic_number(const Graph& g, const Budget& budget = {})
{
    if (g.vertex_count() < 1) throw std::invalid_argument("chromatic_number requires n >= 1");
    ChromaticResult r;
    ColoringWitness greedy = detail::greedy_coloring(g);
    int hi = greedy.k;
    int lo = detail::greedy_clique_lower_bound(g);
    for (int k = lo;; ++k) {
        if (k >= hi) {
            r.exact = true;
            r.lo = r.hi = hi;
            r.witness = std::move(greedy);
            return r;
        }
        DecideResult d = decide_colorable(g, ColorConstraint::palette(k), budget);
        if (d.outcome == Outcome::Yes) {
            r.exact = true;
            r.lo = r.hi = k;
            r.witness = std::move(d.witness);
            return r;
        }
        if (d.outcome == Outcome::Unknown) {
            r.exact = false;
            r.lo = lo;
            r.hi = hi;
            r.witness = std::move(greedy);
            return r;
        }
        lo = k + 1;
    }
}

struct SubsetColorsResult {
    bool exact = false;
    int lo = 1;
    int hi = 1;
    std::optional<ColoringWitness> witness; // achieves hi distinct colors on the subset
    int value() const
    {
        if (!exact) throw std::logic_error("subset color minimum not exact");
        return lo;
    }
};

// Minimum number of distinct colors on `subset` over all proper k-colorings.
// Decided via representative t-subset palettes {1..t}; symmetry of bare
// instances makes one palette per size sufficient.
inline SubsetColorsResult min_colors_on_subset(
    const Graph& g, int k, std::span<const int> subset, const Budget& budget = {})
{
    if (subset.empty()) throw std::invalid_argument("min_colors_on_subset requires nonempty subset");
    const int tmax = std::min<int>(k, static_cast<int>(subset.size()));
    std::vector<int> subset_vec(subset.begin(), subset.end());
    for (int t = 1; t <= tmax; ++t) {
        std::vector<int> palette(static_cast<std::size_t>(t));
        for (int i = 0; i < t; ++i) palette[static_cast<std::size_t>(i)] = i + 1;
        ColorConstraint c = ColorConstraint::palette(k);
        c.restrict(subset_vec, palette);
        DecideResult d = decide_colorable(g, c, budget);
        if (d.outcome == Outcome::Yes)
            return SubsetColorsResult{true, t, t, std::move(d.witness)};
        if (d.outcome == Outcome::Unknown)
            return SubsetColorsResult{false, t, tmax, std::nullopt};
    }
    throw std::invalid_argument("min_colors_on_subset: graph is not k-colorable");
}

enum class CritVerdict { Critical, NotCritical, Inconclusive };

struct EdgeCheck {
    int u = 0;
    int v = 0;
    Outcome removable = Outcome::Unknown; // Yes: g-e is (k-1)-colorable
};

struct CriticalityReport {
    int k = 0;
    bool sampled = false;
    int sample_count = 0;
    std::uint64_t seed = 0;
    Outcome intact_lower = Outcome::Unknown; // Yes: proven not (k-1)-colorable
    std::vector<EdgeCheck> per_edge;
    CritVerdict verdict = CritVerdict::Inconclusive;
    std::optional<std::pair<int, int>> witness_edge; // set on NotCritical when an edge fails
};

struct CritMode {
    bool full = true;
    int sample_count = 0;
    std::uint64_t seed = 0;

    static CritMode full_mode() { return {true, 0, 0}; }
    static CritMode sampled(int count, std::uint64_t seed) { return {false, count, seed}; }
};

inline CriticalityReport is_k_critical(
    const Graph& g, int k, const CritMode& mode = CritMode::full_mode(), const Budget& budget = {}, int jobs = 1)
{
    if (k < 2) throw std::invalid_argument("is_k_critical requires k >= 2");
    CriticalityReport report;
    report.k = k;
    report.sampled = !mode.full;
    report.seed = mode.seed;

    DecideResult intact = decide_colorable(g, ColorConstraint::palette(k - 1), budget);
    if (intact.outcome == Outcome::Yes) {
        // Already (k-1)-colorable: not k-chromatic, hence not k-critical.
        report.intact_lower = Outcome::No;
        report.verdict = CritVerdict::NotCritical;
        return report;
    }
    report.intact_lower = intact.outcome == Outcome::No ? Outcome::Yes : Outcome::Unknown;

    std::vector<std::pair<int, int>> edges = g.edges();
    if (!mode.full) {
        std::vector<std::pair<int, int>> chosen;
        std::mt19937_64 rng(mode.seed);
        std::sample(edges.begin(), edges.end(), std::back_inserter(chosen),
            static_cast<std::size_t>(std::min<int>(mode.sample_count, static_cast<int>(edges.size()))), rng);
        edges = std::move(chosen);
    }
    report.sample_count = static_cast<int>(edges.size());
    report.per_edge.resize(edges.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= edges.size()) break;
            auto [u, v] = edges[i];
            Graph reduced = remove_edge_copy(g, u, v);
            DecideResult d = decide_colorable(reduced, ColorConstraint::palette(k - 1), budget);
            report.per_edge[i] = EdgeCheck{u, v, d.outcome};
        }
    };
    int workers = std::max(1, jobs);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    bool any_unknown = report.intact_lower == Outcome::Unknown;
    for (const EdgeCheck& e : report.per_edge) {
        if (e.removable == Outcome::No) {
            report.verdict = CritVerdict::NotCritical;
            report.witness_edge = {e.u, e.v};
            return report;
        }
        any_unknown = any_unknown || e.removable == Outcome::Unknown;
    }
    if (any_unknown || !mode.full)
        report.verdict = CritVerdict::Inconclusive;
    else
        report.verdict = CritVerdict::Critical;
    return report;
}

} // namespace critgraph

#endif
