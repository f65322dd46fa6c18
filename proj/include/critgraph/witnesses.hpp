#ifndef CRITGRAPH_WITNESSES_HPP
#define CRITGRAPH_WITNESSES_HPP

#include <map>
#include <mutex>
#include <tuple>

#include "critgraph/colorer.hpp"
#include "critgraph/constructions.hpp"

namespace critgraph {

// Constructive coloring witnesses, generated by the same recursions the
// constructions are assembled from.  Search only happens at small leaf
// graphs without a dedicated rule (budgeted, cached per graph and argument).

struct WitnessContext {
    Budget budget;
    std::map<std::tuple<const BuiltGraph*, int, int, int>, std::vector<int>> cache;
    std::mutex mutex;
};

inline WitnessContext& default_witness_context()
{
    static WitnessContext ctx;
    return ctx;
}

namespace detail {

inline void swap_two_colors(std::vector<int>& assign, int a, int b, int from, int count)
{
    for (int v = from; v < from + count; ++v) {
        if (assign[static_cast<std::size_t>(v)] == a)
            assign[static_cast<std::size_t>(v)] = b;
        else if (assign[static_cast<std::size_t>(v)] == b)
            assign[static_cast<std::size_t>(v)] = a;
    }
}

inline std::vector<int> cached_search(WitnessContext& ctx, const BuiltGraph& b, int op, int a1, int a2,
    const Graph& target, const ColorConstraint& c)
{
    auto key = std::make_tuple(&b, op, a1, a2);
    {
        std::scoped_lock lock(ctx.mutex);
        auto it = ctx.cache.find(key);
        if (it != ctx.cache.end()) return it->second;
    }
    DecideResult d = decide_colorable(target, c, ctx.budget);
    if (d.outcome == Outcome::Unknown)
        throw std::runtime_error("witness search budget exhausted on a leaf graph");
    if (d.outcome == Outcome::No)
        throw std::logic_error("witness search refuted a leaf claim");
    std::scoped_lock lock(ctx.mutex);
    auto [it, inserted] = ctx.cache.emplace(key, d.witness->assignment);
    return it->second;
}

// ---- cycle rules ------------------------------------------------------------

inline std::vector<int> cycle_proper(int m)
{
    std::vector<int> col(static_cast<std::size_t>(m));
    for (int i = 0; i + 1 < m; ++i) col[static_cast<std::size_t>(i)] = 1 + i % 2;
    col[static_cast<std::size_t>(m - 1)] = 3;
    return col;
}

inline std::vector<int> cycle_avoid_vertex(int m, int v)
{
    std::vector<int> col(static_cast<std::size_t>(m));
    col[static_cast<std::size_t>(v)] = 3;
    for (int i = 1; i < m; ++i)
        col[static_cast<std::size_t>((v + i) % m)] = 1 + (i - 1) % 2;
    return col;
}

inline std::vector<int> cycle_after_edge(int m, std::pair<int, int> e)
{
    auto [x, y] = e;
    int b;
    if ((x + 1) % m == y)
        b = y;
    else if ((y + 1) % m == x)
        b = x;
    else
        throw std::invalid_argument("cycle_after_edge: not a cycle edge");
    // path colors 1,2,... starting at b; both removed endpoints land on 1
    std::vector<int> col(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) col[static_cast<std::size_t>((b + i) % m)] = 1 + i % 2;
    return col;
}

// ---- leaf primitive dispatch -------------------------------------------------
// Canonical palettes: proper and avoid-vertex use {1..r}, after-edge {1..r-1},
// with the avoid-vertex singleton on the top color r.

std::vector<int> crit_proper(WitnessContext&, const BuiltGraph&);
std::vector<int> crit_avoid_vertex(WitnessContext&, const BuiltGraph&, int v);
std::vector<int> crit_after_edge(WitnessContext&, const BuiltGraph&, std::pair<int, int> e);
std::vector<int> gk_avoid_vertex(WitnessContext&, const BuiltGraph&, int v);

// M^r primitives are (k-1)-wide; their canonical promise is about the
// forward set only: proper/avoid keep it in {1..r} (singleton color 1),
// after-edge keeps it in {1..r-1}.
std::vector<int> mr_proper(WitnessContext&, const BuiltGraph&);
std::vector<int> mr_avoid_forward(WitnessContext&, const BuiltGraph&, int fwd_vertex);
std::vector<int> mr_after_edge(WitnessContext&, const BuiltGraph&, std::pair<int, int> e);

// ---- the Lemma recursion over U / W structures --------------------------------

struct UWalk {
    WitnessContext& ctx;
    const BuiltGraph& built;
    const UStructure& u;
    int K; // palette bound; every color lies in {1..K}
    std::vector<int>& assign;
    std::vector<int> fixed; // fixed digit per child; -1 = varying

    UWalk(WitnessContext& c, const BuiltGraph& b, std::vector<int>& a)
        : ctx(c)
        , built(b)
        , u(u_structure(b))
        , K(u_structure(b).children.front().r)
        , assign(a)
        , fixed(u_structure(b).children.size(), -1)
    {
        for (std::size_t i = 0; i < u.children.size(); ++i)
            if (u.children[i].r != K - static_cast<int>(i))
                throw std::invalid_argument("witness recursion requires slot orders k-1, k-2, ...");
    }

    template <typename F> void for_each_slice_active(int free_below, F&& f) const
    {
        const int t = static_cast<int>(u.children.size());
        std::vector<int> digits(static_cast<std::size_t>(t));
        for (int idx = 0; idx < u.active_count; ++idx) {
            int rest = idx;
            bool ok = true;
            for (int j = t - 1; j >= 0; --j) {
                digits[static_cast<std::size_t>(j)] = rest % u.radix[static_cast<std::size_t>(j)];
                rest /= u.radix[static_cast<std::size_t>(j)];
                if (j >= free_below && fixed[static_cast<std::size_t>(j)] >= 0
                    && digits[static_cast<std::size_t>(j)] != fixed[static_cast<std::size_t>(j)])
                    ok = false;
            }
            if (ok) f(u.active_offset + idx, digits);
        }
    }

    // Observation-style greedy extension with palette {1..limit}; plug
    // neighbors that could collide all sit in higher literal ranges.
    void extend_actives(int limit, int skip_digit)
    {
        for_each_slice_active(limit, [&](int id, const std::vector<int>& digits) {
            if (skip_digit >= 0 && digits[static_cast<std::size_t>(limit - 1)] == skip_digit) return;
            std::uint64_t forbidden = 0;
            for (std::size_t j = 0; j < u.children.size(); ++j) {
                int plug = u.children[j].plug[static_cast<std::size_t>(digits[j])];
                int c = assign[static_cast<std::size_t>(plug)];
                if (c >= 1) forbidden |= std::uint64_t{1} << (c - 1);
            }
            int chosen = 0;
            for (int c = 1; c <= limit; ++c)
                if (!(forbidden >> (c - 1) & 1)) {
                    chosen = c;
                    break;
                }
            if (chosen == 0) throw std::logic_error("active extension ran out of palette colors");
            assign[static_cast<std::size_t>(id)] = chosen;
        });
    }

    void swap_over_recursion_region(int t, int a, int b)
    {
        for (int j = 0; j + 1 < t; ++j)
            swap_two_colors(assign, a, b, u.children[static_cast<std::size_t>(j)].offset,
                u.children[static_cast<std::size_t>(j)].built->graph.vertex_count());
        for_each_slice_active(t - 1, [&](int id, const std::vector<int>&) {
            if (assign[static_cast<std::size_t>(id)] == a)
                assign[static_cast<std::size_t>(id)] = b;
            else if (assign[static_cast<std::size_t>(id)] == b)
                assign[static_cast<std::size_t>(id)] = a;
        });
    }

    enum class ChildOp { AvoidVertex, AfterEdge };

    std::vector<int> palette_range(int from, int to) const
    {
        std::vector<int> p;
        for (int c = from; c <= to; ++c) p.push_back(c);
        return p;
    }

    // Colors child t-1 completely.  For AvoidVertex the designated singleton
    // color is plug_palette.front(); for AfterEdge the plug stays inside
    // plug_palette.  Catalog children live entirely inside plug_palette;
    // M^r children additionally spread their base over the rest of {1..K}.
    void color_child(int t, ChildOp op, int plug_idx, std::pair<int, int> local_edge,
        const std::vector<int>& plug_palette)
    {
        const UChild& uc = u.children[static_cast<std::size_t>(t - 1)];
        const BuiltGraph& child = *uc.built;
        const bool is_mr = std::holds_alternative<MrStructure>(child.structure);
        std::vector<int> local;
        if (is_mr) {
            switch (op) {
            case ChildOp::AvoidVertex: {
                const auto& mr = std::get<MrStructure>(child.structure);
                local = mr_avoid_forward(ctx, child, mr.forward[static_cast<std::size_t>(plug_idx)]);
                break;
            }
            case ChildOp::AfterEdge:
                local = mr_after_edge(ctx, child, local_edge);
                break;
            }
        } else {
            switch (op) {
            case ChildOp::AvoidVertex: {
                local = crit_avoid_vertex(ctx, child, plug_idx);
                // canonical singleton sits on the top color; move it first
                for (int& c : local) c = c == child.order ? 1 : c + 1;
                break;
            }
            case ChildOp::AfterEdge:
                local = crit_after_edge(ctx, child, local_edge);
                break;
            }
        }

        std::vector<int> to_actual(static_cast<std::size_t>(K) + 1, 0);
        std::vector<char> taken(static_cast<std::size_t>(K) + 1, 0);
        for (std::size_t i = 0; i < plug_palette.size(); ++i) {
            to_actual[i + 1] = plug_palette[i];
            taken[static_cast<std::size_t>(plug_palette[i])] = 1;
        }
        if (is_mr) {
            int next = 1;
            for (std::size_t c = plug_palette.size() + 1; c <= static_cast<std::size_t>(K); ++c) {
                while (taken[static_cast<std::size_t>(next)]) ++next;
                to_actual[c] = next;
                taken[static_cast<std::size_t>(next)] = 1;
            }
        }
        for (std::size_t v = 0; v < local.size(); ++v) {
            int c = local[v];
            if (c < 1 || c > K || to_actual[static_cast<std::size_t>(c)] == 0)
                throw std::logic_error("child coloring escaped its palette");
            assign[static_cast<std::size_t>(uc.offset) + v] = to_actual[static_cast<std::size_t>(c)];
        }
    }

    // Part 1 of the setcolor lemma at level t: slice actives take colors
    // {1..t+1} with t+1 exactly at the chosen active.
    void part1(int t, std::span<const int> chosen)
    {
        if (t == 0) {
            std::vector<int> digits(fixed.begin(), fixed.end());
            assign[static_cast<std::size_t>(active_id_from_digits(u, digits))] = 1;
            return;
        }
        const int omega = chosen[static_cast<std::size_t>(t - 1)];
        fixed[static_cast<std::size_t>(t - 1)] = omega;
        part1(t - 1, chosen.subspan(0, static_cast<std::size_t>(t - 1)));
        swap_over_recursion_region(t, t, t + 1);
        fixed[static_cast<std::size_t>(t - 1)] = -1;
        color_child(t, ChildOp::AvoidVertex, omega, {}, palette_range(t, K));
        extend_actives(t, omega);
    }

    // Part 3: a proper coloring of U - e with at most t colors on the slice
    // actives, by the removed edge's case.
    void part3(int t, std::pair<int, int> e)
    {
        const UChild& uc = u.children[static_cast<std::size_t>(t - 1)];
        const int child_n = uc.built->graph.vertex_count();
        auto in_child = [&](int x) { return x >= uc.offset && x < uc.offset + child_n; };
        auto is_active = [&](int x) { return x >= u.active_offset; };
        auto [x, y] = e;

        if (in_child(x) && in_child(y)) {
            // the removed edge came from the peeled child itself
            color_child(t, ChildOp::AfterEdge, -1, {x - uc.offset, y - uc.offset},
                palette_range(t + 1, K));
            std::vector<int> zeros(static_cast<std::size_t>(t - 1), 0);
            fixed[static_cast<std::size_t>(t - 1)] = 0;
            part1(t - 1, zeros);
            fixed[static_cast<std::size_t>(t - 1)] = -1;
            extend_actives(t, 0);
            return;
        }
        if ((in_child(x) && is_active(y)) || (in_child(y) && is_active(x))) {
            // the removed edge joins the peeled child to an active of its copy
            const int omega_vertex = in_child(x) ? x : y;
            const int act = in_child(x) ? y : x;
            const int omega = plug_index_of(uc, omega_vertex);
            color_child(t, ChildOp::AvoidVertex, omega, {}, palette_range(t, K));
            std::vector<int> digits = active_digits(u, act);
            if (digits[static_cast<std::size_t>(t - 1)] != omega)
                throw std::logic_error("removed plug edge does not match active coordinates");
            fixed[static_cast<std::size_t>(t - 1)] = omega;
            part1(t - 1, std::span<const int>(digits).subspan(0, static_cast<std::size_t>(t - 1)));
            fixed[static_cast<std::size_t>(t - 1)] = -1;
            extend_actives(t, omega);
            return;
        }
        // the removed edge lives inside one of the copies
        if (t == 1) throw std::invalid_argument("edge does not belong to this construction");
        int omega = 0;
        if (is_active(x) || is_active(y))
            omega = active_digits(u, is_active(x) ? x : y)[static_cast<std::size_t>(t - 1)];
        color_child(t, ChildOp::AvoidVertex, omega, {}, palette_range(t, K));
        fixed[static_cast<std::size_t>(t - 1)] = omega;
        part3(t - 1, e);
        fixed[static_cast<std::size_t>(t - 1)] = -1;
        extend_actives(t, omega);
    }

    static int plug_index_of(const UChild& uc, int global)
    {
        auto it = std::lower_bound(uc.plug.begin(), uc.plug.end(), global);
        if (it == uc.plug.end() || *it != global)
            throw std::logic_error("vertex is not a plug of this child");
        return static_cast<int>(it - uc.plug.begin());
    }
};

inline std::vector<int> run_part1(WitnessContext& ctx, const BuiltGraph& side, int chosen_active)
{
    std::vector<int> assign(static_cast<std::size_t>(side.graph.vertex_count()), 0);
    UWalk walk(ctx, side, assign);
    std::vector<int> digits = active_digits(walk.u, chosen_active);
    walk.part1(static_cast<int>(walk.u.children.size()), digits);
    return assign;
}

inline std::vector<int> run_part3(WitnessContext& ctx, const BuiltGraph& side, std::pair<int, int> e)
{
    std::vector<int> assign(static_cast<std::size_t>(side.graph.vertex_count()), 0);
    UWalk walk(ctx, side, assign);
    walk.part3(static_cast<int>(walk.u.children.size()), e);
    return assign;
}

struct GkSides {
    const BuiltGraph* side1;
    const BuiltGraph* side2;
    int offset2;
    int k;
    int i1;
    int i2;
};

inline GkSides gk_sides(const BuiltGraph& b)
{
    const auto* gs = std::get_if<GkStructure>(&b.structure);
    if (!gs) throw std::invalid_argument("expected a G_k / G^5_k construction");
    return GkSides{gs->side1.get(), gs->side2.get(), gs->offset2, gs->k,
        static_cast<int>(u_structure(*gs->side1).children.size()) + 1,
        static_cast<int>(u_structure(*gs->side2).children.size()) + 1};
}

inline void write_side(std::vector<int>& out, const std::vector<int>& side, int offset,
    const std::vector<int>& color_map)
{
    for (std::size_t v = 0; v < side.size(); ++v)
        out[static_cast<std::size_t>(offset) + v] = color_map[static_cast<std::size_t>(side[v])];
}

inline std::vector<int> identity_map(int top)
{
    std::vector<int> m(static_cast<std::size_t>(top) + 1);
    for (int c = 0; c <= top; ++c) m[static_cast<std::size_t>(c)] = c;
    return m;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Public witness operations
// ---------------------------------------------------------------------------

// Proper r-coloring of a catalog critical graph in which the top color
// appears only at the chosen vertex.
inline ColoringWitness color_avoiding_vertex(
    const BuiltGraph& b, int v, WitnessContext& ctx = default_witness_context())
{
    if (b.order < 2) throw std::invalid_argument("color_avoiding_vertex needs a catalog critical graph");
    std::vector<int> assign = detail::crit_avoid_vertex(ctx, b, v);
    ColoringWitness w{b.order, std::move(assign)};
    ColorConstraint c = ColorConstraint::palette(b.order);
    std::vector<int> others, low;
    for (int x = 0; x < b.graph.vertex_count(); ++x)
        if (x != v) others.push_back(x);
    for (int col = 1; col < b.order; ++col) low.push_back(col);
    c.restrict(std::move(others), std::move(low)).force(v, b.order);
    if (!verify_witness(b.graph, w, c)) throw std::logic_error("avoid-vertex witness failed verification");
    return w;
}

// Extends proper child colorings across the active set, greedily by active
// index with the lowest available palette color.
inline ColoringWitness extend_to_active(
    const BuiltGraph& uB, const std::vector<std::vector<int>>& child_colorings, const std::vector<int>& palette)
{
    const UStructure& u = u_structure(uB);
    if (child_colorings.size() != u.children.size())
        throw std::invalid_argument("extend_to_active: one coloring per child required");
    int k = 0;
    std::vector<int> assign(static_cast<std::size_t>(uB.graph.vertex_count()), 0);
    for (std::size_t i = 0; i < u.children.size(); ++i) {
        const UChild& uc = u.children[i];
        if (static_cast<int>(child_colorings[i].size()) != uc.built->graph.vertex_count())
            throw std::invalid_argument("extend_to_active: child coloring has wrong size");
        for (std::size_t v = 0; v < child_colorings[i].size(); ++v) {
            assign[static_cast<std::size_t>(uc.offset) + v] = child_colorings[i][v];
            k = std::max(k, child_colorings[i][v]);
        }
    }
    for (int c : palette) k = std::max(k, c);
    for (int idx = 0; idx < u.active_count; ++idx) {
        int id = u.active_offset + idx;
        std::uint64_t forbidden = 0;
        for (int nb : uB.graph.neighbors(id)) {
            int c = assign[static_cast<std::size_t>(nb)];
            if (c >= 1) forbidden |= std::uint64_t{1} << (c - 1);
        }
        int chosen = 0;
        for (int c : palette)
            if (!(forbidden >> (c - 1) & 1)) {
                chosen = c;
                break;
            }
        if (chosen == 0)
            throw std::runtime_error("extend_to_active: palette exhausted at an active vertex");
        assign[static_cast<std::size_t>(id)] = chosen;
    }
    ColoringWitness w{k, std::move(assign)};
    if (!verify_witness(uB.graph, w, ColorConstraint::palette(k)))
        throw std::logic_error("extend_to_active produced an improper coloring");
    return w;
}

// Setcolor part 1: proper (k-1)-coloring, <= i colors on the actives, the
// i-th exactly at the chosen active.
inline ColoringWitness color_U_part1(
    const BuiltGraph& uB, int chosen_active, WitnessContext& ctx = default_witness_context())
{
    const UStructure& u = u_structure(uB);
    std::vector<int> assign = detail::run_part1(ctx, uB, chosen_active);
    const int i = static_cast<int>(u.children.size()) + 1;
    const int K = u.children.front().r;
    ColoringWitness w{K, std::move(assign)};
    ColorConstraint c = ColorConstraint::palette(K);
    std::vector<int> others, low;
    for (int a : active_set(uB))
        if (a != chosen_active) others.push_back(a);
    for (int col = 1; col < i; ++col) low.push_back(col);
    c.restrict(std::move(others), std::move(low)).force(chosen_active, i);
    if (!verify_witness(uB.graph, w, c)) throw std::logic_error("part 1 witness failed verification");
    return w;
}

// Setcolor part 3: proper (k-1)-coloring of U - e with at most i-1 colors
// on the actives.
inline ColoringWitness color_U_part3(
    const BuiltGraph& uB, std::pair<int, int> removed_edge, WitnessContext& ctx = default_witness_context())
{
    if (!uB.graph.has_edge(removed_edge.first, removed_edge.second))
        throw std::invalid_argument("color_U_part3: edge not present");
    const UStructure& u = u_structure(uB);
    std::vector<int> assign = detail::run_part3(ctx, uB, removed_edge);
    const int i = static_cast<int>(u.children.size()) + 1;
    const int K = u.children.front().r;
    ColoringWitness w{K, std::move(assign)};
    ColorConstraint c = ColorConstraint::palette(K);
    std::vector<int> low;
    for (int col = 1; col < i; ++col) low.push_back(col);
    c.restrict(active_set(uB), std::move(low));
    Graph reduced = remove_edge_copy(uB.graph, removed_edge.first, removed_edge.second);
    if (!verify_witness(reduced, w, c)) throw std::logic_error("part 3 witness failed verification");
    return w;
}

// Proper k-coloring of G_k; side-1 actives keep {1..floor(k/2)}, side-2
// actives move up to {floor(k/2)+1..k}.
inline ColoringWitness color_Gk_proper(const BuiltGraph& b, WitnessContext& ctx = default_witness_context())
{
    detail::GkSides s = detail::gk_sides(b);
    const int k = s.k;
    std::vector<int> a1 = detail::run_part1(ctx, *s.side1, active_set(*s.side1).front());
    std::vector<int> a2 = detail::run_part1(ctx, *s.side2, active_set(*s.side2).front());

    std::vector<int> out(static_cast<std::size_t>(b.graph.vertex_count()), 0);
    std::vector<int> map2(static_cast<std::size_t>(k) + 1, 0);
    for (int c = 1; c <= k - 1; ++c)
        map2[static_cast<std::size_t>(c)] = c + s.i1 <= k ? c + s.i1 : c + s.i1 - k;
    detail::write_side(out, a1, 0, detail::identity_map(k));
    detail::write_side(out, a2, s.offset2, map2);

    ColoringWitness w{k, std::move(out)};
    ColorConstraint c = ColorConstraint::palette(k);
    std::vector<int> low, high;
    for (int col = 1; col <= s.i1; ++col) low.push_back(col);
    for (int col = s.i1 + 1; col <= k; ++col) high.push_back(col);
    std::vector<int> act1 = active_set(*s.side1);
    std::vector<int> act2 = active_set(*s.side2);
    for (int& v : act2) v += s.offset2;
    c.restrict(std::move(act1), std::move(low)).restrict(std::move(act2), std::move(high));
    if (!verify_witness(b.graph, w, c)) throw std::logic_error("G_k proper witness failed verification");
    return w;
}

// Criticality coloring: proper (k-1)-coloring of G_k - e.
inline ColoringWitness color_Gk_after_removal(
    const BuiltGraph& b, std::pair<int, int> e, WitnessContext& ctx = default_witness_context())
{
    if (!b.graph.has_edge(e.first, e.second)) throw std::invalid_argument("edge not present");
    detail::GkSides s = detail::gk_sides(b);
    const int k = s.k;
    auto [x, y] = e;
    const bool x1 = x < s.offset2, y1 = y < s.offset2;

    std::vector<int> out(static_cast<std::size_t>(b.graph.vertex_count()), 0);
    if (x1 != y1) {
        // spanning edge: both sides singleton at its end-vertices, sharing
        // the single overlap color there
        int a1 = x1 ? x : y;
        int a2 = (x1 ? y : x) - s.offset2;
        std::vector<int> c1 = detail::run_part1(ctx, *s.side1, a1);
        std::vector<int> c2 = detail::run_part1(ctx, *s.side2, a2);
        std::vector<int> map2(static_cast<std::size_t>(k) + 1, 0);
        for (int c = 1; c <= k - 1; ++c) {
            if (c < s.i2)
                map2[static_cast<std::size_t>(c)] = s.i1 + c;
            else if (c == s.i2)
                map2[static_cast<std::size_t>(c)] = s.i1;
            else
                map2[static_cast<std::size_t>(c)] = c - s.i2;
        }
        detail::write_side(out, c1, 0, detail::identity_map(k));
        detail::write_side(out, c2, s.offset2, map2);
    } else {
        const BuiltGraph& hit = x1 ? *s.side1 : *s.side2;
        const BuiltGraph& other = x1 ? *s.side2 : *s.side1;
        const int ip = x1 ? s.i1 : s.i2;
        std::pair<int, int> local = x1 ? e : std::pair<int, int>{x - s.offset2, y - s.offset2};
        std::vector<int> ch = detail::run_part3(ctx, hit, local);
        std::vector<int> co = detail::run_part1(ctx, other, active_set(other).front());
        std::vector<int> mapo(static_cast<std::size_t>(k) + 1, 0);
        for (int c = 1; c <= k - 1; ++c)
            mapo[static_cast<std::size_t>(c)] = (c + ip - 2) % (k - 1) + 1;
        detail::write_side(out, ch, x1 ? 0 : s.offset2, detail::identity_map(k));
        detail::write_side(out, co, x1 ? s.offset2 : 0, mapo);
    }

    ColoringWitness w{k - 1, std::move(out)};
    Graph reduced = remove_edge_copy(b.graph, e.first, e.second);
    if (!verify_witness(reduced, w, ColorConstraint::palette(k - 1)))
        throw std::logic_error("G_k removal witness failed verification");
    return w;
}

enum class GkVariant { ProperK, AfterRemoval };

inline ColoringWitness color_Gk(const BuiltGraph& b, GkVariant variant,
    std::pair<int, int> e = {-1, -1}, WitnessContext& ctx = default_witness_context())
{
    return variant == GkVariant::ProperK ? color_Gk_proper(b, ctx) : color_Gk_after_removal(b, e, ctx);
}

// Observation-style witness for M^r: (k-1)-coloring with r colors on the
// forward set, one of which sits at a single chosen forward vertex.
inline ColoringWitness color_Mr_forward(
    const BuiltGraph& b, int forward_vertex, WitnessContext& ctx = default_witness_context())
{
    const auto* mr = std::get_if<MrStructure>(&b.structure);
    if (!mr) throw std::invalid_argument("expected an m_deleted construction");
    std::vector<int> assign = detail::mr_avoid_forward(ctx, b, forward_vertex);
    ColoringWitness w{mr->k - 1, std::move(assign)};
    ColorConstraint c = ColorConstraint::palette(mr->k - 1);
    std::vector<int> others, high;
    for (int f : mr->forward)
        if (f != forward_vertex) others.push_back(f);
    for (int col = 2; col <= mr->r; ++col) high.push_back(col);
    c.restrict(std::move(others), std::move(high)).force(forward_vertex, 1);
    if (!verify_witness(b.graph, w, c)) throw std::logic_error("M^r forward witness failed verification");
    return w;
}

// ---------------------------------------------------------------------------
// Leaf primitive definitions
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<int> crit_proper(WitnessContext& ctx, const BuiltGraph& b)
{
    if (const auto* cyc = std::get_if<CycleStructure>(&b.structure)) return cycle_proper(cyc->m);
    if (std::holds_alternative<GkStructure>(b.structure)) return color_Gk_proper(b, ctx).assignment;
    if (b.order < 1) throw std::invalid_argument("no proper-coloring rule for this construction");
    return cached_search(ctx, b, 0, 0, 0, b.graph, ColorConstraint::palette(b.order));
}

inline std::vector<int> crit_avoid_vertex(WitnessContext& ctx, const BuiltGraph& b, int v)
{
    if (const auto* cyc = std::get_if<CycleStructure>(&b.structure)) return cycle_avoid_vertex(cyc->m, v);
    if (std::holds_alternative<GkStructure>(b.structure)) return gk_avoid_vertex(ctx, b, v);
    if (b.order < 2) throw std::invalid_argument("no avoid-vertex rule for this construction");
    ColorConstraint c = ColorConstraint::palette(b.order);
    std::vector<int> others, low;
    for (int x = 0; x < b.graph.vertex_count(); ++x)
        if (x != v) others.push_back(x);
    for (int col = 1; col < b.order; ++col) low.push_back(col);
    c.restrict(std::move(others), std::move(low)).force(v, b.order);
    return cached_search(ctx, b, 1, v, 0, b.graph, c);
}

inline std::vector<int> crit_after_edge(WitnessContext& ctx, const BuiltGraph& b, std::pair<int, int> e)
{
    if (const auto* cyc = std::get_if<CycleStructure>(&b.structure)) return cycle_after_edge(cyc->m, e);
    if (std::holds_alternative<GkStructure>(b.structure))
        return color_Gk_after_removal(b, e, ctx).assignment;
    if (b.order < 2) throw std::invalid_argument("no edge-removal rule for this construction");
    Graph reduced = remove_edge_copy(b.graph, e.first, e.second);
    return cached_search(ctx, b, 2, e.first, e.second, reduced, ColorConstraint::palette(b.order - 1));
}

// Proper k-coloring of G_k with color k only at v: run the criticality
// recursion for an in-side edge at v, then lift v to the fresh color.
inline std::vector<int> gk_avoid_vertex(WitnessContext& ctx, const BuiltGraph& b, int v)
{
    GkSides s = gk_sides(b);
    const bool v1 = v < s.offset2;
    const int lo = v1 ? 0 : s.offset2;
    const int hi = v1 ? s.offset2 : b.graph.vertex_count();
    int partner = -1;
    for (int u : b.graph.neighbors(v))
        if (u >= lo && u < hi) {
            partner = u;
            break;
        }
    if (partner < 0) throw std::logic_error("G_k vertex with no in-side edge");
    std::vector<int> assign =
        color_Gk_after_removal(b, {std::min(v, partner), std::max(v, partner)}, ctx).assignment;
    assign[static_cast<std::size_t>(v)] = s.k;
    return assign;
}

inline const MrStructure& mr_of(const BuiltGraph& b)
{
    const auto* mr = std::get_if<MrStructure>(&b.structure);
    if (!mr) throw std::invalid_argument("expected an m_deleted construction");
    return *mr;
}

inline std::vector<int> mr_copy_from_base(const MrStructure& mr, const std::vector<int>& base_col)
{
    const int n = mr.base->graph.vertex_count();
    std::vector<int> assign(static_cast<std::size_t>(2 * n), 0);
    for (int v = 0; v < n; ++v) {
        assign[static_cast<std::size_t>(v)] = base_col[static_cast<std::size_t>(v)];
        assign[static_cast<std::size_t>(n + v)] = base_col[static_cast<std::size_t>(v)];
    }
    return assign;
}

inline std::vector<int> mr_proper(WitnessContext& ctx, const BuiltGraph& b)
{
    const MrStructure& mr = mr_of(b);
    if (mr.skip) return mr_copy_from_base(mr, crit_proper(ctx, *mr.base));
    ColorConstraint c = ColorConstraint::palette(mr.k - 1);
    std::vector<int> low;
    for (int col = 1; col <= mr.r; ++col) low.push_back(col);
    c.restrict(mr.forward, std::move(low));
    return cached_search(ctx, b, 3, 0, 0, b.graph, c);
}

inline std::vector<int> mr_avoid_forward(WitnessContext& ctx, const BuiltGraph& b, int fwd)
{
    const MrStructure& mr = mr_of(b);
    if (mr.skip) {
        const int n = mr.base->graph.vertex_count();
        std::vector<int> base_col = crit_avoid_vertex(ctx, *mr.base, fwd - n);
        for (int& c : base_col) {
            // move the singleton top color onto color 1
            if (c == mr.base->order)
                c = 1;
            else if (c == 1)
                c = mr.base->order;
        }
        return mr_copy_from_base(mr, base_col);
    }
    ColorConstraint c = ColorConstraint::palette(mr.k - 1);
    std::vector<int> others, high;
    for (int f : mr.forward)
        if (f != fwd) others.push_back(f);
    for (int col = 2; col <= mr.r; ++col) high.push_back(col);
    c.restrict(std::move(others), std::move(high)).force(fwd, 1);
    return cached_search(ctx, b, 4, fwd, 0, b.graph, c);
}

inline std::vector<int> mr_after_edge(WitnessContext& ctx, const BuiltGraph& b, std::pair<int, int> e)
{
    const MrStructure& mr = mr_of(b);
    const int n = mr.base->graph.vertex_count();
    if (mr.skip && std::holds_alternative<CycleStructure>(mr.base->structure)) {
        const int m = std::get<CycleStructure>(mr.base->structure).m;
        auto [x, y] = e;
        std::vector<int> assign(static_cast<std::size_t>(2 * n), 0);
        if (x < n && y < n) {
            // Type-1 removal: recolor the base path's 2s to 3 so every bar
            // fits inside {1,2}
            std::vector<int> base_col = cycle_after_edge(m, {x, y});
            for (int& c : base_col)
                if (c == 2) c = 3;
            for (int v = 0; v < n; ++v) assign[static_cast<std::size_t>(v)] = base_col[static_cast<std::size_t>(v)];
            for (int v = 0; v < n; ++v) {
                bool sees1 = false;
                for (int w : mr.base->graph.neighbors(v))
                    if (base_col[static_cast<std::size_t>(w)] == 1) sees1 = true;
                assign[static_cast<std::size_t>(n + v)] = sees1 ? 2 : 1;
            }
            return assign;
        }
        // Type-2 removal (w, bar_j): base takes 3 at the bar's partner and
        // alternates {1,2}; every bar then fits inside {1,2}
        const int bar = std::max(x, y), w = std::min(x, y);
        const int j = bar - n;
        std::vector<int> base_col = cycle_avoid_vertex(m, j);
        for (int v = 0; v < n; ++v) assign[static_cast<std::size_t>(v)] = base_col[static_cast<std::size_t>(v)];
        for (int v = 0; v < n; ++v) {
            std::uint64_t forbidden = 0;
            for (int nb : mr.base->graph.neighbors(v)) {
                if (v == j && nb == w) continue;
                forbidden |= std::uint64_t{1} << (base_col[static_cast<std::size_t>(nb)] - 1);
            }
            int chosen = !(forbidden & 1) ? 1 : 2;
            if (forbidden >> (chosen - 1) & 1)
                throw std::logic_error("doubled-cycle bar coloring failed");
            assign[static_cast<std::size_t>(n + v)] = chosen;
        }
        return assign;
    }
    ColorConstraint c = ColorConstraint::palette(mr.k - 1);
    std::vector<int> low;
    for (int col = 1; col < mr.r; ++col) low.push_back(col);
    c.restrict(mr.forward, std::move(low));
    Graph reduced = remove_edge_copy(b.graph, e.first, e.second);
    return cached_search(ctx, b, 5, e.first, e.second, reduced, c);
}

} // namespace detail

} // namespace critgraph

#endif
