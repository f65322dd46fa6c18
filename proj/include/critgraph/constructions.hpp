#ifndef CRITGRAPH_CONSTRUCTIONS_HPP
#define CRITGRAPH_CONSTRUCTIONS_HPP

#include <memory>
#include <variant>

#include <json.hpp>

#include "critgraph/colorer.hpp"
#include "critgraph/graph.hpp"

namespace critgraph {

// ---------------------------------------------------------------------------
// Recursive description of how a graph is assembled.  Serializes to JSON and
// doubles as the CLI build manifest.
// ---------------------------------------------------------------------------

enum class SpecKind {
    OddCycle,   // m
    Toft,       // m
    Mycielski,  // child
    MuQ,        // child, q
    Doubling,   // child
    MDeleted,   // child, r, k, policy
    U,          // children
    W,          // k, children (M^r specs)
    Gk,         // k, children (side 1), children2 (side 2)
    G5k,        // k, m
    Gyarfas,    // m
    Y,          // q, m
    OgtGraph,   // q, m
    Cone,       // child, q
};

struct ConstructionSpec {
    SpecKind kind = SpecKind::OddCycle;
    long long m = 0;
    long long q = 0;
    long long k = 0;
    long long r = 0;
    std::string policy; // m_deleted: "greedy" or "skip"
    std::vector<ConstructionSpec> children;
    std::vector<ConstructionSpec> children2;

    static ConstructionSpec odd_cycle(long long m) { return {SpecKind::OddCycle, m}; }
    static ConstructionSpec toft(long long m) { return {SpecKind::Toft, m}; }
    static ConstructionSpec grotzsch()
    {
        ConstructionSpec s{SpecKind::Mycielski};
        s.children.push_back(odd_cycle(5));
        return s;
    }
};

inline const char* spec_kind_name(SpecKind k)
{
    switch (k) {
    case SpecKind::OddCycle: return "odd_cycle";
    case SpecKind::Toft: return "toft";
    case SpecKind::Mycielski: return "mycielski";
    case SpecKind::MuQ: return "mu_q";
    case SpecKind::Doubling: return "doubling";
    case SpecKind::MDeleted: return "m_deleted";
    case SpecKind::U: return "u";
    case SpecKind::W: return "w";
    case SpecKind::Gk: return "gk";
    case SpecKind::G5k: return "g5k";
    case SpecKind::Gyarfas: return "gyarfas";
    case SpecKind::Y: return "y";
    case SpecKind::OgtGraph: return "ogt";
    case SpecKind::Cone: return "cone";
    }
    return "?";
}

inline SpecKind spec_kind_from_name(const std::string& s)
{
    for (SpecKind k : {SpecKind::OddCycle, SpecKind::Toft, SpecKind::Mycielski, SpecKind::MuQ,
             SpecKind::Doubling, SpecKind::MDeleted, SpecKind::U, SpecKind::W, SpecKind::Gk,
             SpecKind::G5k, SpecKind::Gyarfas, SpecKind::Y, SpecKind::OgtGraph, SpecKind::Cone})
        if (s == spec_kind_name(k)) return k;
    throw std::invalid_argument("unknown construction kind: " + s);
}

inline nlohmann::ordered_json spec_to_json(const ConstructionSpec& s)
{
    nlohmann::ordered_json j;
    j["kind"] = spec_kind_name(s.kind);
    if (s.m != 0) j["m"] = s.m;
    if (s.q != 0) j["q"] = s.q;
    if (s.k != 0) j["k"] = s.k;
    if (s.r != 0) j["r"] = s.r;
    if (!s.policy.empty()) j["policy"] = s.policy;
    if (!s.children.empty()) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& c : s.children) arr.push_back(spec_to_json(c));
        j["children"] = std::move(arr);
    }
    if (!s.children2.empty()) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& c : s.children2) arr.push_back(spec_to_json(c));
        j["children2"] = std::move(arr);
    }
    return j;
}

inline ConstructionSpec spec_from_json(const nlohmann::json& j)
{
    ConstructionSpec s;
    s.kind = spec_kind_from_name(j.at("kind").get<std::string>());
    s.m = j.value("m", 0LL);
    s.q = j.value("q", 0LL);
    s.k = j.value("k", 0LL);
    s.r = j.value("r", 0LL);
    s.policy = j.value("policy", std::string());
    if (j.contains("children"))
        for (const auto& c : j.at("children")) s.children.push_back(spec_from_json(c));
    if (j.contains("children2"))
        for (const auto& c : j.at("children2")) s.children2.push_back(spec_from_json(c));
    return s;
}

// ---------------------------------------------------------------------------
// Built graphs with the structural handles the witness generators walk.
// ---------------------------------------------------------------------------

struct BuiltGraph;
using BuiltPtr = std::shared_ptr<const BuiltGraph>;

struct CycleStructure {
    int m = 0;
};

// Layered Mycielski-type graphs: vertex (layer l, base v) has id l*n + v.
struct LayerStructure {
    BuiltPtr base;
    int q = 0;      // number of added layers
    int apex = -1;  // -1 when absent
};

// M^r: doubled (k-1)-critical base, Type-2 edges greedily deleted until
// every (k-1)-coloring needs >= r colors on the forward set and no further
// deletion preserves that.
struct MrStructure {
    BuiltPtr base;
    int k = 0;
    int r = 0;
    bool skip = false;
    std::vector<int> forward;  // ids in this graph, ascending
    std::vector<int> base_ids; // ids of the original base vertices (identity prefix)
    int removed_type2 = 0;
};

struct UChild {
    BuiltPtr built;
    int offset = 0;
    std::vector<int> plug; // global ids actives attach to; digit j selects plug[j]
    int r = 0;             // criticality order this slot provides
};

// U(S_1..S_t) / W(r_1..r_t): disjoint children plus the active product set.
// Active indexing is mixed-radix with the last child fastest-varying.
struct UStructure {
    int k = 0; // ambient palette bound: the lemma speaks about (k-1)-colorings
    bool w_mode = false;
    std::vector<UChild> children;
    int active_offset = 0;
    int active_count = 0;
    std::vector<int> radix; // |plug_j| per child
};

struct GkStructure {
    int k = 0;
    BuiltPtr side1; // U-kind
    BuiltPtr side2;
    int offset2 = 0;
};

struct GyarfasStructure {
    int m = 0;
    BuiltPtr copy; // the repeated U(4) block
    std::vector<int> offsets;
    int apex = -1;
};

struct YStructure {
    BuiltPtr mu;              // mu_q(C_m), re-roled
    std::vector<int> matched; // the independent set matched to the top layer
};

struct OgtStructure {
    int q = 0;
    int m = 0;
    BuiltPtr side; // Y(q, m); both copies identical
    int offset2 = 0;
};

struct BuiltGraph {
    Graph graph;
    ConstructionSpec spec;
    int order = 0; // chromatic number when known from the construction, else 0
    std::variant<std::monostate, CycleStructure, LayerStructure, MrStructure, UStructure,
        GkStructure, GyarfasStructure, YStructure, OgtStructure>
        structure;
};

namespace detail {

inline void prefix_tags(Graph& g, int from, int count, const std::string& prefix)
{
    for (int v = from; v < from + count; ++v) {
        const std::string& old = g.tag(v);
        g.set_tag(v, old.empty() ? prefix : prefix + "/" + old);
    }
}

inline void require_odd(long long m, long long least, const char* what)
{
    if (m < least || m % 2 == 0)
        throw std::invalid_argument(std::string(what) + ": cycle length must be odd and >= "
            + std::to_string(least) + ", got " + std::to_string(m));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Base builders
// ---------------------------------------------------------------------------

inline BuiltPtr build_odd_cycle(long long m)
{
    detail::require_odd(m, 3, "odd_cycle");
    auto out = std::make_shared<BuiltGraph>();
    out->graph = Graph(static_cast<int>(m));
    for (int i = 0; i < m; ++i) {
        out->graph.add_edge(i, static_cast<int>((i + 1) % m));
        out->graph.set_tag(i, "cyc" + std::to_string(m) + "[" + std::to_string(i) + "]");
    }
    out->spec = ConstructionSpec::odd_cycle(m);
    out->order = 3;
    out->structure = CycleStructure{static_cast<int>(m)};
    return out;
}

// mu^q: layers v^0..v^q, v^i adjacent to w^{i-1} whenever vw is an edge of
// the base.  Top layer is the active set.
inline BuiltPtr build_mu_q(const BuiltPtr& base, long long q)
{
    if (q < 1) throw std::invalid_argument("mu_q requires q >= 1");
    const Graph& b = base->graph;
    const int n = b.vertex_count();
    if (n == 0) throw std::invalid_argument("mu_q requires a nonempty base");
    for (int v = 0; v < n; ++v)
        if (b.degree(v) == 0) throw std::invalid_argument("mu_q: base has an isolated vertex");

    auto out = std::make_shared<BuiltGraph>();
    out->graph = Graph(static_cast<int>((q + 1) * n));
    for (int v = 0; v < n; ++v) {
        out->graph.set_role(v, b.role(v));
        out->graph.set_tag(v, b.tag(v));
        for (int w : b.neighbors(v))
            if (v < w) out->graph.add_edge(v, w);
    }
    for (int layer = 1; layer <= q; ++layer)
        for (int v = 0; v < n; ++v) {
            int id = layer * n + v;
            out->graph.set_role(id, layer == q ? Role::active() : Role::forward());
            out->graph.set_tag(id, "l" + std::to_string(layer) + "/" + b.tag(v));
            for (int w : b.neighbors(v)) out->graph.add_edge(id, (layer - 1) * n + w);
        }
    out->spec = ConstructionSpec{SpecKind::MuQ};
    out->spec.q = q;
    out->spec.children.push_back(base->spec);
    out->structure = LayerStructure{base, static_cast<int>(q), -1};
    return out;
}

inline BuiltPtr build_doubling(const BuiltPtr& base)
{
    BuiltPtr mu = build_mu_q(base, 1);
    auto out = std::make_shared<BuiltGraph>(*mu);
    const int n = base->graph.vertex_count();
    for (int v = 0; v < n; ++v) out->graph.set_role(v, Role::base());
    for (int v = n; v < 2 * n; ++v) out->graph.set_role(v, Role::forward());
    out->spec = ConstructionSpec{SpecKind::Doubling};
    out->spec.children.push_back(base->spec);
    out->order = base->order; // the doubled graph is (k-1)-colorable and contains the base
    return out;
}

inline BuiltPtr build_cone(const BuiltPtr& base, long long q)
{
    BuiltPtr mu = build_mu_q(base, q);
    auto out = std::make_shared<BuiltGraph>();
    const int n = mu->graph.vertex_count();
    out->graph = Graph(n + 1);
    for (int v = 0; v < n; ++v) {
        out->graph.set_role(v, mu->graph.role(v));
        out->graph.set_tag(v, mu->graph.tag(v));
        for (int w : mu->graph.neighbors(v))
            if (v < w) out->graph.add_edge(v, w);
    }
    out->graph.set_role(n, Role::apex());
    out->graph.set_tag(n, "apex");
    const int bn = base->graph.vertex_count();
    for (int v = 0; v < bn; ++v) out->graph.add_edge(n, static_cast<int>((q)*bn + v));
    out->spec = ConstructionSpec{SpecKind::Cone};
    out->spec.q = q;
    out->spec.children.push_back(base->spec);
    out->structure = LayerStructure{base, static_cast<int>(q), n};
    return out;
}

inline BuiltPtr build_mycielski(const BuiltPtr& base)
{
    BuiltPtr cone = build_cone(base, 1);
    auto out = std::make_shared<BuiltGraph>(*cone);
    const int n = base->graph.vertex_count();
    for (int v = n; v < 2 * n; ++v) out->graph.set_role(v, Role::forward());
    out->spec = ConstructionSpec{SpecKind::Mycielski};
    out->spec.children.push_back(base->spec);
    if (base->order > 0) out->order = base->order + 1;
    return out;
}

inline BuiltPtr build_grotzsch() { return build_mycielski(build_odd_cycle(5)); }

// ---------------------------------------------------------------------------
// M^r by deterministic greedy deletion
// ---------------------------------------------------------------------------

namespace detail {

// Would `g` minus one more edge still force >= r colors on the forward set
// in every (k-1)-coloring?  Exact; Unknown propagates as an error.
inline bool forward_min_at_least(const Graph& g, const std::vector<int>& forward, int k, int r,
    const Budget& budget)
{
    if (r <= 1) return true;
    std::vector<int> palette(static_cast<std::size_t>(r - 1));
    for (int i = 0; i < r - 1; ++i) palette[static_cast<std::size_t>(i)] = i + 1;
    ColorConstraint c = ColorConstraint::palette(k - 1);
    c.restrict(forward, palette);
    DecideResult d = decide_colorable(g, c, budget);
    if (d.outcome == Outcome::Unknown)
        throw std::runtime_error("m_deleted: colorability budget exhausted");
    return d.outcome == Outcome::No;
}

} // namespace detail

inline BuiltPtr build_m_deleted(
    const BuiltPtr& base, long long r, long long k, const std::string& policy, const Budget& budget = {})
{
    if (r < 2 || r > k - 1)
        throw std::invalid_argument("m_deleted requires 2 <= r <= k-1");
    if (policy != "greedy" && policy != "skip")
        throw std::invalid_argument("m_deleted: policy must be 'greedy' or 'skip'");
    if (policy == "skip" && r != k - 1)
        throw std::invalid_argument("m_deleted: the skip policy is valid only for r = k-1");
    if (base->order != k - 1)
        throw std::invalid_argument("m_deleted: base must be a (k-1)-critical catalog graph");

    BuiltPtr doubled = build_doubling(base);
    const int n = base->graph.vertex_count();

    auto out = std::make_shared<BuiltGraph>();
    out->spec = ConstructionSpec{SpecKind::MDeleted};
    out->spec.r = r;
    out->spec.k = k;
    out->spec.policy = policy;
    out->spec.children.push_back(base->spec);
    out->order = static_cast<int>(r);

    MrStructure str;
    str.base = base;
    str.k = static_cast<int>(k);
    str.r = static_cast<int>(r);
    str.skip = policy == "skip";
    for (int v = 0; v < n; ++v) str.base_ids.push_back(v);

    if (policy == "skip") {
        out->graph = doubled->graph;
        for (int v = n; v < 2 * n; ++v) str.forward.push_back(v);
        str.removed_type2 = 0;
        out->structure = std::move(str);
        return out;
    }

    Graph g = doubled->graph;
    std::vector<int> forward;
    for (int v = n; v < g.vertex_count(); ++v) forward.push_back(v);
    if (!detail::forward_min_at_least(g, forward, static_cast<int>(k), static_cast<int>(r), budget))
        throw std::runtime_error("m_deleted: doubled graph does not force r forward colors");

    int removed = 0;
    bool progress = true;
    while (progress) {
        progress = false;
        // Type-2 edges ascending; restart after every removal since ids
        // compact when a forward vertex is discarded.
        for (auto [u, v] : g.edges()) {
            bool fwd_u = g.role(u).kind == RoleKind::Forward;
            bool fwd_v = g.role(v).kind == RoleKind::Forward;
            if (fwd_u == fwd_v) continue; // Type-1 or impossible
            Graph candidate = remove_edge_copy(g, u, v);
            std::vector<int> fwd;
            for (int x = 0; x < candidate.vertex_count(); ++x)
                if (candidate.role(x).kind == RoleKind::Forward) fwd.push_back(x);
            if (!detail::forward_min_at_least(
                    candidate, fwd, static_cast<int>(k), static_cast<int>(r), budget))
                continue;
            // Commit; drop any forward vertex this isolated.
            ++removed;
            std::vector<int> keep;
            for (int x = 0; x < candidate.vertex_count(); ++x)
                if (candidate.role(x).kind != RoleKind::Forward || candidate.degree(x) > 0)
                    keep.push_back(x);
            g = induced_subgraph(candidate, keep).graph;
            progress = true;
            break;
        }
    }

    out->graph = g;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.role(v).kind == RoleKind::Forward) str.forward.push_back(v);
    str.removed_type2 = removed;
    out->structure = std::move(str);
    return out;
}

// ---------------------------------------------------------------------------
// U / W pasting
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<int> plug_of(const BuiltGraph& child)
{
    if (const auto* mr = std::get_if<MrStructure>(&child.structure)) return mr->forward;
    if (const auto* y = std::get_if<LayerStructure>(&child.structure); y && y->apex < 0 && y->q >= 1) {
        // layered child used as a W-style slot: plug is the top layer
        std::vector<int> plug;
        int base_n = y->base->graph.vertex_count();
        for (int v = 0; v < base_n; ++v) plug.push_back(y->q * base_n + v);
        return plug;
    }
    std::vector<int> plug(static_cast<std::size_t>(child.graph.vertex_count()));
    for (int v = 0; v < child.graph.vertex_count(); ++v) plug[static_cast<std::size_t>(v)] = v;
    return plug;
}

} // namespace detail

// Pastes the children to the independent product set A = prod(plug_i); each
// active vertex is adjacent to its coordinate in every child.
inline BuiltPtr build_U(const std::vector<BuiltPtr>& children, int ambient_k = 0)
{
    if (children.empty()) throw std::invalid_argument("build_U requires at least one child");

    auto out = std::make_shared<BuiltGraph>();
    UStructure str;
    str.k = ambient_k;

    std::vector<Graph> graphs;
    for (const auto& c : children) graphs.push_back(c->graph);
    UnionResult un = disjoint_union(graphs);

    long long active_count = 1;
    for (std::size_t i = 0; i < children.size(); ++i) {
        UChild uc;
        uc.built = children[i];
        uc.offset = un.offsets[i];
        std::vector<int> plug = detail::plug_of(*children[i]);
        if (plug.empty()) throw std::invalid_argument("build_U: child has an empty plug set");
        for (int& v : plug) v += un.offsets[i];
        uc.plug = std::move(plug);
        uc.r = children[i]->order;
        str.w_mode = str.w_mode || std::holds_alternative<MrStructure>(children[i]->structure);
        str.radix.push_back(static_cast<int>(uc.plug.size()));
        active_count *= static_cast<long long>(uc.plug.size());
        str.children.push_back(std::move(uc));
    }
    if (active_count > 2'000'000) throw std::invalid_argument("build_U: active set infeasibly large");

    const int structural = un.graph.vertex_count();
    Graph g(structural + static_cast<int>(active_count));
    for (int v = 0; v < structural; ++v) {
        g.set_tag(v, un.graph.tag(v));
        for (int w : un.graph.neighbors(v))
            if (v < w) g.add_edge(v, w);
    }
    // Child roles: catalog children become structural layers; M^r children
    // keep their base/forward split so the plug stays addressable.
    for (std::size_t i = 0; i < str.children.size(); ++i) {
        const UChild& uc = str.children[i];
        const int count = uc.built->graph.vertex_count();
        if (!std::holds_alternative<MrStructure>(uc.built->structure)
            && !std::holds_alternative<LayerStructure>(uc.built->structure)) {
            for (int v = uc.offset; v < uc.offset + count; ++v)
                g.set_role(v, Role::structural(static_cast<int>(i) + 1));
        } else {
            for (int v = uc.offset; v < uc.offset + count; ++v)
                g.set_role(v, un.graph.role(v));
        }
        detail::prefix_tags(g, uc.offset, count, "s" + std::to_string(i + 1));
    }

    str.active_offset = structural;
    str.active_count = static_cast<int>(active_count);
    const int t = static_cast<int>(str.children.size());
    for (int idx = 0; idx < active_count; ++idx) {
        int id = structural + idx;
        g.set_role(id, Role::active());
        g.set_tag(id, "a[" + std::to_string(idx) + "]");
        int rest = idx;
        for (int j = t - 1; j >= 0; --j) {
            int digit = rest % str.radix[static_cast<std::size_t>(j)];
            rest /= str.radix[static_cast<std::size_t>(j)];
            g.add_edge(id, str.children[static_cast<std::size_t>(j)].plug[static_cast<std::size_t>(digit)]);
        }
    }

    out->graph = std::move(g);
    out->spec = ConstructionSpec{str.w_mode ? SpecKind::W : SpecKind::U};
    out->spec.k = ambient_k;
    for (const auto& c : children) out->spec.children.push_back(c->spec);
    out->structure = std::move(str);
    return out;
}

inline const UStructure& u_structure(const BuiltGraph& b)
{
    const auto* u = std::get_if<UStructure>(&b.structure);
    if (!u) throw std::invalid_argument("expected a U/W construction");
    return *u;
}

inline std::vector<int> active_set(const BuiltGraph& b)
{
    const UStructure& u = u_structure(b);
    std::vector<int> out(static_cast<std::size_t>(u.active_count));
    for (int i = 0; i < u.active_count; ++i) out[static_cast<std::size_t>(i)] = u.active_offset + i;
    return out;
}

inline int active_id_from_digits(const UStructure& u, std::span<const int> digits)
{
    int idx = 0;
    for (std::size_t j = 0; j < u.radix.size(); ++j)
        idx = idx * u.radix[j] + digits[j];
    return u.active_offset + idx;
}

inline std::vector<int> active_digits(const UStructure& u, int active_global)
{
    int idx = active_global - u.active_offset;
    std::vector<int> digits(u.radix.size(), 0);
    for (int j = static_cast<int>(u.radix.size()) - 1; j >= 0; --j) {
        digits[static_cast<std::size_t>(j)] = idx % u.radix[static_cast<std::size_t>(j)];
        idx /= u.radix[static_cast<std::size_t>(j)];
    }
    return digits;
}

// ---------------------------------------------------------------------------
// G_k and Toft
// ---------------------------------------------------------------------------

namespace detail {

inline BuiltPtr join_two_sides(BuiltPtr side1, BuiltPtr side2, ConstructionSpec spec, int k)
{
    UnionResult un = disjoint_union(std::vector<Graph>{side1->graph, side2->graph});
    Graph g = std::move(un.graph);
    detail::prefix_tags(g, 0, side1->graph.vertex_count(), "c1");
    detail::prefix_tags(g, un.offsets[1], side2->graph.vertex_count(), "c2");

    std::vector<int> a1 = active_set(*side1);
    std::vector<int> a2 = active_set(*side2);
    for (int& v : a2) v += un.offsets[1];
    if (!join_preserves_triangle_freeness(g, a1, a2))
        throw std::logic_error("active-set join would create a triangle");
    join_complete_bipartite(g, a1, a2);

    auto out = std::make_shared<BuiltGraph>();
    out->graph = std::move(g);
    out->spec = std::move(spec);
    out->order = k;
    out->structure = GkStructure{k, std::move(side1), std::move(side2), un.offsets[1]};
    return out;
}

inline void check_slot_orders(const std::vector<BuiltPtr>& children, int k, int last_r, const char* side)
{
    // U^{k-1}_{last_r} takes slots k-1, k-2, ..., last_r in order.
    if (static_cast<int>(children.size()) != k - last_r)
        throw std::invalid_argument(std::string(side) + ": expected " + std::to_string(k - last_r)
            + " base graphs, got " + std::to_string(children.size()));
    for (std::size_t i = 0; i < children.size(); ++i)
        if (children[i]->order != k - 1 - static_cast<int>(i))
            throw std::invalid_argument(std::string(side) + ": slot " + std::to_string(i + 1)
                + " needs a " + std::to_string(k - 1 - static_cast<int>(i)) + "-critical graph");
}

} // namespace detail

// G_k = U^{k-1}_{ceil(k/2)+1} joined to U^{k-1}_{floor(k/2)+1} across their
// active sets.  For k = 4 with odd-cycle bases this is the Toft graph.
inline BuiltPtr build_gk_from(
    int k, const std::vector<BuiltPtr>& c1_bases, const std::vector<BuiltPtr>& c2_bases)
{
    if (k < 4) throw std::invalid_argument("build_Gk requires k >= 4");
    detail::check_slot_orders(c1_bases, k, (k + 1) / 2 + 1, "side 1");
    detail::check_slot_orders(c2_bases, k, k / 2 + 1, "side 2");
    ConstructionSpec spec{SpecKind::Gk};
    spec.k = k;
    for (const auto& c : c1_bases) spec.children.push_back(c->spec);
    for (const auto& c : c2_bases) spec.children2.push_back(c->spec);
    BuiltPtr side1 = build_U(c1_bases, k);
    BuiltPtr side2 = build_U(c2_bases, k);
    return detail::join_two_sides(std::move(side1), std::move(side2), std::move(spec), k);
}

inline BuiltPtr build_toft(long long m)
{
    detail::require_odd(m, 5, "toft");
    BuiltPtr g = build_gk_from(4, {build_odd_cycle(m)}, {build_odd_cycle(m)});
    auto out = std::make_shared<BuiltGraph>(*g);
    out->spec = ConstructionSpec::toft(m);
    return out;
}

// ---------------------------------------------------------------------------
// Catalog of base critical graphs
// ---------------------------------------------------------------------------

enum class CatalogMode { TriangleFree, PentagonFree };

BuiltPtr build_g5k(int k, long long m, const Budget& budget);

inline BuiltPtr catalog_base(CatalogMode mode, int r, int size_index, const Budget& budget = {})
{
    if (size_index < 0) throw std::invalid_argument("catalog size index must be >= 0");
    if (mode == CatalogMode::TriangleFree) {
        switch (r) {
        case 3: return build_odd_cycle(5 + 2LL * size_index);
        case 4: return size_index == 0 ? build_grotzsch() : build_toft(3 + 2LL * size_index);
        case 5:
            return build_gk_from(5, {catalog_base(mode, 4, size_index, budget)},
                {catalog_base(mode, 4, size_index, budget), build_odd_cycle(5)});
        case 6: {
            auto five = catalog_base(mode, 5, 0, budget);
            auto four1 = catalog_base(mode, 4, size_index, budget);
            auto four2 = catalog_base(mode, 4, size_index, budget);
            return build_gk_from(6, {five, four1}, {catalog_base(mode, 5, 0, budget), four2});
        }
        default:
            throw std::invalid_argument(
                "catalog: no desk-scale triangle-free " + std::to_string(r) + "-critical family");
        }
    }
    switch (r) {
    case 3: return build_odd_cycle(7 + 2LL * size_index);
    case 4: return build_g5k(4, 7 + 2LL * size_index, budget);
    case 5: return build_g5k(5, 7 + 2LL * size_index, budget);
    default:
        throw std::invalid_argument(
            "catalog: no desk-scale pentagon-free " + std::to_string(r) + "-critical family");
    }
}

inline BuiltPtr build_gk(int k, const Budget& budget = {})
{
    std::vector<BuiltPtr> c1, c2;
    for (int r = k - 1; r >= (k + 1) / 2 + 1; --r) c1.push_back(catalog_base(CatalogMode::TriangleFree, r, 0, budget));
    for (int r = k - 1; r >= k / 2 + 1; --r) c2.push_back(catalog_base(CatalogMode::TriangleFree, r, 0, budget));
    return build_gk_from(k, c1, c2);
}

// ---------------------------------------------------------------------------
// Gyarfas chain
// ---------------------------------------------------------------------------

inline BuiltPtr build_gyarfas(long long m)
{
    detail::require_odd(m, 5, "gyarfas");
    BuiltPtr block = build_U({build_toft(m)}, 5);
    std::vector<Graph> copies(4, block->graph);
    UnionResult un = disjoint_union(copies);
    Graph g(un.graph.vertex_count() + 1);
    for (int v = 0; v < un.graph.vertex_count(); ++v) {
        g.set_role(v, un.graph.role(v));
        g.set_tag(v, un.graph.tag(v));
        for (int w : un.graph.neighbors(v))
            if (v < w) g.add_edge(v, w);
    }
    for (int i = 0; i < 4; ++i)
        detail::prefix_tags(g, un.offsets[static_cast<std::size_t>(i)], block->graph.vertex_count(),
            "t" + std::to_string(i + 1));
    const int apex = un.graph.vertex_count();
    g.set_role(apex, Role::apex());
    g.set_tag(apex, "x");

    std::vector<std::vector<int>> actives;
    for (int i = 0; i < 4; ++i) {
        std::vector<int> a = active_set(*block);
        for (int& v : a) v += un.offsets[static_cast<std::size_t>(i)];
        actives.push_back(std::move(a));
    }
    for (int i = 0; i < 3; ++i) {
        if (!join_preserves_triangle_freeness(g, actives[static_cast<std::size_t>(i)],
                actives[static_cast<std::size_t>(i) + 1]))
            throw std::logic_error("gyarfas: chain join would create a triangle");
        join_complete_bipartite(g, actives[static_cast<std::size_t>(i)], actives[static_cast<std::size_t>(i) + 1]);
    }
    std::vector<int> apex_only{apex};
    for (int side : {0, 3}) {
        if (!join_preserves_triangle_freeness(g, apex_only, actives[static_cast<std::size_t>(side)]))
            throw std::logic_error("gyarfas: apex join would create a triangle");
        join_complete_bipartite(g, apex_only, actives[static_cast<std::size_t>(side)]);
    }

    auto out = std::make_shared<BuiltGraph>();
    out->graph = std::move(g);
    out->spec = ConstructionSpec{SpecKind::Gyarfas};
    out->spec.m = m;
    out->order = 5;
    out->structure = GyarfasStructure{static_cast<int>(m), block, un.offsets, apex};
    return out;
}

// ---------------------------------------------------------------------------
// Pentagon-free G^5_k
// ---------------------------------------------------------------------------

inline BuiltPtr build_g5k(int k, long long m, const Budget& budget = {})
{
    detail::require_odd(m, 7, "g5k");
    if (k == 4) {
        BuiltPtr base = build_odd_cycle(m);
        BuiltPtr side1 = build_U({build_m_deleted(base, 3, 4, "skip", budget)}, 4);
        BuiltPtr side2 = build_U({build_m_deleted(base, 3, 4, "skip", budget)}, 4);
        ConstructionSpec spec{SpecKind::G5k};
        spec.k = 4;
        spec.m = m;
        return detail::join_two_sides(std::move(side1), std::move(side2), std::move(spec), 4);
    }
    if (k == 5) {
        BuiltPtr base = build_g5k(4, m, budget);
        BuiltPtr side1 = build_U({build_m_deleted(base, 4, 5, "skip", budget)}, 5);
        BuiltPtr side2 = build_U({build_m_deleted(base, 4, 5, "skip", budget),
                                     build_m_deleted(base, 3, 5, "greedy", budget)},
            5);
        ConstructionSpec spec{SpecKind::G5k};
        spec.k = 5;
        spec.m = m;
        return detail::join_two_sides(std::move(side1), std::move(side2), std::move(spec), 5);
    }
    throw std::invalid_argument(
        "build_G5k: k >= 6 needs solver-driven deletion over a doubled G^5_5; out of desk scale");
}

// ---------------------------------------------------------------------------
// Odd-girth family for k = 4
// ---------------------------------------------------------------------------

inline BuiltPtr build_y(long long q, long long m)
{
    if (q < 1) throw std::invalid_argument("y: q must be >= 1");
    if (m % 2 == 0 || m < 2 * q + 5)
        throw std::invalid_argument("y: cycle length must be odd and >= 2q+5");
    BuiltPtr mu = build_mu_q(build_odd_cycle(m), q);
    auto relabeled = std::make_shared<BuiltGraph>(*mu);
    const int bn = static_cast<int>(m);
    for (int v = 0; v < bn * static_cast<int>(q); ++v) relabeled->graph.set_role(v, Role::base());
    for (int v = bn * static_cast<int>(q); v < relabeled->graph.vertex_count(); ++v)
        relabeled->graph.set_role(v, Role::forward());

    const int mun = relabeled->graph.vertex_count();
    Graph g(mun + bn);
    for (int v = 0; v < mun; ++v) {
        g.set_role(v, relabeled->graph.role(v));
        g.set_tag(v, relabeled->graph.tag(v));
        for (int w : relabeled->graph.neighbors(v))
            if (v < w) g.add_edge(v, w);
    }
    YStructure str;
    str.mu = relabeled;
    for (int i = 0; i < bn; ++i) {
        int id = mun + i;
        g.set_role(id, Role::active());
        g.set_tag(id, "a[" + std::to_string(i) + "]");
        g.add_edge(id, static_cast<int>(q) * bn + i);
        str.matched.push_back(id);
    }
    auto out = std::make_shared<BuiltGraph>();
    out->graph = std::move(g);
    out->spec = ConstructionSpec{SpecKind::Y};
    out->spec.q = q;
    out->spec.m = m;
    out->structure = std::move(str);
    return out;
}

inline BuiltPtr build_ogt_graph(long long q, long long m)
{
    BuiltPtr side = build_y(q, m);
    UnionResult un = disjoint_union(std::vector<Graph>{side->graph, side->graph});
    Graph g = std::move(un.graph);
    detail::prefix_tags(g, 0, side->graph.vertex_count(), "c1");
    detail::prefix_tags(g, un.offsets[1], side->graph.vertex_count(), "c2");
    const auto& y = std::get<YStructure>(side->structure);
    std::vector<int> a1 = y.matched;
    std::vector<int> a2 = y.matched;
    for (int& v : a2) v += un.offsets[1];
    if (!join_preserves_triangle_freeness(g, a1, a2))
        throw std::logic_error("ogt: join would create a triangle");
    join_complete_bipartite(g, a1, a2);

    auto out = std::make_shared<BuiltGraph>();
    out->graph = std::move(g);
    out->spec = ConstructionSpec{SpecKind::OgtGraph};
    out->spec.q = q;
    out->spec.m = m;
    out->order = 4;
    out->structure = OgtStructure{static_cast<int>(q), static_cast<int>(m), side, un.offsets[1]};
    return out;
}

// ---------------------------------------------------------------------------
// Build from a serialized spec
// ---------------------------------------------------------------------------

inline BuiltPtr build_from_spec(const ConstructionSpec& s, const Budget& budget = {})
{
    switch (s.kind) {
    case SpecKind::OddCycle: return build_odd_cycle(s.m);
    case SpecKind::Toft: return build_toft(s.m);
    case SpecKind::Mycielski: return build_mycielski(build_from_spec(s.children.at(0), budget));
    case SpecKind::MuQ: return build_mu_q(build_from_spec(s.children.at(0), budget), s.q);
    case SpecKind::Doubling: return build_doubling(build_from_spec(s.children.at(0), budget));
    case SpecKind::MDeleted:
        return build_m_deleted(build_from_spec(s.children.at(0), budget), s.r, s.k, s.policy, budget);
    case SpecKind::U:
    case SpecKind::W: {
        std::vector<BuiltPtr> children;
        for (const auto& c : s.children) children.push_back(build_from_spec(c, budget));
        return build_U(children, static_cast<int>(s.k));
    }
    case SpecKind::Gk: {
        std::vector<BuiltPtr> c1, c2;
        for (const auto& c : s.children) c1.push_back(build_from_spec(c, budget));
        for (const auto& c : s.children2) c2.push_back(build_from_spec(c, budget));
        if (c1.empty() && c2.empty()) return build_gk(static_cast<int>(s.k), budget);
        return build_gk_from(static_cast<int>(s.k), c1, c2);
    }
    case SpecKind::G5k: return build_g5k(static_cast<int>(s.k), s.m, budget);
    case SpecKind::Gyarfas: return build_gyarfas(s.m);
    case SpecKind::Y: return build_y(s.q, s.m);
    case SpecKind::OgtGraph: return build_ogt_graph(s.q, s.m);
    case SpecKind::Cone: return build_cone(build_from_spec(s.children.at(0), budget), s.q);
    }
    throw std::invalid_argument("bad construction spec");
}

} // namespace critgraph

#endif
