#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "critgraph/witnesses.hpp"
#include "oracles.hpp"

using namespace critgraph;

namespace {

int colors_on(const ColoringWitness& w, const std::vector<int>& subset)
{
    std::set<int> seen;
    for (int v : subset) seen.insert(w.assignment[static_cast<std::size_t>(v)]);
    return static_cast<int>(seen.size());
}

} // namespace

TEST_CASE("avoid-vertex coloring on odd cycles")
{
    BuiltPtr c5 = build_odd_cycle(5);
    ColoringWitness w = color_avoiding_vertex(*c5, 0);
    CHECK(w.assignment == std::vector<int>{3, 1, 2, 1, 2});
    for (int v = 0; v < 5; ++v) {
        ColoringWitness wv = color_avoiding_vertex(*c5, v);
        CHECK(wv.assignment[static_cast<std::size_t>(v)] == 3);
    }
}

TEST_CASE("avoid-vertex coloring on search-backed and recursive graphs")
{
    WitnessContext ctx;
    BuiltPtr grotzsch = build_grotzsch();
    // apex choice
    ColoringWitness wa = color_avoiding_vertex(*grotzsch, 10, ctx);
    CHECK(wa.assignment[10] == 4);

    BuiltPtr toft = build_toft(5);
    for (int v : {0, 3, 5, 12, 19}) {
        ColoringWitness w = color_avoiding_vertex(*toft, v, ctx);
        CHECK(w.assignment[static_cast<std::size_t>(v)] == 4);
        for (int u = 0; u < 20; ++u)
            if (u != v) CHECK(w.assignment[static_cast<std::size_t>(u)] != 4);
    }
}

TEST_CASE("extend_to_active always succeeds with t+1 palette colors")
{
    WitnessContext ctx;
    BuiltPtr u = build_U({build_grotzsch(), build_odd_cycle(5)}, 5);
    std::mt19937_64 rng(5);

    int failures_small = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        // random proper child colorings out of the solver
        ColorConstraint any4 = ColorConstraint::palette(4);
        any4.force(static_cast<int>(rng() % 11), 1 + static_cast<int>(rng() % 4));
        auto g_col = decide_colorable(build_grotzsch()->graph, any4);
        if (g_col.outcome != Outcome::Yes) continue;
        ColorConstraint any3 = ColorConstraint::palette(4);
        any3.force(static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 4));
        auto c_col = decide_colorable(build_odd_cycle(5)->graph, any3);
        if (c_col.outcome != Outcome::Yes) continue;
        std::vector<std::vector<int>> children{g_col.witness->assignment, c_col.witness->assignment};

        // palette of size t+1 = 3 never fails
        ColoringWitness w = extend_to_active(*u, children, {1, 2, 3});
        CHECK(w.assignment.size() == 71);

        // a palette of size t may fail
        try {
            extend_to_active(*u, children, {1, 2});
        } catch (const std::runtime_error&) {
            ++failures_small;
        }
    }
    CHECK(failures_small > 0);
}

TEST_CASE("part 1 on the U(4) side of the Toft graph")
{
    WitnessContext ctx;
    BuiltPtr u = build_U({build_toft(5)}, 5);
    std::vector<int> actives = active_set(*u);
    ColoringWitness w = color_U_part1(*u, actives[3], ctx);
    CHECK(w.k == 4);
    CHECK(colors_on(w, actives) == 2);
    CHECK(w.assignment[static_cast<std::size_t>(actives[3])] == 2);
    for (int a : actives)
        if (a != actives[3]) CHECK(w.assignment[static_cast<std::size_t>(a)] == 1);
}

TEST_CASE("part 1 on U(Grotzsch, C5)")
{
    WitnessContext ctx;
    BuiltPtr u = build_U({build_grotzsch(), build_odd_cycle(5)}, 5);
    std::vector<int> actives = active_set(*u);

    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        int chosen = actives[static_cast<std::size_t>(rng() % actives.size())];
        ColoringWitness w = color_U_part1(*u, chosen, ctx);
        CHECK(w.k == 4);
        CHECK(colors_on(w, actives) <= 3);
        CHECK(w.assignment[static_cast<std::size_t>(chosen)] == 3);
        for (int a : actives)
            if (a != chosen) CHECK(w.assignment[static_cast<std::size_t>(a)] < 3);
    }
}

TEST_CASE("part 1 agrees with the exact minimum (setcolor parts 1 and 2)")
{
    WitnessContext ctx;
    BuiltPtr u = build_U({build_grotzsch(), build_odd_cycle(5)}, 5);
    std::vector<int> actives = active_set(*u);
    // the constructive witness achieves i colors, the solver proves i is least
    ColoringWitness w = color_U_part1(*u, actives[0], ctx);
    CHECK(colors_on(w, actives) == 3);
    auto min = min_colors_on_subset(u->graph, 4, actives);
    REQUIRE(min.exact);
    CHECK(min.value() == 3);
}

TEST_CASE("part 3 covers every edge class of U(Grotzsch, C5)")
{
    WitnessContext ctx;
    BuiltPtr u = build_U({build_grotzsch(), build_odd_cycle(5)}, 5);
    std::vector<int> actives = active_set(*u);
    for (auto e : u->graph.edges()) {
        ColoringWitness w = color_U_part3(*u, e, ctx);
        CHECK(w.k == 4);
        CHECK(colors_on(w, actives) <= 2);
    }
}

TEST_CASE("part 3 on a matching edge of the U(4) side")
{
    WitnessContext ctx;
    BuiltPtr u = build_U({build_toft(5)}, 5);
    std::vector<int> actives = active_set(*u);
    int a = actives[7];
    int partner = u->graph.neighbors(a)[0];
    ColoringWitness w = color_U_part3(*u, {std::min(a, partner), std::max(a, partner)}, ctx);
    CHECK(colors_on(w, actives) == 1); // i - 1 = 1
}

TEST_CASE("proper k-coloring of the Toft graph splits the active palettes")
{
    WitnessContext ctx;
    BuiltPtr t = build_toft(5);
    ColoringWitness w = color_Gk_proper(*t, ctx);
    CHECK(w.k == 4);
    const auto& s = std::get<GkStructure>(t->structure);
    std::vector<int> a1 = active_set(*s.side1);
    std::vector<int> a2 = active_set(*s.side2);
    for (int& v : a2) v += s.offset2;
    for (int v : a1) CHECK(w.assignment[static_cast<std::size_t>(v)] <= 2);
    for (int v : a2) CHECK(w.assignment[static_cast<std::size_t>(v)] >= 3);
}

TEST_CASE("after-removal witnesses certify the removable direction for all of Toft(5)")
{
    WitnessContext ctx;
    BuiltPtr t = build_toft(5);
    for (auto e : t->graph.edges()) {
        ColoringWitness w = color_Gk_after_removal(*t, e, ctx);
        CHECK(w.k == 3);
        // agreement with the solver where both run
        Graph reduced = remove_edge_copy(t->graph, e.first, e.second);
        CHECK(decide_colorable(reduced, ColorConstraint::palette(3)).outcome == Outcome::Yes);
    }
}

TEST_CASE("after-removal witnesses on the 165-vertex G5")
{
    WitnessContext ctx;
    BuiltPtr g5 = build_gk_from(5, {build_toft(5)}, {build_toft(5), build_odd_cycle(5)});
    const auto& s = std::get<GkStructure>(g5->structure);
    std::vector<int> a1 = active_set(*s.side1);
    std::vector<int> a2 = active_set(*s.side2);

    // a spanning (bipartite) edge
    std::pair<int, int> block_edge{a1[4], a2[13] + s.offset2};
    REQUIRE(g5->graph.has_edge(block_edge.first, block_edge.second));
    ColoringWitness w = color_Gk_after_removal(*g5, block_edge, ctx);
    CHECK(w.k == 4);

    // one edge from each side
    std::mt19937_64 rng(11);
    auto edges = g5->graph.edges();
    for (int trial = 0; trial < 25; ++trial) {
        auto e = edges[rng() % edges.size()];
        ColoringWitness we = color_Gk_after_removal(*g5, e, ctx);
        CHECK(we.k == 4);
    }
}

TEST_CASE("proper coloring witnesses scale to G5 and G6")
{
    WitnessContext ctx;
    BuiltPtr g5 = build_gk_from(5, {build_toft(5)}, {build_toft(5), build_odd_cycle(5)});
    ColoringWitness w5 = color_Gk_proper(*g5, ctx);
    CHECK(w5.k == 5);

    BuiltPtr g6 = build_gk(6);
    ColoringWitness w6 = color_Gk_proper(*g6, ctx);
    CHECK(w6.k == 6);
    CHECK(static_cast<int>(w6.assignment.size()) == g6->graph.vertex_count());
}

TEST_CASE("W-mode witnesses on the pentagon-free G5_4")
{
    WitnessContext ctx;
    BuiltPtr g = build_g5k(4, 7);
    ColoringWitness proper = color_Gk_proper(*g, ctx);
    CHECK(proper.k == 4);
    for (auto e : g->graph.edges()) {
        ColoringWitness w = color_Gk_after_removal(*g, e, ctx);
        CHECK(w.k == 3);
    }
}

TEST_CASE("W-mode witnesses scale with the cycle length")
{
    WitnessContext ctx;
    BuiltPtr g = build_g5k(4, 31); // 186 vertices, no search at this scale
    ColoringWitness proper = color_Gk_proper(*g, ctx);
    CHECK(proper.k == 4);
    std::mt19937_64 rng(3);
    auto edges = g->graph.edges();
    for (int trial = 0; trial < 40; ++trial) {
        auto e = edges[rng() % edges.size()];
        ColoringWitness w = color_Gk_after_removal(*g, e, ctx);
        CHECK(w.k == 3);
    }
}

TEST_CASE("M^r forward witness: r colors with a chosen singleton")
{
    WitnessContext ctx;
    BuiltPtr m2 = build_m_deleted(build_odd_cycle(7), 2, 4, "greedy");
    const auto& mr = std::get<MrStructure>(m2->structure);
    for (int f : mr.forward) {
        ColoringWitness w = color_Mr_forward(*m2, f, ctx);
        CHECK(w.k == 3);
        CHECK(colors_on(w, mr.forward) <= 2);
        CHECK(w.assignment[static_cast<std::size_t>(f)] == 1);
    }
}

TEST_CASE("witness errors")
{
    WitnessContext ctx;
    BuiltPtr u = build_U({build_toft(5)}, 5);
    CHECK_THROWS_AS(color_U_part3(*u, {0, 39}, ctx), std::invalid_argument);
    BuiltPtr c5 = build_odd_cycle(5);
    CHECK_THROWS_AS(color_Gk_proper(*c5, ctx), std::invalid_argument);
}

TEST_CASE("witness cache tolerates concurrent identical requests")
{
    WitnessContext ctx;
    BuiltPtr grotzsch = build_grotzsch();
    std::vector<std::thread> pool;
    std::atomic<int> bad{0};
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&] {
            for (int v = 0; v < 11; ++v) {
                ColoringWitness w = color_avoiding_vertex(*grotzsch, v, ctx);
                if (w.assignment[static_cast<std::size_t>(v)] != 4) ++bad;
            }
        });
    for (auto& th : pool) th.join();
    CHECK(bad == 0);
}
