#include <catch2/catch_amalgamated.hpp>

#include "critgraph/formats.hpp"
#include "oracles.hpp"

using namespace critgraph;

namespace {

Graph cycle(int m)
{
    Graph g(m);
    for (int i = 0; i < m; ++i) g.add_edge(i, (i + 1) % m);
    return g;
}

bool is_cycle_of_length(const Graph& g, int m)
{
    if (g.vertex_count() != m || g.edge_count() != m) return false;
    for (int v = 0; v < m; ++v)
        if (g.degree(v) != 2) return false;
    return odd_girth(g).value == m;
}

} // namespace

TEST_CASE("graph6 round trip matches the independent encoder")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> size(0, 40);
    std::uniform_real_distribution<double> density(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = oracles::random_graph(rng, size(rng), density(rng));
        std::string mine = export_graph6(g);
        CHECK(mine == oracles::independent_graph6(g));
        Graph back = parse_graph6(mine);
        CHECK(back.vertex_count() == g.vertex_count());
        CHECK(back.edges() == g.edges());
    }
}

TEST_CASE("graph6 known value DUW is a 5-cycle")
{
    Graph g = parse_graph6("DUW");
    CHECK(is_cycle_of_length(g, 5));
    // round-trip of our canonical C5 labeling
    Graph c5 = cycle(5);
    CHECK(parse_graph6(export_graph6(c5)).edges() == c5.edges());
}

TEST_CASE("graph6 long form for n >= 63")
{
    Graph g = cycle(161);
    std::string enc = export_graph6(g);
    CHECK(enc[0] == '~');
    Graph back = parse_graph6(enc);
    CHECK(back.vertex_count() == 161);
    CHECK(back.edges() == g.edges());
}

TEST_CASE("graph6 errors carry byte offsets")
{
    CHECK_THROWS_AS(parse_graph6("D"), ParseError);
    CHECK_THROWS_AS(parse_graph6("DUWW"), ParseError);
    CHECK_THROWS_AS(parse_graph6(std::string("D\x01") + "W"), ParseError);
    try {
        parse_graph6("DU");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);
    }
}

TEST_CASE("DIMACS round trip and errors")
{
    Graph g = cycle(7);
    std::string col = export_dimacs(g);
    Graph back = parse_dimacs(col);
    CHECK(back.vertex_count() == 7);
    CHECK(back.edges() == g.edges());

    CHECK_THROWS_AS(parse_dimacs("p edge"), ParseError);
    CHECK_THROWS_AS(parse_dimacs(""), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p edge 3 1\ne 1 9\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p edge 3 2\ne 1 2\n"), ParseError);
    CHECK(parse_dimacs("c comment\np edge 3 1\ne 1 3\n").has_edge(0, 2));
}

TEST_CASE("edge list round trip")
{
    Graph g = cycle(9);
    Graph back = parse_edge_list(export_edge_list(g));
    CHECK(back.edges() == g.edges());
    CHECK_THROWS_AS(parse_edge_list("0 1\n2\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("0 1 2\n"), ParseError);
}

TEST_CASE("JSON round trip preserves roles and tags exactly")
{
    Graph g = cycle(5);
    g.set_role(0, Role::active());
    g.set_role(1, Role::structural(2));
    g.set_role(2, Role::forward());
    g.set_role(3, Role::apex());
    g.set_role(4, Role::base());
    g.set_tag(0, "side1/a[0]");
    Graph back = parse_json_graph(export_json(g));
    CHECK(back == g);

    // property: round trip is the identity on randomly role-tagged graphs
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> size(0, 25);
    std::uniform_real_distribution<double> density(0.0, 1.0);
    std::uniform_int_distribution<int> role_pick(0, 5);
    for (int trial = 0; trial < 60; ++trial) {
        Graph r = oracles::random_graph(rng, size(rng), density(rng));
        for (int v = 0; v < r.vertex_count(); ++v) {
            switch (role_pick(rng)) {
            case 0: r.set_role(v, Role::plain()); break;
            case 1: r.set_role(v, Role::active()); break;
            case 2: r.set_role(v, Role::structural(1 + v % 3)); break;
            case 3: r.set_role(v, Role::forward()); break;
            case 4: r.set_role(v, Role::base()); break;
            default: r.set_role(v, Role::apex()); break;
            }
            if (v % 3 == 0) r.set_tag(v, "t" + std::to_string(v));
        }
        CHECK(parse_json_graph(export_json(r)) == r);
    }
}

TEST_CASE("format dispatch")
{
    Graph g = cycle(5);
    for (GraphFormat f :
        {GraphFormat::Graph6, GraphFormat::DimacsCol, GraphFormat::EdgeList, GraphFormat::JsonRoles}) {
        Graph back = parse_graph(export_graph(g, f), f);
        CHECK(back.edges() == g.edges());
    }
    CHECK(format_from_name("graph6") == GraphFormat::Graph6);
    CHECK_THROWS_AS(format_from_name("nope"), std::invalid_argument);
}
