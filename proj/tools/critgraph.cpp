// Command-line surface: construct the graph families, verify their claimed
// properties with the exact engine, emit proof-derived coloring witnesses,
// and reproduce the density table.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "critgraph/colorer.hpp"
#include "critgraph/constructions.hpp"
#include "critgraph/formats.hpp"
#include "critgraph/sizing.hpp"
#include "critgraph/witnesses.hpp"

using namespace critgraph;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << bytes;
}

GraphFormat format_for(const std::string& path, const std::string& override_name)
{
    if (!override_name.empty()) return format_from_name(override_name);
    auto ends_with = [&](const char* suffix) {
        std::string_view s(path);
        std::string_view x(suffix);
        return s.size() >= x.size() && s.substr(s.size() - x.size()) == x;
    };
    if (ends_with(".g6") || ends_with(".graph6")) return GraphFormat::Graph6;
    if (ends_with(".col") || ends_with(".dimacs")) return GraphFormat::DimacsCol;
    if (ends_with(".json")) return GraphFormat::JsonRoles;
    return GraphFormat::EdgeList;
}

std::uint64_t fnv1a_digest(const std::string& bytes)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string digest_of(const Graph& g)
{
    std::ostringstream ss;
    ss << g.vertex_count() << ";";
    for (auto [u, v] : g.edges()) ss << u << "," << v << ";";
    std::ostringstream hex;
    hex << std::hex << fnv1a_digest(ss.str());
    return hex.str();
}

Budget budget_from_flags(std::uint64_t nodes, double seconds)
{
    if (const char* env = std::getenv("CRITGRAPH_BUDGET")) {
        char* end = nullptr;
        unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && parsed > 0) nodes = parsed;
    }
    return Budget{nodes, seconds};
}

const char* outcome_name(Outcome o)
{
    switch (o) {
    case Outcome::Yes: return "yes";
    case Outcome::No: return "no";
    case Outcome::Unknown: return "unknown";
    }
    return "?";
}

ordered_json witness_to_json(const ColoringWitness& w, const std::string& clause, const ColorConstraint& c)
{
    ordered_json j;
    j["k"] = w.k;
    j["assignment"] = w.assignment;
    j["clause"] = clause;
    ordered_json profile;
    auto palettes = ordered_json::array();
    for (const auto& [vs, cs] : c.subset_palettes) palettes.push_back({{"vertices", vs}, {"colors", cs}});
    profile["subsetPalettes"] = std::move(palettes);
    auto forced = ordered_json::array();
    for (auto [v, col] : c.forced_colors) forced.push_back({{"vertex", v}, {"color", col}});
    profile["forcedColors"] = std::move(forced);
    j["constraintProfile"] = std::move(profile);
    return j;
}

struct ConstructArgs {
    std::string family;
    long long m = 0, q = 0, k = 0;
    std::string manifest;
    std::string out;
    std::string spec_out;
    std::string format = "json";
};

BuiltPtr run_construct_family(const ConstructArgs& args, const Budget& budget)
{
    if (!args.manifest.empty())
        return build_from_spec(spec_from_json(nlohmann::json::parse(slurp(args.manifest))), budget);
    const std::string& f = args.family;
    if (f == "cycle") return build_odd_cycle(args.m);
    if (f == "toft") return build_toft(args.m);
    if (f == "grotzsch") return build_grotzsch();
    if (f == "mycielski") return build_mycielski(build_odd_cycle(args.m));
    if (f == "mu") return build_mu_q(build_odd_cycle(args.m), args.q);
    if (f == "gyarfas") return build_gyarfas(args.m);
    if (f == "gk") return build_gk(static_cast<int>(args.k), budget);
    if (f == "g5k") return build_g5k(static_cast<int>(args.k), args.m, budget);
    if (f == "y") return build_y(args.q, args.m);
    if (f == "ogt") return build_ogt_graph(args.q, args.m);
    if (f == "cone") return build_cone(build_odd_cycle(args.m), args.q);
    throw std::runtime_error("unknown family: " + f);
}

int cmd_construct(const ConstructArgs& args, const Budget& budget)
{
    BuiltPtr built = run_construct_family(args, budget);
    GraphFormat fmt = format_from_name(args.format);
    std::string bytes = export_graph(built->graph, fmt);
    if (args.out.empty())
        std::cout << bytes;
    else
        spit(args.out, bytes);
    if (!args.spec_out.empty()) spit(args.spec_out, spec_to_json(built->spec).dump(2) + "\n");

    DensityStats d = density_stats(built->graph);
    std::cerr << "n=" << d.vertices << " e=" << d.edges << " e/n^2=" << rat_string(d.ratio) << " ("
              << d.ratio_float << ")\n";
    return kExitOk;
}

struct VerifyArgs {
    std::string input;
    std::string format;
    bool odd_girth_check = false;
    long long expect_odd_girth = -1;
    bool triangle_free = false;
    bool pentagon_free = false;
    bool chi_check = false;
    long long expect_chi = -1;
    long long critical_k = 0;
    long long sample = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int jobs = 1;
    std::string report_path;
    bool no_timings = false;
    std::uint64_t budget_nodes = 10'000'000;
    double budget_seconds = 60.0;
};

int cmd_verify(const VerifyArgs& args)
{
    auto t0 = std::chrono::steady_clock::now();
    Graph g;
    try {
        g = parse_graph(slurp(args.input), format_for(args.input, args.format));
    } catch (const std::exception& e) {
        std::cerr << "parse failure: " << e.what() << "\n";
        return kExitError;
    }
    Budget budget = budget_from_flags(args.budget_nodes, args.budget_seconds);
    const int jobs = args.jobs > 0 ? args.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    bool all_verified = true;
    bool any_unknown = false;
    ordered_json report;
    report["reportVersion"] = 1;
    report["input"] = {{"path", args.input}, {"digest", digest_of(g)}, {"n", g.vertex_count()},
        {"e", g.edge_count()}};
    report["manifest"] = {{"budgetNodes", budget.max_nodes}, {"budgetSeconds", budget.max_seconds},
        {"seed", args.seed}, {"jobs", jobs}};
    ordered_json checks;

    if (args.odd_girth_check) {
        OddGirth og = odd_girth(g);
        ordered_json j;
        j["mode"] = "exact";
        if (og.infinite())
            j["value"] = "infinite";
        else
            j["value"] = *og.value;
        if (args.expect_odd_girth > 0) {
            bool ok = !og.infinite() && *og.value == args.expect_odd_girth;
            j["expected"] = args.expect_odd_girth;
            j["verified"] = ok;
            all_verified = all_verified && ok;
        }
        checks["oddGirth"] = std::move(j);
        std::cout << "odd-girth: " << (og.infinite() ? std::string("infinite") : std::to_string(*og.value))
                  << "\n";
    }
    if (args.triangle_free) {
        bool ok = !has_odd_cycle_at_most(g, 3);
        checks["triangleFree"] = ok;
        all_verified = all_verified && ok;
        std::cout << "triangle-free: " << (ok ? "yes" : "no") << "\n";
    }
    if (args.pentagon_free) {
        bool ok = g.vertex_count() == 0 || !has_odd_cycle_at_most(g, 5);
        checks["pentagonFree"] = ok;
        all_verified = all_verified && ok;
        std::cout << "pentagon-and-triangle-free: " << (ok ? "yes" : "no") << "\n";
    }
    if (args.chi_check) {
        ChromaticResult r = chromatic_number(g, budget);
        ordered_json j;
        if (r.exact) {
            j["exact"] = r.chi();
            if (r.witness) {
                std::ostringstream ss;
                for (int c : r.witness->assignment) ss << c << ",";
                std::ostringstream hex;
                hex << std::hex << fnv1a_digest(ss.str());
                j["witness"] = {{"colors", r.witness->k}, {"digest", hex.str()}};
            }
            std::cout << "chi: " << r.chi() << " (exact)\n";
            if (args.expect_chi > 0) {
                bool ok = r.chi() == args.expect_chi;
                j["expected"] = args.expect_chi;
                j["verified"] = ok;
                all_verified = all_verified && ok;
            }
        } else {
            j["lo"] = r.lo;
            j["hi"] = r.hi;
            j["mode"] = "bounds";
            any_unknown = true;
            std::cout << "chi: in [" << r.lo << ", " << r.hi << "] (budget exhausted)\n";
        }
        checks["chromatic"] = std::move(j);
    }
    if (args.critical_k >= 2) {
        CritMode mode = args.sample > 0
            ? CritMode::sampled(static_cast<int>(args.sample), args.seed)
            : CritMode::full_mode();
        CriticalityReport r =
            is_k_critical(g, static_cast<int>(args.critical_k), mode, budget, jobs);
        ordered_json j;
        j["k"] = r.k;
        j["mode"] = r.sampled ? "sampled" : "full";
        if (r.sampled) {
            j["sampleCount"] = r.sample_count;
            j["seed"] = r.seed;
        }
        j["intactNotColorableWithKMinus1"] = outcome_name(r.intact_lower);
        auto edges = ordered_json::array();
        for (const EdgeCheck& e : r.per_edge)
            edges.push_back({{"u", e.u}, {"v", e.v}, {"removable", outcome_name(e.removable)}});
        j["edges"] = std::move(edges);
        const char* verdict = r.verdict == CritVerdict::Critical ? "k-critical"
            : r.verdict == CritVerdict::NotCritical              ? "not-critical"
                                                                 : "inconclusive";
        j["verdict"] = verdict;
        if (r.witness_edge) j["witnessEdge"] = {r.witness_edge->first, r.witness_edge->second};
        checks["criticality"] = std::move(j);
        std::cout << "criticality(k=" << r.k << "): " << verdict << "\n";
        if (r.verdict == CritVerdict::NotCritical) all_verified = false;
        if (r.verdict == CritVerdict::Inconclusive) {
            if (mode.full || r.intact_lower != Outcome::Yes)
                any_unknown = true;
            else {
                // sampled mode with every sampled edge removable: the contract
                // calls this inconclusive-positive
                bool sampled_ok = true;
                for (const EdgeCheck& e : r.per_edge) sampled_ok = sampled_ok && e.removable == Outcome::Yes;
                if (!sampled_ok) any_unknown = true;
            }
        }
    }

    report["checks"] = std::move(checks);
    if (!args.no_timings)
        report["timings"] = {{"totalSeconds",
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
    if (!args.report_path.empty()) spit(args.report_path, report.dump(2) + "\n");

    if (!all_verified) return kExitError;
    return any_unknown ? kExitUnknown : kExitOk;
}

struct WitnessArgs {
    std::string spec_path;
    std::string clause;
    int edge_u = -1, edge_v = -1;
    int vertex = -1;
    std::string out;
    std::uint64_t budget_nodes = 10'000'000;
    double budget_seconds = 60.0;
};

int cmd_witness(const WitnessArgs& args)
{
    BuiltPtr built = build_from_spec(spec_from_json(nlohmann::json::parse(slurp(args.spec_path))),
        budget_from_flags(args.budget_nodes, args.budget_seconds));
    WitnessContext ctx;
    ctx.budget = budget_from_flags(args.budget_nodes, args.budget_seconds);

    ColoringWitness w;
    ColorConstraint profile = ColorConstraint::palette(1);
    if (args.clause == "proper-k") {
        w = color_Gk_proper(*built, ctx);
        profile = ColorConstraint::palette(w.k);
    } else if (args.clause == "after-removal") {
        if (args.edge_u < 0 || args.edge_v < 0) throw std::runtime_error("--edge u v required");
        w = color_Gk_after_removal(*built, {args.edge_u, args.edge_v}, ctx);
        profile = ColorConstraint::palette(w.k);
    } else if (args.clause == "part1") {
        int chosen = args.vertex >= 0 ? args.vertex : active_set(*built).front();
        w = color_U_part1(*built, chosen, ctx);
        profile = ColorConstraint::palette(w.k);
        const UStructure& u = u_structure(*built);
        int i = static_cast<int>(u.children.size()) + 1;
        std::vector<int> others, low;
        for (int a : active_set(*built))
            if (a != chosen) others.push_back(a);
        for (int col = 1; col < i; ++col) low.push_back(col);
        profile.restrict(std::move(others), std::move(low)).force(chosen, i);
    } else if (args.clause == "part3") {
        if (args.edge_u < 0 || args.edge_v < 0) throw std::runtime_error("--edge u v required");
        w = color_U_part3(*built, {args.edge_u, args.edge_v}, ctx);
        profile = ColorConstraint::palette(w.k);
        const UStructure& u = u_structure(*built);
        int i = static_cast<int>(u.children.size()) + 1;
        std::vector<int> low;
        for (int col = 1; col < i; ++col) low.push_back(col);
        profile.restrict(active_set(*built), std::move(low));
    } else {
        throw std::runtime_error("unknown clause: " + args.clause);
    }

    ordered_json j = witness_to_json(w, args.clause, profile);
    if (args.out.empty())
        std::cout << j.dump(2) << "\n";
    else
        spit(args.out, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_density_table(bool as_json)
{
    if (!as_json) {
        std::cout << density_table_text();
        return kExitOk;
    }
    ordered_json rows = ordered_json::array();
    for (const auto& e : density_table()) {
        ordered_json row;
        row["oddGirthBound"] = e.ell;
        row["k"] = e.k;
        if (e.lower) row["lower"] = rat_string(*e.lower);
        row["upper"] = rat_string(e.upper);
        row["status"] = e.status == DensityStatus::Exact ? "exact"
            : e.status == DensityStatus::Bound           ? "bound"
                                                         : "open";
        rows.push_back(std::move(row));
    }
    std::cout << rows.dump(2) << "\n";
    return kExitOk;
}

int cmd_density_sweep(const std::string& family, long long k, int steps, long long q_from, long long q_to)
{
    if (family == "gk") {
        Rat last(0);
        for (int s = 0; s < steps; ++s) {
            std::vector<BuiltPtr> c1, c2;
            for (int r = static_cast<int>(k) - 1; r >= (static_cast<int>(k) + 1) / 2 + 1; --r)
                c1.push_back(catalog_base(CatalogMode::TriangleFree, r, r == 4 ? s : 0));
            for (int r = static_cast<int>(k) - 1; r >= static_cast<int>(k) / 2 + 1; --r)
                c2.push_back(catalog_base(CatalogMode::TriangleFree, r, r == 4 ? s : 0));
            BuiltPtr g = build_gk_from(static_cast<int>(k), c1, c2);
            DensityStats d = density_stats(g->graph);
            std::cout << "step=" << s << " n=" << d.vertices << " e=" << d.edges
                      << " e/n^2=" << rat_string(d.ratio) << " (" << d.ratio_float << ")\n";
            if (s > 0 && !(last < d.ratio)) {
                std::cerr << "ratio not monotone\n";
                return kExitError;
            }
            last = d.ratio;
        }
        return kExitOk;
    }
    if (family == "ogt") {
        for (long long q = q_from; q <= q_to; ++q) {
            BuiltPtr g = build_ogt_graph(q, 2 * q + 5);
            DensityStats d = density_stats(g->graph);
            long long ell = 2 * q + 3;
            std::cout << "q=" << q << " n=" << d.vertices << " e=" << d.edges
                      << " e/n^2=" << rat_string(d.ratio) << " vs 1/(l+1)^2=1/" << (ell + 1) * (ell + 1)
                      << "\n";
        }
        return kExitOk;
    }
    std::cerr << "unknown sweep family: " << family << "\n";
    return kExitError;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"constructions and exact verification for dense chromatic-critical graphs"};
    app.require_subcommand(1);

    ConstructArgs cargs;
    CLI::App* construct = app.add_subcommand("construct", "build a graph family instance");
    construct->add_option("family", cargs.family, "cycle|toft|grotzsch|mycielski|mu|gyarfas|gk|g5k|y|ogt|cone");
    construct->add_option("--m", cargs.m, "cycle-length parameter");
    construct->add_option("--q", cargs.q, "layer parameter");
    construct->add_option("--k", cargs.k, "chromatic parameter");
    construct->add_option("--manifest", cargs.manifest, "build from a construction-spec JSON file");
    construct->add_option("--out", cargs.out, "output graph file");
    construct->add_option("--spec-out", cargs.spec_out, "write the construction spec JSON");
    construct->add_option("--format", cargs.format, "graph6|dimacs|edges|json");

    VerifyArgs vargs;
    CLI::App* verify = app.add_subcommand("verify", "run exactness-bounded checks on a graph file");
    verify->add_option("input", vargs.input)->required();
    verify->add_option("--format", vargs.format, "override input format");
    auto* og_flag = verify->add_flag("--odd-girth", vargs.odd_girth_check, "compute the odd girth");
    verify->add_option("--expect-odd-girth", vargs.expect_odd_girth)->needs(og_flag);
    verify->add_flag("--triangle-free", vargs.triangle_free);
    verify->add_flag("--pentagon-free", vargs.pentagon_free);
    verify->add_flag("--chi", vargs.chi_check, "exact chromatic number (or bounds)");
    verify->add_option("--expect-chi", vargs.expect_chi);
    verify->add_option("--critical", vargs.critical_k, "verify k-criticality");
    verify->add_option("--sample", vargs.sample, "sampled criticality with this many edges");
    verify->add_option("--seed", vargs.seed, "seed for sampled mode")->default_val(0);
    verify->add_option("--jobs", vargs.jobs, "parallel edge checks (default: all cores)")->default_val(0);
    verify->add_option("--report", vargs.report_path, "write a JSON report");
    verify->add_flag("--no-timings", vargs.no_timings, "omit timings from the report");
    verify->add_option("--budget-nodes", vargs.budget_nodes)->default_val(10'000'000);
    verify->add_option("--budget-seconds", vargs.budget_seconds)->default_val(60.0);

    WitnessArgs wargs;
    CLI::App* witness = app.add_subcommand("witness", "emit a proof-derived coloring witness");
    witness->add_option("spec", wargs.spec_path, "construction spec JSON")->required();
    witness->add_option("--clause", wargs.clause, "proper-k|after-removal|part1|part3")->required();
    std::vector<int> edge_pair;
    witness->add_option("--edge", edge_pair, "removed edge endpoints")->expected(2);
    witness->add_option("--vertex", wargs.vertex, "chosen active vertex for part1");
    witness->add_option("--out", wargs.out, "output witness JSON");
    witness->add_option("--budget-nodes", wargs.budget_nodes)->default_val(10'000'000);
    witness->add_option("--budget-seconds", wargs.budget_seconds)->default_val(60.0);

    CLI::App* density = app.add_subcommand("density", "density constants and sweeps");
    density->require_subcommand(1);
    bool table_json = false;
    CLI::App* table = density->add_subcommand("table", "print the bounds table");
    table->add_flag("--json", table_json);
    std::string sweep_family;
    long long sweep_k = 6, sweep_q_from = 1, sweep_q_to = 3;
    int sweep_steps = 3;
    CLI::App* sweep = density->add_subcommand("sweep", "density across growing instances");
    sweep->add_option("family", sweep_family, "gk|ogt")->required();
    sweep->add_option("--k", sweep_k);
    sweep->add_option("--steps", sweep_steps);
    sweep->add_option("--q-from", sweep_q_from);
    sweep->add_option("--q-to", sweep_q_to);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*construct) return cmd_construct(cargs, budget_from_flags(10'000'000, 60.0));
        if (*verify) return cmd_verify(vargs);
        if (*witness) {
            if (edge_pair.size() == 2) {
                wargs.edge_u = edge_pair[0];
                wargs.edge_v = edge_pair[1];
            }
            return cmd_witness(wargs);
        }
        if (*density) {
            if (*table) return cmd_density_table(table_json);
            if (*sweep) return cmd_density_sweep(sweep_family, sweep_k, sweep_steps, sweep_q_from, sweep_q_to);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
