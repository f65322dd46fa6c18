#ifndef CRITGRAPH_SIZING_HPP
#define CRITGRAPH_SIZING_HPP

#include <numeric>
#include <optional>
#include <sstream>

#include "critgraph/constructions.hpp"

namespace critgraph {

// Certificate for an eventually-periodic set of achievable sizes: the set
// contains every x > threshold with x = residue (mod modulus), and
// explicit_values enumerates the set exactly up to bound.  Families whose
// progression passes through zero have residue 0; catalog families such as
// the Toft orders {20, 28, 36, ...} carry a nonzero offset.
struct HomogeneousSet {
    long long modulus = 1;
    long long residue = 0;
    long long threshold = 0;
    long long bound = 0;
    std::vector<long long> explicit_values;
    bool has_progression = true;

    long long first_member() const
    {
        if (!has_progression) throw std::logic_error("certificate claims no progression");
        long long start = threshold + 1;
        long long offset = ((residue - start) % modulus + modulus) % modulus;
        return start + offset;
    }

    bool claims(long long x) const
    {
        return has_progression && x > threshold
            && ((x - residue) % modulus + modulus) % modulus == 0;
    }
};

inline HomogeneousSet hs_from_progression(long long first, long long step, long long bound)
{
    HomogeneousSet h;
    h.modulus = step;
    h.residue = ((first % step) + step) % step;
    h.threshold = first - 1;
    h.bound = bound;
    for (long long x = first; x <= bound; x += step) h.explicit_values.push_back(x);
    return h;
}

inline HomogeneousSet hs_sum(const HomogeneousSet& a, const HomogeneousSet& b)
{
    HomogeneousSet out;
    out.bound = std::min(a.bound, b.bound);
    std::vector<char> present(static_cast<std::size_t>(out.bound) + 1, 0);
    for (long long x : a.explicit_values)
        for (long long y : b.explicit_values) {
            if (x + y > out.bound) break;
            present[static_cast<std::size_t>(x + y)] = 1;
        }
    for (long long v = 1; v <= out.bound; ++v)
        if (present[static_cast<std::size_t>(v)]) out.explicit_values.push_back(v);
    if (a.has_progression && b.has_progression) {
        long long g = std::gcd(a.modulus, b.modulus);
        out.modulus = g;
        out.residue = ((a.residue + b.residue) % g + g) % g;
        out.threshold = a.first_member() + b.first_member() + (a.modulus / g) * b.modulus;
    } else {
        out.has_progression = false;
    }
    return out;
}

inline HomogeneousSet hs_product(const HomogeneousSet& a, const HomogeneousSet& b)
{
    HomogeneousSet out;
    out.bound = std::min(a.bound, b.bound);
    std::vector<char> present(static_cast<std::size_t>(out.bound) + 1, 0);
    for (long long x : a.explicit_values)
        for (long long y : b.explicit_values) {
            if (x * y > out.bound) break;
            present[static_cast<std::size_t>(x * y)] = 1;
        }
    for (long long v = 1; v <= out.bound; ++v)
        if (present[static_cast<std::size_t>(v)]) out.explicit_values.push_back(v);
    if (a.has_progression && b.has_progression) {
        // anchor the faster-growing claim on b's first member
        long long fb = b.first_member();
        out.modulus = a.modulus * fb;
        out.residue = (a.residue * fb) % out.modulus;
        out.threshold = a.threshold * fb + fb - 1;
    } else {
        out.has_progression = false;
    }
    return out;
}

inline HomogeneousSet hs_intersect(const HomogeneousSet& a, const HomogeneousSet& b)
{
    HomogeneousSet out;
    out.bound = std::min(a.bound, b.bound);
    std::set_intersection(a.explicit_values.begin(), a.explicit_values.end(),
        b.explicit_values.begin(), b.explicit_values.end(), std::back_inserter(out.explicit_values));
    while (!out.explicit_values.empty() && out.explicit_values.back() > out.bound)
        out.explicit_values.pop_back();
    if (!a.has_progression || !b.has_progression) {
        out.has_progression = false;
        return out;
    }
    long long g = std::gcd(a.modulus, b.modulus);
    if (((a.residue - b.residue) % g + g) % g != 0) {
        // the two offset progressions never meet (e.g. odd vs even sizes)
        out.has_progression = false;
        return out;
    }
    long long lcm = a.modulus / g * b.modulus;
    // find x = a.residue (mod a.modulus), x = b.residue (mod b.modulus)
    long long x = a.residue % a.modulus;
    while (((x - b.residue) % b.modulus + b.modulus) % b.modulus != 0) x += a.modulus;
    out.modulus = lcm;
    out.residue = ((x % lcm) + lcm) % lcm;
    out.threshold = std::max(a.threshold, b.threshold);
    return out;
}

// ---------------------------------------------------------------------------
// Achievable sizes of construction families with one free base slot
// ---------------------------------------------------------------------------

enum class SizeMeasure { Vertices, ActiveVertices };

// The free (k-1)-critical slot ranges over one of these catalog families.
enum class FreeSlotBase {
    OddCyclesTriangleFree, // C_5, C_7, ...
    OddCyclesPentagonFree, // C_7, C_9, ...
    ToftGraphs,            // 20, 28, 36, ...
    Critical4Catalog,      // 11 (Grotzsch), 20, 28, ...
};

struct SlotFamily {
    FreeSlotBase base = FreeSlotBase::ToftGraphs;
    // the remaining fixed children: (vertex count, plug size) per child
    std::vector<std::pair<long long, long long>> fixed_children;
    bool toft_whole_graph = false; // the Toft family itself, n = 4m
};

struct AchievableSizes {
    HomogeneousSet certificate;
    // (size value, free slot order) pairs up to the bound, sorted by value
    std::vector<std::pair<long long, long long>> values;
};

namespace detail {

struct BaseProgression {
    long long first;
    long long step;
    std::vector<long long> extra; // members below the progression (Grotzsch)
};

inline BaseProgression base_progression(FreeSlotBase b)
{
    switch (b) {
    case FreeSlotBase::OddCyclesTriangleFree: return {5, 2, {}};
    case FreeSlotBase::OddCyclesPentagonFree: return {7, 2, {}};
    case FreeSlotBase::ToftGraphs: return {20, 8, {}};
    case FreeSlotBase::Critical4Catalog: return {20, 8, {11}};
    }
    throw std::invalid_argument("bad slot base");
}

} // namespace detail

inline AchievableSizes achievable_sizes(const SlotFamily& family, long long bound, SizeMeasure measure)
{
    AchievableSizes out;
    detail::BaseProgression bp = detail::base_progression(family.base);

    long long plug_product = 1, fixed_vertices = 0;
    for (auto [v, p] : family.fixed_children) {
        plug_product *= p;
        fixed_vertices += v;
    }

    // the measure is an affine image of the free slot's order
    auto value_of = [&](long long order) -> long long {
        if (family.toft_whole_graph)
            return measure == SizeMeasure::Vertices ? order : order / 2;
        return measure == SizeMeasure::Vertices ? order * (1 + plug_product) + fixed_vertices
                                                : order * plug_product;
    };

    std::vector<long long> members = bp.extra;
    for (long long s = bp.first; value_of(s) <= bound; s += bp.step) members.push_back(s);
    std::sort(members.begin(), members.end());
    for (long long s : members) {
        long long v = value_of(s);
        if (v <= bound) out.values.emplace_back(v, s);
    }
    std::sort(out.values.begin(), out.values.end());

    const long long first_value = value_of(bp.first);
    const long long step_value = value_of(bp.first + bp.step) - first_value;
    if (first_value > bound)
        throw std::invalid_argument("achievable_sizes: bound too small to exhibit the certificate");
    out.certificate = hs_from_progression(first_value, step_value, bound);
    out.certificate.explicit_values.clear();
    for (auto [v, s] : out.values) out.certificate.explicit_values.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// Size matching for the two sides of G_k
// ---------------------------------------------------------------------------

struct MatchResult {
    bool found = false;
    SizeMeasure measure = SizeMeasure::Vertices;
    long long value = 0;
    ConstructionSpec side1, side2;
    std::string note;
};

namespace detail {

inline ConstructionSpec critical4_spec(long long order)
{
    if (order == 11) return ConstructionSpec::grotzsch();
    if (order % 4 == 0 && (order / 4) % 2 == 1 && order >= 20)
        return ConstructionSpec::toft(order / 4);
    throw std::invalid_argument("no catalog 4-critical graph of order " + std::to_string(order));
}

} // namespace detail

// Looks for base sizes making |C_1| = |C_2| at the requested measure by
// intersecting the two sides' achievable-size sets.  For k = 5 and the
// vertex measure the intersection is empty at every bound: |U(S)| = 2|S| is
// even while |U(S,C_j)| = (|S|+1)(j+1)-1 is odd; the active measure does
// admit matches.
inline MatchResult match_sizes(int k, long long bound, SizeMeasure measure = SizeMeasure::Vertices)
{
    MatchResult out;
    out.measure = measure;
    if (k < 4) throw std::invalid_argument("match_sizes requires k >= 4");
    if (k % 2 == 0) {
        // identical side specs match trivially; report the smallest catalog pair
        if (k == 4) {
            out.found = true;
            ConstructionSpec u{SpecKind::U};
            u.k = 4;
            u.children.push_back(ConstructionSpec::odd_cycle(5));
            out.side1 = out.side2 = u;
            out.value = measure == SizeMeasure::Vertices ? 10 : 5;
            out.note = "even k: both sides take the same spec";
            return out;
        }
        out.note = "even k: both sides take the same spec; desk-scale builds stop at k = 6";
        out.found = k == 6;
        if (k == 6) {
            ConstructionSpec u{SpecKind::U};
            u.k = 6;
            u.children.push_back(ConstructionSpec{SpecKind::Gk, 0, 0, 5});
            u.children.push_back(ConstructionSpec::grotzsch());
            out.side1 = out.side2 = u;
        }
        return out;
    }
    if (k != 5) {
        out.note = "odd k >= 7 needs 6-critical bases beyond desk-scale bounds";
        return out;
    }

    SlotFamily side1{FreeSlotBase::Critical4Catalog, {}, false};
    SlotFamily side2{FreeSlotBase::Critical4Catalog, {{5, 5}}, false};
    AchievableSizes a1 = achievable_sizes(side1, bound, measure);
    AchievableSizes a2 = achievable_sizes(side2, bound, measure);

    for (auto [v2, s2] : a2.values) {
        for (auto [v1, s1] : a1.values) {
            if (v1 != v2) continue;
            out.found = true;
            out.value = v1;
            ConstructionSpec u1{SpecKind::U};
            u1.k = 5;
            u1.children.push_back(detail::critical4_spec(s1));
            ConstructionSpec u2{SpecKind::U};
            u2.k = 5;
            u2.children.push_back(detail::critical4_spec(s2));
            u2.children.push_back(ConstructionSpec::odd_cycle(5));
            out.side1 = std::move(u1);
            out.side2 = std::move(u2);
            return out;
        }
    }
    out.note = measure == SizeMeasure::Vertices
        ? "no match: side-1 orders are even, side-2 orders are odd (parity obstruction)"
        : "no match within bound";
    return out;
}

// ---------------------------------------------------------------------------
// Density ratio optimization and Table 1
// ---------------------------------------------------------------------------

// Maximizes (c + x) / (m + x)^2 over x > 0; the interior optimum is
// x* = m - 2c with value 1 / (4(m - c)).
inline std::pair<Rat, Rat> optimize_ratio(const Rat& core_coeff, const Rat& vertex_multiplier)
{
    if (core_coeff <= Rat(0) || core_coeff >= vertex_multiplier)
        throw std::domain_error("optimize_ratio requires 0 < c < m");
    Rat x = vertex_multiplier - Rat(2) * core_coeff;
    if (x <= Rat(0))
        throw std::domain_error("optimize_ratio: no interior optimum (m <= 2c)");
    Rat ratio = Rat(1) / (Rat(4) * (vertex_multiplier - core_coeff));
    return {x, ratio};
}

enum class DensityStatus { Exact, Bound, Open };

struct DensityTableEntry {
    int ell = 3;
    int k = 4;
    std::optional<Rat> lower;
    Rat upper = Rat(1, 4);
    DensityStatus status = DensityStatus::Bound;
};

inline std::vector<DensityTableEntry> density_table()
{
    std::vector<DensityTableEntry> t;
    for (int ell : {3, 5, 7, 9})
        for (int k = 4; k <= 8; ++k) {
            DensityTableEntry e;
            e.ell = ell;
            e.k = k;
            if (ell == 3) {
                if (k == 4)
                    e.lower = Rat(1, 16);
                else if (k == 5)
                    e.lower = Rat(4, 31);
                else {
                    e.lower = Rat(1, 4);
                    e.status = DensityStatus::Exact;
                }
            } else if (ell == 5) {
                if (k == 4)
                    e.lower = Rat(1, 36);
                else if (k == 5)
                    e.lower = Rat(3, 35);
                else {
                    e.lower = Rat(1, 4);
                    e.status = DensityStatus::Exact;
                }
            } else {
                if (k == 4)
                    e.lower = Rat(1, (ell + 1) * (ell + 1));
                else
                    e.status = DensityStatus::Open;
            }
            t.push_back(e);
        }
    return t;
}

inline std::string rat_string(const Rat& r)
{
    std::ostringstream ss;
    ss << r.numerator();
    if (r.denominator() != 1) ss << "/" << r.denominator();
    return ss.str();
}

inline std::string density_table_text()
{
    std::ostringstream ss;
    ss << "l\\k";
    for (int k = 4; k <= 8; ++k) ss << "\t" << k;
    ss << "\n";
    auto table = density_table();
    for (int ell : {3, 5, 7, 9}) {
        ss << ell;
        for (const auto& e : table) {
            if (e.ell != ell) continue;
            ss << "\t";
            switch (e.status) {
            case DensityStatus::Exact: ss << rat_string(*e.lower); break;
            case DensityStatus::Bound: ss << ">=" << rat_string(*e.lower); break;
            case DensityStatus::Open: ss << "?"; break;
            }
        }
        ss << "\n";
    }
    return ss.str();
}

} // namespace critgraph

#endif
