#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "towns/bitset.hpp"
#include "towns/error.hpp"
#include "towns/gf_linalg.hpp"
#include "towns/set_family.hpp"

namespace towns {

constexpr std::size_t kClosureDimCap = 26;

/// The family of all subsets whose GF(2) characteristic vectors lie in the
/// span of the family's vectors. Contains the input, has size 2^rank, and is
/// idempotent.
inline SetFamily linear_closure(const SetFamily& family, std::size_t dim_cap = kClosureDimCap) {
    Gf2Basis basis;
    for (const auto& s : family.sets()) basis.insert(s);
    const std::size_t dim = basis.dim();
    require(dim <= dim_cap, Errc::CapExceeded,
            "closure dimension " + std::to_string(dim) + " exceeds cap");

    std::vector<Bitset> out;
    out.reserve(std::size_t(1) << dim);
    Bitset cur(family.ground().n);
    out.push_back(cur);
    for (std::uint64_t i = 1; i < (std::uint64_t(1) << dim); ++i) {
        cur ^= basis.rows()[static_cast<std::size_t>(std::countr_zero(i))];
        out.push_back(cur);
    }
    return SetFamily::from_sets(family.ground(), std::move(out));
}

struct AtomDecomposition {
    std::vector<Bitset> atoms;  // non-empty Venn cells, canonical order
    std::vector<std::vector<std::size_t>> membership;  // per set: atom indices whose union is the set
    bool all_k_wise = false;        // family is k-wise for every k <= m
    bool all_k_wise_known = false;  // the above was actually evaluated
    bool atoms_all_even = false;
};

/// Venn-cell decomposition by partition refinement, excluding the cell
/// outside every set. When the family is k-wise for every k <= m the atoms
/// are all even-sized.
inline AtomDecomposition atom_decomposition(const SetFamily& family,
                                            std::size_t all_k_check_cap = 20) {
    const std::size_t n = family.ground().n;
    std::vector<Bitset> cells;
    Bitset full(n);
    for (std::size_t i = 0; i < n; ++i) full.set(i);
    cells.push_back(full);
    for (const auto& a : family.sets()) {
        std::vector<Bitset> next;
        next.reserve(cells.size() * 2);
        for (const auto& cell : cells) {
            Bitset inside = cell & a;
            Bitset outside = cell & a.complement();
            if (inside.any()) next.push_back(std::move(inside));
            if (outside.any()) next.push_back(std::move(outside));
        }
        cells = std::move(next);
    }

    Bitset covered(n);
    for (const auto& a : family.sets()) covered |= a;

    AtomDecomposition out;
    for (auto& cell : cells)
        if (cell.intersects(covered)) out.atoms.push_back(std::move(cell));
    std::sort(out.atoms.begin(), out.atoms.end(), canonical_less);

    out.membership.resize(family.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t t = 0; t < out.atoms.size(); ++t)
            if (out.atoms[t].is_subset_of(family.set(i))) out.membership[i].push_back(t);

    if (family.size() <= all_k_check_cap) {
        out.all_k_wise_known = true;
        out.all_k_wise = family.size() == 0 ||
                         is_strong_k_wise_eventown(family, family.size(), 2).pass;
        if (out.all_k_wise) {
            out.atoms_all_even = true;
            for (const auto& atom : out.atoms)
                if (atom.count() % 2 != 0) out.atoms_all_even = false;
        }
    }
    return out;
}

struct ExtractionRound {
    std::vector<Bitset> removed;  // the maximal odd-intersection collection, ascending
    Bitset r_set;                 // intersection of the collection
    Bitset b_set;                 // its first member
};

struct ExtractionResult {
    SetFamily result;
    std::vector<ExtractionRound> rounds;
};

/// Repeatedly removes a maximal collection of fewer than k sets with odd
/// intersection until the family is a strong k-wise eventown. The input must
/// be a k-wise eventown. The removal log is a skew oddtown pair system, so
/// the number of rounds is at most n and the result loses at most (k-1)n sets.
inline ExtractionResult extract_strong_subfamily(const SetFamily& family, std::size_t k,
                                                 std::uint64_t budget = kDefaultSubsetBudget) {
    require(k >= 1, Errc::PreconditionViolated, "k must be positive");
    require(is_k_wise_eventown(family, k, 2, budget).pass, Errc::NotKWise,
            "input is not a k-wise eventown");

    ExtractionResult out{family, {}};
    std::vector<Bitset> cur = family.sets();
    while (true) {
        SetFamily f = SetFamily::from_sets(family.ground(), cur);
        EventownCheck chk = is_strong_k_wise_eventown(f, k, 2, budget);
        if (chk.pass) {
            out.result = std::move(f);
            break;
        }
        // Grow the checker's first violating subset to a maximal collection:
        // repeatedly add the smallest index that keeps the intersection odd,
        // while staying below k sets.
        std::vector<std::size_t> coll = chk.witness;
        Bitset inter = f.set(coll[0]);
        for (std::size_t i = 1; i < coll.size(); ++i) inter &= f.set(coll[i]);
        bool grew = true;
        while (coll.size() < k - 1 && grew) {
            grew = false;
            for (std::size_t j = 0; j < f.size(); ++j) {
                if (std::find(coll.begin(), coll.end(), j) != coll.end()) continue;
                Bitset t = inter & f.set(j);
                if (t.count() % 2 == 1) {
                    coll.push_back(j);
                    std::sort(coll.begin(), coll.end());
                    inter = std::move(t);
                    grew = true;
                    break;
                }
            }
        }

        ExtractionRound round;
        for (std::size_t j : coll) round.removed.push_back(f.set(j));
        round.r_set = inter;
        round.b_set = round.removed.front();
        out.rounds.push_back(std::move(round));

        std::vector<Bitset> next;
        next.reserve(f.size() - coll.size());
        for (std::size_t j = 0; j < f.size(); ++j)
            if (std::find(coll.begin(), coll.end(), j) == coll.end())
                next.push_back(f.set(j));
        cur = std::move(next);

        if (out.rounds.size() > family.ground().n)
            throw std::logic_error("extraction exceeded n rounds");
    }
    return out;
}

/// Conditions of the skew oddtown pair system: |R_i ^ B_i| odd on the
/// diagonal, |R_i ^ B_j| even above it. Any valid system has length <= n.
inline bool skew_oddtown_check(const std::vector<Bitset>& r_sets,
                               const std::vector<Bitset>& b_sets) {
    require(r_sets.size() == b_sets.size(), Errc::LengthMismatch,
            "sequences have different lengths");
    for (std::size_t i = 0; i < r_sets.size(); ++i)
        require(r_sets[i].universe() == b_sets[i].universe() &&
                    (i == 0 || r_sets[i].universe() == r_sets[0].universe()),
                Errc::DimensionMismatch, "sets live in different universes");
    for (std::size_t i = 0; i < r_sets.size(); ++i)
        if (r_sets[i].intersection_count(b_sets[i]) % 2 == 0) return false;
    for (std::size_t i = 0; i < r_sets.size(); ++i)
        for (std::size_t j = i + 1; j < r_sets.size(); ++j)
            if (r_sets[i].intersection_count(b_sets[j]) % 2 == 1) return false;
    return true;
}

namespace detail {

// Exact maximum independent set on <= 64 vertices, plain branch and bound.
inline void mis_recurse(const std::vector<std::uint64_t>& adj, std::uint64_t candidates,
                        std::size_t current, std::size_t& best) {
    if (current + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
    if (!candidates) {
        best = std::max(best, current);
        return;
    }
    const std::size_t v = static_cast<std::size_t>(std::countr_zero(candidates));
    const std::uint64_t bit = std::uint64_t(1) << v;
    mis_recurse(adj, candidates & ~(adj[v] | bit), current + 1, best);  // take v
    mis_recurse(adj, candidates & ~bit, current, best);                 // skip v
}

inline std::size_t exact_max_independent_set(const std::vector<std::uint64_t>& adj) {
    std::size_t best = 0;
    mis_recurse(adj, adj.empty() ? 0 : (~std::uint64_t(0) >> (64 - adj.size())), 0, best);
    return best;
}

inline bool colorable(const std::vector<std::uint64_t>& adj, std::size_t colors,
                      std::vector<std::size_t>& assign, std::size_t v,
                      std::size_t used) {
    if (v == adj.size()) return true;
    // new colors introduced in index order, which kills color symmetry
    const std::size_t limit = std::min(colors, used + 1);
    for (std::size_t c = 0; c < limit; ++c) {
        bool ok = true;
        for (std::size_t u = 0; u < v && ok; ++u)
            if ((adj[v] >> u) & 1) ok = assign[u] != c;
        if (!ok) continue;
        assign[v] = c;
        if (colorable(adj, colors, assign, v + 1, std::max(used, c + 1))) return true;
    }
    return false;
}

inline std::size_t exact_chromatic_number(const std::vector<std::uint64_t>& adj) {
    if (adj.empty()) return 0;
    for (std::size_t c = 1;; ++c) {
        std::vector<std::size_t> assign(adj.size(), 0);
        if (colorable(adj, c, assign, 0, 0)) return c;
    }
}

// Greedy bounds operate on the graph directly; components can exceed 64
// vertices, unlike the exact solvers.
inline std::size_t greedy_coloring(const DefectGraph& g, const std::vector<std::size_t>& comp) {
    std::vector<std::size_t> color(comp.size());
    std::size_t used = 0;
    for (std::size_t v = 0; v < comp.size(); ++v) {
        std::vector<bool> taken(used + 1, false);
        for (std::size_t u = 0; u < v; ++u)
            if (g.adjacent(comp[v], comp[u])) taken[color[u]] = true;
        std::size_t c = 0;
        while (c < taken.size() && taken[c]) ++c;
        color[v] = c;
        used = std::max(used, c + 1);
    }
    return used;
}

inline std::size_t greedy_independent_set(const DefectGraph& g,
                                          const std::vector<std::size_t>& comp) {
    std::vector<std::size_t> chosen;
    for (std::size_t v : comp) {
        bool ok = true;
        for (std::size_t u : chosen)
            if (g.adjacent(v, u)) {
                ok = false;
                break;
            }
        if (ok) chosen.push_back(v);
    }
    return chosen.size();
}

// Adjacency of the induced subgraph as word masks (component size <= 64).
inline std::vector<std::uint64_t> induced_masks(const DefectGraph& g,
                                                const std::vector<std::size_t>& vertices) {
    std::vector<std::uint64_t> adj(vertices.size(), 0);
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = 0; b < vertices.size(); ++b)
            if (a != b && g.adjacent(vertices[a], vertices[b]))
                adj[a] |= std::uint64_t(1) << b;
    return adj;
}

} // namespace detail

struct ComponentAnalysis {
    std::vector<std::size_t> vertices;
    std::size_t alpha = 0;
    bool alpha_exact = false;
    std::size_t chi = 0;
    bool chi_exact = false;
    bool is_max_degree_clique = false;  // a clique on Delta(G)+1 vertices
};

struct DefectReport {
    std::size_t max_degree = 0;
    std::vector<std::size_t> degrees;
    std::vector<ComponentAnalysis> components;
    std::size_t alpha_total = 0;
    bool alpha_total_exact = false;
    bool alpha_bound_checked = false;
    bool alpha_bound_ok = false;  // alpha_total * (Delta+1) >= m
};

constexpr std::size_t kExactGraphCap = 20;

/// Per-component independence and chromatic numbers: exact by branch and
/// bound up to `exact_cap` vertices, greedy bounds (flagged inexact) beyond.
inline DefectReport defect_analytics(const DefectGraph& g,
                                     std::size_t exact_cap = kExactGraphCap) {
    DefectReport rep;
    rep.max_degree = g.max_degree();
    rep.degrees = g.degrees();
    rep.alpha_total_exact = true;
    for (auto& comp : g.components()) {
        ComponentAnalysis ca;
        ca.vertices = comp;
        if (comp.size() <= exact_cap) {
            const auto adj = detail::induced_masks(g, comp);
            ca.alpha = detail::exact_max_independent_set(adj);
            ca.alpha_exact = true;
            ca.chi = detail::exact_chromatic_number(adj);
            ca.chi_exact = true;
        } else {
            ca.alpha = detail::greedy_independent_set(g, comp);
            ca.chi = detail::greedy_coloring(g, comp);
        }
        if (comp.size() == rep.max_degree + 1) {
            ca.is_max_degree_clique = true;
            for (std::size_t a = 0; a < comp.size() && ca.is_max_degree_clique; ++a)
                for (std::size_t b = a + 1; b < comp.size(); ++b)
                    if (!g.adjacent(comp[a], comp[b])) {
                        ca.is_max_degree_clique = false;
                        break;
                    }
        }
        rep.alpha_total += ca.alpha;
        rep.alpha_total_exact = rep.alpha_total_exact && ca.alpha_exact;
        rep.components.push_back(std::move(ca));
    }
    if (rep.alpha_total_exact) {
        rep.alpha_bound_checked = true;
        rep.alpha_bound_ok = rep.alpha_total * (rep.max_degree + 1) >= g.order();
    }
    return rep;
}

struct GramComponentInfo {
    std::vector<std::size_t> vertices;
    std::size_t rank = 0;
    std::optional<std::size_t> alpha;  // exact values only
    bool rank_ge_alpha = true;
    bool is_rank1_max_clique = false;
};

struct GramReport {
    std::vector<GramComponentInfo> components;
    std::size_t total_rank = 0;
    std::size_t sum_block_ranks = 0;
    std::size_t ambient = 0;
    bool block_diagonal = false;
    bool rank_sum_ok = false;  // sum of block ranks = total rank <= n
};

/// Gram matrix of the family split along defect-graph components: verifies
/// block-diagonality, computes per-block ranks, and compares each block rank
/// against the component's independence number.
inline GramReport component_gram_analysis(const SetFamily& family, PrimeModulus ell,
                                          std::size_t exact_cap = kExactGraphCap) {
    GramReport rep;
    rep.ambient = family.ground().n;
    const auto vectors = characteristic_vectors(family, ell);
    const GFMatrix g = gram(vectors);
    const DefectGraph graph = DefectGraph::build(family, ell);
    const auto comps = graph.components();

    std::vector<std::size_t> comp_of(family.size(), 0);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (std::size_t v : comps[c]) comp_of[v] = c;
    rep.block_diagonal = true;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (comp_of[i] != comp_of[j] && g.at(i, j) != 0) rep.block_diagonal = false;

    rep.total_rank = family.size() ? rank(g) : 0;
    for (const auto& comp : comps) {
        GramComponentInfo info;
        info.vertices = comp;
        GFMatrix block(ell, comp.size(), comp.size());
        for (std::size_t a = 0; a < comp.size(); ++a)
            for (std::size_t b = 0; b < comp.size(); ++b)
                block.at(a, b) = g.at(comp[a], comp[b]);
        info.rank = rank(block);
        if (comp.size() <= exact_cap) {
            info.alpha = detail::exact_max_independent_set(detail::induced_masks(graph, comp));
            info.rank_ge_alpha = info.rank >= *info.alpha;
        }
        if (comp.size() == graph.max_degree() + 1 && info.rank == 1) {
            info.is_rank1_max_clique = true;
            for (std::size_t a = 0; a < comp.size() && info.is_rank1_max_clique; ++a)
                for (std::size_t b = a + 1; b < comp.size(); ++b)
                    if (!graph.adjacent(comp[a], comp[b])) {
                        info.is_rank1_max_clique = false;
                        break;
                    }
        }
        rep.sum_block_ranks += info.rank;
        rep.components.push_back(std::move(info));
    }
    rep.rank_sum_ok = rep.sum_block_ranks == rep.total_rank && rep.total_rank <= rep.ambient;
    return rep;
}

struct PairDecomposition {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // matched (A_i, B_i)
    std::vector<std::size_t> singletons;                     // unmatched A_i
    std::size_t t = 0;
    std::size_t s = 0;  // s + t = m
    int case_id = 0;    // 1 or 2 from the first pair; 0 when t = 0
    std::optional<GFVector> isotropic;  // case 1: v = (a1.a1) b1 - (a1.b1) a1
    bool isotropic_verified = false;    // v != 0, v.v = 0 and v ⟂ every a_i
};

/// The defect graph of a 1-defect family is a partial matching; label matched
/// pairs and singletons and classify the first pair by whether the 2x2 Gram
/// determinant (a1.a1)(b1.b1) - (a1.b1)^2 vanishes.
inline PairDecomposition pair_decomposition_1defect(const SetFamily& family, PrimeModulus ell) {
    require(is_d_defect_l_oddtown(family, 1, ell).pass, Errc::NotOneDefect,
            "family is not a 1-defect l-oddtown");
    const DefectGraph g = DefectGraph::build(family, ell);

    PairDecomposition out;
    std::vector<bool> taken(family.size(), false);
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (taken[i]) continue;
        if (g.degree(i) == 0) {
            out.singletons.push_back(i);
            continue;
        }
        std::size_t partner = family.size();
        g.neighbors(i).for_each_element([&](std::size_t j) { partner = j; });
        taken[i] = true;
        taken[partner] = true;
        out.pairs.emplace_back(i, partner);
    }
    out.t = out.pairs.size();
    out.s = out.pairs.size() + out.singletons.size();
    if (out.t == 0) return out;

    const std::uint32_t l = ell.value();
    const GFVector a1 = GFVector::from_bitset(ell, family.set(out.pairs[0].first));
    const GFVector b1 = GFVector::from_bitset(ell, family.set(out.pairs[0].second));
    const std::uint32_t aa = a1.dot(a1), bb = b1.dot(b1), ab = a1.dot(b1);
    if (aa * bb % l == ab * ab % l) {
        out.case_id = 1;
        GFVector v = b1.scaled(aa);
        v.add_scaled(a1, l - ab);
        out.isotropic_verified = !v.is_zero() && v.dot(v) == 0;
        for (std::size_t i : out.singletons)
            if (v.dot(GFVector::from_bitset(ell, family.set(i))) != 0)
                out.isotropic_verified = false;
        for (const auto& p : out.pairs)
            if (v.dot(GFVector::from_bitset(ell, family.set(p.first))) != 0)
                out.isotropic_verified = false;
        out.isotropic = std::move(v);
    } else {
        out.case_id = 2;
    }
    return out;
}

struct CertificateReport {
    int case_id = 0;
    std::size_t t = 0;
    std::size_t s = 0;
    std::vector<GFVector> vectors;
    std::size_t certificate_rank = 0;
    bool rank_verified = false;  // rank equals the number of vectors
    std::size_t implied_bound = 0;  // max(n, 2n-4) on the family size
};

/// The explicit independent vectors behind the max(n, 2n-4) bound: case 1
/// appends v1, v2 = v - v1 with v.v1 != 0; case 2 appends b1, b2 (or just b1
/// when t = 1, giving s+1 vectors and the bound m <= n).
inline CertificateReport independence_certificate_1defect(const SetFamily& family,
                                                          PrimeModulus ell) {
    const PairDecomposition pd = pair_decomposition_1defect(family, ell);
    require(pd.t >= 1, Errc::NoDefectPairs,
            "family is an l-oddtown; the m <= n bound applies instead");

    CertificateReport rep;
    rep.case_id = pd.case_id;
    rep.t = pd.t;
    rep.s = pd.s;
    for (const auto& p : pd.pairs)
        rep.vectors.push_back(GFVector::from_bitset(ell, family.set(p.first)));
    for (std::size_t i : pd.singletons)
        rep.vectors.push_back(GFVector::from_bitset(ell, family.set(i)));

    const std::size_t n = family.ground().n;
    if (pd.case_id == 1) {
        const GFVector& v = *pd.isotropic;
        // first standard basis vector with v.e_j != 0, i.e. the first nonzero
        // coordinate of v
        std::size_t j = 0;
        while (j < v.dim() && v[j] == 0) ++j;
        std::vector<std::uint8_t> coords(v.dim(), 0);
        coords[j] = 1;
        GFVector v1(ell, std::move(coords));
        GFVector v2 = v;
        v2.sub(v1);
        rep.vectors.push_back(std::move(v1));
        rep.vectors.push_back(std::move(v2));
    } else if (pd.t >= 2) {
        rep.vectors.push_back(GFVector::from_bitset(ell, family.set(pd.pairs[0].second)));
        rep.vectors.push_back(GFVector::from_bitset(ell, family.set(pd.pairs[1].second)));
    } else {
        rep.vectors.push_back(GFVector::from_bitset(ell, family.set(pd.pairs[0].second)));
    }
    rep.certificate_rank = rank(GFMatrix::from_rows(rep.vectors));
    rep.rank_verified = rep.certificate_rank == rep.vectors.size();
    rep.implied_bound = static_cast<std::size_t>(
        std::max<std::int64_t>(static_cast<std::int64_t>(n), 2 * static_cast<std::int64_t>(n) - 4));
    return rep;
}

} // namespace towns
