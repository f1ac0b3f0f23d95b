#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "towns/bitset.hpp"
#include "towns/error.hpp"
#include "towns/gf_linalg.hpp"

namespace towns {

constexpr std::size_t kMaxGroundSet = 4096;
constexpr std::uint64_t kDefaultSubsetBudget = 100'000'000;  // subset evaluations
constexpr std::uint64_t kFamilyBudget = std::uint64_t(1) << 22;

/// The universe [n] = {1,...,n}.
struct GroundSet {
    explicit GroundSet(std::size_t n_) : n(n_) {
        require(n >= 1, Errc::PreconditionViolated, "ground set must be non-empty");
        require(n <= kMaxGroundSet, Errc::PreconditionViolated,
                "ground set exceeds " + std::to_string(kMaxGroundSet) + " elements");
    }
    std::size_t n;

    bool operator==(const GroundSet& o) const { return n == o.n; }
};

/// An ordered family of distinct subsets of [n]. Construction canonicalizes:
/// sets are sorted by (popcount, lexicographic bitstring) and duplicates are
/// rejected, so equal families have equal representations.
class SetFamily {
public:
    static SetFamily from_sets(GroundSet ground, std::vector<Bitset> sets) {
        for (const auto& s : sets)
            require(s.universe() == ground.n, Errc::DimensionMismatch,
                    "set universe disagrees with ground set");
        std::sort(sets.begin(), sets.end(), canonical_less);
        for (std::size_t i = 0; i + 1 < sets.size(); ++i)
            require(sets[i] != sets[i + 1], Errc::DuplicateSets, "family has a repeated set");
        return SetFamily(ground, std::move(sets));
    }

    static SetFamily empty(GroundSet ground) { return SetFamily(ground, {}); }

    GroundSet ground() const { return ground_; }
    std::size_t size() const { return sets_.size(); }
    const Bitset& set(std::size_t i) const { return sets_[i]; }
    const std::vector<Bitset>& sets() const { return sets_; }

    bool contains(const Bitset& s) const {
        return std::binary_search(sets_.begin(), sets_.end(), s, canonical_less);
    }

    bool operator==(const SetFamily& o) const {
        return ground_ == o.ground_ && sets_ == o.sets_;
    }
    bool operator!=(const SetFamily& o) const { return !(*this == o); }

private:
    SetFamily(GroundSet ground, std::vector<Bitset> sets)
        : ground_(ground), sets_(std::move(sets)) {}

    GroundSet ground_;
    std::vector<Bitset> sets_;
};

/// |intersection of A_i over i in indices| mod ell. Indices are 0-based.
inline std::uint32_t intersection_size_mod(const SetFamily& family,
                                           const std::vector<std::size_t>& indices,
                                           std::uint32_t ell) {
    require(!indices.empty(), Errc::EmptyIndexSet, "intersection over no sets");
    require(ell >= 1, Errc::PreconditionViolated, "modulus must be positive");
    for (std::size_t i : indices)
        require(i < family.size(), Errc::IndexOutOfRange,
                "set index " + std::to_string(i) + " out of range");
    Bitset acc = family.set(indices[0]);
    for (std::size_t i = 1; i < indices.size(); ++i) acc &= family.set(indices[i]);
    return static_cast<std::uint32_t>(acc.count() % ell);
}

/// Verdict of an eventown-style check. On failure `witness` holds the first
/// violating index subset in depth-first lexicographic order (prefixes before
/// extensions) and `witness_k` its size.
struct EventownCheck {
    bool pass = true;
    std::vector<std::size_t> witness;
    std::size_t witness_k = 0;
    std::uint64_t subsets_checked = 0;
};

namespace detail {

// Shared DFS over increasing index tuples with incremental intersections.
// check_all_depths = false restricts parity checks to |S| = k (k-wise);
// true checks every non-empty prefix (strong k-wise). Empty intersections
// prune their subtree: every extension keeps size 0 = 0 mod ell.
inline bool kwise_dfs(const SetFamily& family, std::size_t k, std::uint32_t ell,
                      bool check_all_depths, std::vector<std::size_t>& stack,
                      std::vector<Bitset>& inter, std::size_t next, EventownCheck& out,
                      std::uint64_t budget) {
    const std::size_t depth = stack.size();
    if (depth > 0) {
        if (++out.subsets_checked > budget)
            fail(Errc::BudgetExceeded, "subset enumeration budget exhausted");
        const Bitset& cur = inter[depth - 1];
        if (check_all_depths || depth == k) {
            if (cur.count() % ell != 0) {
                out.pass = false;
                out.witness = stack;
                out.witness_k = depth;
                return false;
            }
        }
        if (depth == k) return true;
        if (cur.none()) return true;  // prune: all extensions are empty
    }
    for (std::size_t j = next; j < family.size(); ++j) {
        stack.push_back(j);
        if (depth == 0)
            inter.push_back(family.set(j));
        else
            inter.push_back(inter[depth - 1] & family.set(j));
        const bool ok = kwise_dfs(family, k, ell, check_all_depths, stack, inter, j + 1, out,
                                  budget);
        stack.pop_back();
        inter.pop_back();
        if (!ok) return false;
    }
    return true;
}

} // namespace detail

/// Every intersection of exactly k distinct member sets has size = 0 mod ell.
/// Vacuously true for k > |family|.
inline EventownCheck is_k_wise_eventown(const SetFamily& family, std::size_t k,
                                        std::uint32_t ell,
                                        std::uint64_t budget = kDefaultSubsetBudget) {
    require(k >= 1, Errc::PreconditionViolated, "k must be at least 1");
    require(ell >= 2, Errc::PreconditionViolated, "modulus must be at least 2");
    EventownCheck out;
    if (k > family.size()) return out;
    std::vector<std::size_t> stack;
    std::vector<Bitset> inter;
    detail::kwise_dfs(family, k, ell, false, stack, inter, 0, out, budget);
    return out;
}

/// k'-wise ell-eventown for every k' <= k, enumerated in one subset sweep.
inline EventownCheck is_strong_k_wise_eventown(const SetFamily& family, std::size_t k,
                                               std::uint32_t ell,
                                               std::uint64_t budget = kDefaultSubsetBudget) {
    require(k >= 1, Errc::PreconditionViolated, "k must be at least 1");
    require(ell >= 2, Errc::PreconditionViolated, "modulus must be at least 2");
    EventownCheck out;
    std::vector<std::size_t> stack;
    std::vector<Bitset> inter;
    detail::kwise_dfs(family, std::min(k, family.size()), ell, true, stack, inter, 0, out,
                      budget);
    return out;
}

/// Verdict of an oddtown-style check.
struct OddtownCheck {
    bool pass = true;
    std::optional<std::size_t> bad_size_index;                   // |A_i| = 0 mod ell
    std::optional<std::pair<std::size_t, std::size_t>> bad_pair; // |A_i ^ A_j| != 0 mod ell
};

/// All set sizes nonzero mod ell and all pairwise intersections zero mod ell.
/// A violating pair takes precedence as the witness over a violating size.
inline OddtownCheck is_l_oddtown(const SetFamily& family, PrimeModulus ell) {
    const std::uint32_t l = ell.value();
    OddtownCheck out;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (family.set(i).intersection_count(family.set(j)) % l != 0) {
                out.pass = false;
                out.bad_pair = {i, j};
                return out;
            }
    for (std::size_t i = 0; i < family.size(); ++i)
        if (family.set(i).count() % l == 0) {
            out.pass = false;
            out.bad_size_index = i;
            return out;
        }
    return out;
}

/// The ell-auxiliary graph: vertices are the family's sets, an edge joins
/// i != j exactly when |A_i ^ A_j| != 0 mod ell.
class DefectGraph {
public:
    static DefectGraph build(const SetFamily& family, PrimeModulus ell) {
        DefectGraph g(family, ell);
        const std::size_t m = family.size();
        g.adj_.assign(m, Bitset(m));
        g.degree_.assign(m, 0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (family.set(i).intersection_count(family.set(j)) % ell.value() != 0) {
                    g.adj_[i].set(j);
                    g.adj_[j].set(i);
                    ++g.degree_[i];
                    ++g.degree_[j];
                }
        return g;
    }

    const SetFamily& family() const { return family_; }
    PrimeModulus modulus() const { return mod_; }
    std::size_t order() const { return adj_.size(); }
    bool adjacent(std::size_t i, std::size_t j) const { return adj_[i].test(j); }
    const Bitset& neighbors(std::size_t i) const { return adj_[i]; }
    std::size_t degree(std::size_t i) const { return degree_[i]; }
    const std::vector<std::size_t>& degrees() const { return degree_; }

    std::size_t max_degree() const {
        std::size_t d = 0;
        for (std::size_t x : degree_) d = std::max(d, x);
        return d;
    }

    /// Connected components, each sorted ascending, ordered by smallest vertex.
    std::vector<std::vector<std::size_t>> components() const {
        std::vector<std::vector<std::size_t>> comps;
        std::vector<bool> seen(order(), false);
        for (std::size_t v = 0; v < order(); ++v) {
            if (seen[v]) continue;
            std::vector<std::size_t> comp{v};
            seen[v] = true;
            for (std::size_t head = 0; head < comp.size(); ++head) {
                adj_[comp[head]].for_each_element([&](std::size_t u) {
                    if (!seen[u]) {
                        seen[u] = true;
                        comp.push_back(u);
                    }
                });
            }
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
        return comps;
    }

private:
    DefectGraph(const SetFamily& family, PrimeModulus ell) : family_(family), mod_(ell) {}

    SetFamily family_;
    PrimeModulus mod_;
    std::vector<Bitset> adj_;
    std::vector<std::size_t> degree_;
};

inline DefectGraph defect_graph(const SetFamily& family, PrimeModulus ell) {
    return DefectGraph::build(family, ell);
}

/// Verdict of the d-defect check.
struct DefectCheck {
    bool pass = true;
    std::optional<std::size_t> bad_size_index;
    std::optional<std::size_t> high_degree_vertex;
    std::size_t degree = 0;
};

/// All sizes nonzero mod ell and every set has at most d bad partners.
inline DefectCheck is_d_defect_l_oddtown(const SetFamily& family, std::size_t d,
                                         PrimeModulus ell) {
    DefectCheck out;
    const std::uint32_t l = ell.value();
    for (std::size_t i = 0; i < family.size(); ++i)
        if (family.set(i).count() % l == 0) {
            out.pass = false;
            out.bad_size_index = i;
            return out;
        }
    DefectGraph g = DefectGraph::build(family, ell);
    for (std::size_t i = 0; i < g.order(); ++i)
        if (g.degree(i) > d) {
            out.pass = false;
            out.high_degree_vertex = i;
            out.degree = g.degree(i);
            return out;
        }
    return out;
}

/// 0/1 characteristic vectors in family order.
inline std::vector<GFVector> characteristic_vectors(const SetFamily& family, PrimeModulus ell) {
    std::vector<GFVector> out;
    out.reserve(family.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        out.push_back(GFVector::from_bitset(ell, family.set(i)));
    return out;
}

} // namespace towns
