#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "towns/bitset.hpp"
#include "towns/gf_linalg.hpp"
#include "towns/set_family.hpp"

namespace testutil {

using towns::Bitset;
using towns::GFMatrix;
using towns::GFVector;
using towns::GroundSet;
using towns::PrimeModulus;
using towns::SetFamily;

inline Bitset bits(std::size_t n, std::initializer_list<std::size_t> elems) {
    return Bitset::from_elements(n, std::vector<std::size_t>(elems));
}

inline Bitset random_subset(std::mt19937_64& rng, std::size_t n) {
    Bitset s(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng() & 1) s.set(i);
    return s;
}

inline SetFamily random_family(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    if (n < 20) m = std::min(m, std::size_t(1) << n);  // cannot exceed the power set
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<Bitset> sets;
    while (sets.size() < m) {
        Bitset s = random_subset(rng, n);
        if (seen.insert(s.words()).second) sets.push_back(std::move(s));
    }
    return SetFamily::from_sets(GroundSet(n), std::move(sets));
}

inline GFVector random_01_vector(std::mt19937_64& rng, PrimeModulus mod, std::size_t n) {
    std::vector<std::uint8_t> c(n);
    for (auto& x : c) x = rng() & 1;
    return GFVector(mod, std::move(c));
}

inline GFVector random_vector(std::mt19937_64& rng, PrimeModulus mod, std::size_t n) {
    std::vector<std::uint8_t> c(n);
    for (auto& x : c) x = static_cast<std::uint8_t>(rng() % mod.value());
    return GFVector(mod, std::move(c));
}

/// Independent rank oracle: the span of r vectors over GF(ell) has ell^rank
/// elements; enumerate all ell^r coefficient tuples and count distinct sums.
inline std::size_t rank_by_span_enumeration(const std::vector<GFVector>& rows) {
    if (rows.empty()) return 0;
    const std::uint32_t ell = rows[0].modulus().value();
    std::set<std::vector<std::uint8_t>> span;
    std::vector<std::uint32_t> coeff(rows.size(), 0);
    while (true) {
        GFVector acc = GFVector::zero(rows[0].modulus(), rows[0].dim());
        for (std::size_t i = 0; i < rows.size(); ++i) acc.add_scaled(rows[i], coeff[i]);
        span.insert(acc.coords());
        std::size_t pos = 0;
        while (pos < coeff.size() && coeff[pos] + 1 == ell) coeff[pos++] = 0;
        if (pos == coeff.size()) break;
        ++coeff[pos];
    }
    std::size_t r = 0;
    std::size_t power = 1;
    while (power < span.size()) {
        power *= ell;
        ++r;
    }
    return r;
}

/// Exhaustive eventown oracle: check all index subsets of size exactly k.
inline bool brute_k_wise(const SetFamily& f, std::size_t k, std::uint32_t ell) {
    const std::size_t m = f.size();
    if (k > m) return true;
    std::vector<std::size_t> idx(k);
    const auto rec = [&](auto&& self, std::size_t depth, std::size_t from) -> bool {
        if (depth == k) {
            Bitset acc = f.set(idx[0]);
            for (std::size_t i = 1; i < k; ++i) acc &= f.set(idx[i]);
            return acc.count() % ell == 0;
        }
        for (std::size_t j = from; j < m; ++j) {
            idx[depth] = j;
            if (!self(self, depth + 1, j + 1)) return false;
        }
        return true;
    };
    return rec(rec, 0, 0);
}

inline bool same_sets(const std::vector<Bitset>& a, std::vector<Bitset> b) {
    if (a.size() != b.size()) return false;
    std::vector<Bitset> c = a;
    std::sort(c.begin(), c.end(), towns::canonical_less);
    std::sort(b.begin(), b.end(), towns::canonical_less);
    return c == b;
}

} // namespace testutil
