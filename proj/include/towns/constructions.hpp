#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "towns/bitset.hpp"
#include "towns/error.hpp"
#include "towns/gf_linalg.hpp"
#include "towns/set_family.hpp"
#include "towns/structure.hpp"

namespace towns {

// Generators self-check their output with the family checkers; above this
// size the check is skipped and left to the test suites.
constexpr std::size_t kGeneratorValidationCap = 4096;

/// A +-1 matrix with mutually orthogonal rows. Validated on construction with
/// packed row xors: row_i . row_j = order - 2 popcount(row_i ^ row_j).
class HadamardMatrix {
public:
    static HadamardMatrix from_entries(std::size_t order, std::vector<std::int8_t> entries) {
        require(order >= 1 && (order <= 2 || order % 4 == 0), Errc::UnsupportedOrder,
                "Hadamard order must be 1, 2 or a multiple of 4");
        require(entries.size() == order * order, Errc::DimensionMismatch,
                "entry count does not match order");
        for (std::int8_t e : entries)
            require(e == 1 || e == -1, Errc::PreconditionViolated, "entries must be +-1");
        HadamardMatrix h(order, std::move(entries));
        std::vector<Bitset> rows(order, Bitset(order));
        for (std::size_t i = 0; i < order; ++i)
            for (std::size_t j = 0; j < order; ++j)
                if (h.at(i, j) == 1) rows[i].set(j);
        for (std::size_t i = 0; i < order; ++i)
            for (std::size_t j = i + 1; j < order; ++j)
                require((rows[i] ^ rows[j]).count() * 2 == order, Errc::PreconditionViolated,
                        "rows " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                            " are not orthogonal");
        return h;
    }

    std::size_t order() const { return order_; }
    std::int8_t at(std::size_t i, std::size_t j) const { return e_[i * order_ + j]; }

    /// Rows multiplied by -1 as needed to make the last column all ones.
    HadamardMatrix normalized_last_column() const {
        std::vector<std::int8_t> e = e_;
        for (std::size_t i = 0; i < order_; ++i)
            if (e[i * order_ + order_ - 1] == -1)
                for (std::size_t j = 0; j < order_; ++j) e[i * order_ + j] *= -1;
        return HadamardMatrix(order_, std::move(e));
    }

    std::string to_string() const {
        std::string out;
        out.reserve(order_ * (order_ + 1));
        for (std::size_t i = 0; i < order_; ++i) {
            for (std::size_t j = 0; j < order_; ++j) out += at(i, j) == 1 ? '+' : '-';
            out += '\n';
        }
        return out;
    }

    static HadamardMatrix parse(const std::string& text) {
        std::vector<std::string> lines;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) lines.push_back(line);
        }
        if (lines.empty()) fail(Errc::ParseError, "empty Hadamard file");
        const std::size_t order = lines.size();
        std::vector<std::int8_t> entries;
        entries.reserve(order * order);
        for (std::size_t i = 0; i < order; ++i) {
            if (lines[i].size() != order)
                fail(Errc::ParseError, "line " + std::to_string(i + 1) + ": expected " +
                                           std::to_string(order) + " characters");
            for (char c : lines[i]) {
                if (c != '+' && c != '-')
                    fail(Errc::ParseError, "line " + std::to_string(i + 1) +
                                               ": characters must be + or -");
                entries.push_back(c == '+' ? 1 : -1);
            }
        }
        return from_entries(order, std::move(entries));
    }

private:
    HadamardMatrix(std::size_t order, std::vector<std::int8_t> entries)
        : order_(order), e_(std::move(entries)) {}

    std::size_t order_;
    std::vector<std::int8_t> e_;
};

namespace detail {

inline void check_family_budget(std::uint64_t size) {
    require(size <= kFamilyBudget, Errc::BudgetExceeded,
            "family of " + std::to_string(size) + " sets exceeds the budget");
}

// All unions of the given pairwise disjoint blocks, within universe n.
inline std::vector<Bitset> block_unions(std::size_t n, const std::vector<Bitset>& blocks) {
    check_family_budget(std::uint64_t(1) << blocks.size());
    std::vector<Bitset> out;
    out.reserve(std::size_t(1) << blocks.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << blocks.size()); ++mask) {
        Bitset u(n);
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if ((mask >> i) & 1) u |= blocks[i];
        out.push_back(std::move(u));
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

// {B | C : B in left, C in right}; the two sides must have disjoint support.
inline std::vector<Bitset> product_sets(const std::vector<Bitset>& left,
                                        const std::vector<Bitset>& right) {
    check_family_budget(std::uint64_t(left.size()) * right.size());
    std::vector<Bitset> out;
    out.reserve(left.size() * right.size());
    for (const auto& b : left)
        for (const auto& c : right) out.push_back(b | c);
    return out;
}

inline void validate_strong(const SetFamily& f, std::size_t k, std::uint32_t ell) {
    if (f.size() > kGeneratorValidationCap) return;
    const auto chk = is_strong_k_wise_eventown(f, k, ell);
    if (!chk.pass) throw std::logic_error("generator output failed its own checker");
}

} // namespace detail

/// Blocks B_i = {(i-1)b+1, ..., ib} and all 2^(n/b) unions. Block size 2 is
/// the even case; block size ell gives the mod-ell block family.
inline SetFamily block_family(GroundSet n, std::size_t block_size) {
    require(block_size >= 1, Errc::PreconditionViolated, "block size must be positive");
    const std::size_t b = n.n / block_size;
    require(b <= 22, Errc::BudgetExceeded, "too many blocks for the family budget");
    std::vector<Bitset> blocks;
    for (std::size_t i = 0; i < b; ++i)
        blocks.push_back(Bitset::range(n.n, i * block_size + 1, (i + 1) * block_size));
    SetFamily f = SetFamily::from_sets(n, detail::block_unions(n.n, blocks));
    if (block_size >= 2) detail::validate_strong(f, 2, static_cast<std::uint32_t>(block_size));
    return f;
}

/// Odd-n block family plus k-1 sets C_j | {n} over the uncovered element.
/// The C_j are the canonically smallest block unions, rotated by `seed`.
inline SetFamily augmented_block_family(GroundSet n, std::size_t k, std::uint64_t seed = 0) {
    require(k >= 2, Errc::PreconditionViolated, "k must be at least 2");
    require(n.n % 2 == 1, Errc::PreconditionViolated, "n must be odd");
    require(n.n >= 2 * ceil_log2(std::max<std::uint64_t>(k - 1, 1)), Errc::PreconditionViolated,
            "n too small to pick k-1 distinct sets");

    std::vector<Bitset> blocks;
    for (std::size_t i = 0; i < n.n / 2; ++i)
        blocks.push_back(Bitset::range(n.n, 2 * i + 1, 2 * i + 2));
    std::vector<Bitset> sets = detail::block_unions(n.n, blocks);
    const std::size_t base = sets.size();
    detail::check_family_budget(std::uint64_t(base) + k - 1);

    const std::size_t uncovered = n.n - 1;  // 0-based bit of element n
    for (std::size_t j = 0; j < k - 1; ++j) {
        Bitset c = sets[static_cast<std::size_t>((seed + j) % base)];
        c.set(uncovered);
        sets.push_back(std::move(c));
    }
    SetFamily f = SetFamily::from_sets(n, std::move(sets));
    if (f.size() <= kGeneratorValidationCap && !is_k_wise_eventown(f, k, 2).pass)
        throw std::logic_error("generator output failed its own checker");
    return f;
}

/// A strong k-wise eventown of size 2^(floor(n/2) - (2^k - k - 2)) that is
/// not (k+1)-wise: the GF(2) closure of the sets B_i = {f(S) : i in S} over a
/// window of size 2^(k+1), padded with a block family on the rest. f encodes
/// S as 1 + sum_{i in S} 2^(i-1); the tight case n = 2^(k+1)-1 drops B_0 and
/// uses the variant f(S) = sum 2^(i-1), f(empty) = 2^(k+1) instead.
inline SetFamily strong_not_higher(GroundSet n, std::size_t k) {
    require(k >= 2, Errc::PreconditionViolated, "k must be at least 2");
    require(k + 1 < 22, Errc::BudgetExceeded, "k too large for the family budget");
    const std::size_t window = std::size_t(1) << (k + 1);
    require(n.n >= window - 1, Errc::PreconditionViolated,
            "need n >= 2^(k+1)-1 for such a family to exist");

    std::vector<Bitset> seeds;
    if (n.n >= window) {
        Bitset b0(n.n);
        for (std::size_t e = 0; e < window; ++e) b0.set(e);
        seeds.push_back(std::move(b0));
        for (std::size_t i = 1; i <= k + 1; ++i) {
            Bitset bi(n.n);
            for (std::uint64_t s = 0; s < (std::uint64_t(1) << (k + 1)); ++s)
                if ((s >> (i - 1)) & 1) bi.set(static_cast<std::size_t>(1 + s) - 1);
            seeds.push_back(std::move(bi));
        }
    } else {
        // n = 2^(k+1)-1: f(S) is the plain binary encoding, nonzero on the
        // sets B_1..B_{k+1}, so they avoid f(empty) = 2^(k+1) entirely.
        for (std::size_t i = 1; i <= k + 1; ++i) {
            Bitset bi(n.n);
            for (std::uint64_t s = 1; s < (std::uint64_t(1) << (k + 1)); ++s)
                if ((s >> (i - 1)) & 1) bi.set(static_cast<std::size_t>(s) - 1);
            seeds.push_back(std::move(bi));
        }
    }

    SetFamily closure = linear_closure(SetFamily::from_sets(n, std::move(seeds)));

    std::vector<Bitset> padded;
    if (n.n >= window) {
        std::vector<Bitset> blocks;
        for (std::size_t i = 0; window + 2 * i + 2 <= n.n; ++i)
            blocks.push_back(Bitset::range(n.n, window + 2 * i + 1, window + 2 * i + 2));
        padded = detail::product_sets(closure.sets(), detail::block_unions(n.n, blocks));
    } else {
        padded = closure.sets();
    }
    SetFamily f = SetFamily::from_sets(n, std::move(padded));

    if (f.size() <= kGeneratorValidationCap) {
        detail::validate_strong(f, k, 2);
        if (is_k_wise_eventown(f, k + 1, 2).pass)
            throw std::logic_error("generator output is unexpectedly (k+1)-wise");
    }
    return f;
}

namespace detail {

// Deterministic sample check of the divisibility property when exhausting all
// index subsets is infeasible.
inline bool recursive_property_holds(const std::vector<Bitset>& sets, std::size_t r,
                                     bool exhaustive) {
    const std::size_t m = sets.size();
    const auto divisor_divides = [&](const std::vector<std::size_t>& idx) {
        Bitset acc = sets[idx[0]];
        for (std::size_t i = 1; i < idx.size(); ++i) acc &= sets[idx[i]];
        const std::uint64_t div = std::uint64_t(1) << (r - idx.size());
        return acc.count() % div == 0;
    };
    if (exhaustive) {
        std::vector<std::size_t> idx;
        const auto rec = [&](auto&& self, std::size_t next) -> bool {
            if (!idx.empty() && idx.size() <= r && !divisor_divides(idx)) return false;
            if (idx.size() == r) return true;
            for (std::size_t j = next; j < m; ++j) {
                idx.push_back(j);
                if (!self(self, j + 1)) return false;
                idx.pop_back();
            }
            return true;
        };
        return rec(rec, 0);
    }
    // sizes and pairs in full, larger subsets by a fixed linear-congruential walk
    std::vector<std::size_t> idx(1);
    for (std::size_t i = 0; i < m; ++i) {
        idx[0] = i;
        if (!divisor_divides(idx)) return false;
    }
    idx.resize(2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            idx[0] = i;
            idx[1] = j;
            if (!divisor_divides(idx)) return false;
        }
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    for (std::size_t size = 3; size <= r; ++size) {
        for (int trial = 0; trial < 64; ++trial) {
            std::vector<std::size_t> sample;
            while (sample.size() < size) {
                state = state * 6364136223846793005ULL + 1442695040888963407ULL;
                const std::size_t cand = static_cast<std::size_t>((state >> 33) % m);
                if (std::find(sample.begin(), sample.end(), cand) == sample.end())
                    sample.push_back(cand);
            }
            if (!divisor_divides(sample)) return false;
        }
    }
    return true;
}

} // namespace detail

/// The doubling family: 2^(r+1) subsets of [2^r] such that any s <= r of them
/// intersect in a multiple of 2^(r-s). Level 0 is {empty, {1}}; level r
/// extends each set by a shifted copy of itself or of its complement.
inline SetFamily recursive_family(std::size_t r) {
    require(r <= 12, Errc::BudgetExceeded, "recursion depth capped at 12");
    std::vector<Bitset> cur;
    cur.emplace_back(1);
    cur.push_back(Bitset::from_elements(1, {1}));
    for (std::size_t level = 1; level <= r; ++level) {
        const std::size_t half = std::size_t(1) << (level - 1);
        const std::size_t width = half * 2;
        std::vector<Bitset> next;
        next.reserve(cur.size() * 2);
        for (const auto& a : cur) next.push_back(a.embedded(width, 0) | a.embedded(width, half));
        for (const auto& a : cur)
            next.push_back(a.embedded(width, 0) | a.complement().embedded(width, half));
        cur = std::move(next);
    }

    const bool exhaustive = r <= 4;
    if (!detail::recursive_property_holds(cur, r, exhaustive))
        throw std::logic_error("recursive family violates its divisibility property");
    return SetFamily::from_sets(GroundSet(std::max<std::size_t>(std::size_t(1) << r, 1)),
                                std::move(cur));
}

/// Product of floor(n/(2^k ell)) shifted copies of the doubling family, a
/// strong k-wise ell-eventown of size (2^(k+1) ell)^floor(n/(2^k ell)) for
/// ell a power of two.
inline SetFamily power_of_two_eventown(GroundSet n, std::size_t k, std::uint32_t ell) {
    require(ell >= 2 && (ell & (ell - 1)) == 0, Errc::NotPowerOfTwo,
            "ell must be a power of two");
    require(k >= 1, Errc::PreconditionViolated, "k must be positive");
    const std::size_t a = static_cast<std::size_t>(std::countr_zero(ell));
    const std::size_t r = k + a;
    require(r <= 12, Errc::BudgetExceeded, "2^k * ell too large");
    const std::size_t window = std::size_t(1) << r;
    const std::size_t q = n.n / window;
    require(q >= 1, Errc::PreconditionViolated, "universe smaller than 2^k * ell");
    require(q * (r + 1) <= 22, Errc::BudgetExceeded, "output exceeds the family budget");

    const SetFamily base = recursive_family(r);
    std::vector<Bitset> out{Bitset(n.n)};
    for (std::size_t j = 0; j < q; ++j) {
        std::vector<Bitset> next;
        next.reserve(out.size() * base.size());
        for (const auto& prefix : out)
            for (const auto& b : base.sets())
                next.push_back(prefix | b.embedded(n.n, j * window));
        out = std::move(next);
    }
    SetFamily f = SetFamily::from_sets(n, std::move(out));
    detail::validate_strong(f, k, ell);
    return f;
}

/// B_i = A_i | (complement(A_i) + n) on [2n]. Preserves family size; each
/// output set has size exactly n. Turns a strong (k-1)-wise ell-eventown into
/// a strong k-wise one when ell | n and k is odd.
inline SetFamily step_up(const SetFamily& family, std::uint32_t ell) {
    require(ell >= 1, Errc::PreconditionViolated, "ell must be positive");
    const std::size_t n = family.ground().n;
    require(n % ell == 0, Errc::DivisibilityViolated, "ell does not divide n");
    GroundSet doubled(2 * n);
    std::vector<Bitset> out;
    out.reserve(family.size());
    for (const auto& a : family.sets())
        out.push_back(a.embedded(2 * n, 0) | a.complement().embedded(2 * n, n));
    return SetFamily::from_sets(doubled, std::move(out));
}

/// Sylvester doubling [[H,H],[H,-H]] starting from [[1]].
inline HadamardMatrix hadamard_sylvester(std::size_t power) {
    require(power <= 12, Errc::BudgetExceeded, "doubling capped at order 2^12");
    std::vector<std::int8_t> e{1};
    std::size_t order = 1;
    for (std::size_t p = 0; p < power; ++p) {
        const std::size_t next = order * 2;
        std::vector<std::int8_t> d(next * next);
        for (std::size_t i = 0; i < order; ++i)
            for (std::size_t j = 0; j < order; ++j) {
                const std::int8_t v = e[i * order + j];
                d[i * next + j] = v;
                d[i * next + j + order] = v;
                d[(i + order) * next + j] = v;
                d[(i + order) * next + j + order] = static_cast<std::int8_t>(-v);
            }
        e = std::move(d);
        order = next;
    }
    return HadamardMatrix::from_entries(order, std::move(e));
}

/// Paley's order q+1 matrix from the quadratic residues of GF(q), for prime
/// q = 3 (mod 4): H = I + S with S the skew conference matrix bordering the
/// Jacobsthal matrix.
inline HadamardMatrix hadamard_paley(std::uint32_t q) {
    require(PrimeModulus::is_prime(q) && q % 2 == 1, Errc::UnsupportedOrder,
            "q must be an odd prime in this implementation");
    require(q % 4 == 3, Errc::UnsupportedOrder, "type-I Paley needs q = 3 (mod 4)");

    std::vector<bool> residue(q, false);
    for (std::uint64_t x = 1; x < q; ++x) residue[static_cast<std::size_t>(x * x % q)] = true;
    const auto chi = [&](std::uint32_t x) -> int {
        if (x == 0) return 0;
        return residue[x] ? 1 : -1;
    };

    const std::size_t order = q + 1;
    std::vector<std::int8_t> e(order * order, 0);
    const auto set = [&](std::size_t i, std::size_t j, int v) {
        e[i * order + j] = static_cast<std::int8_t>(v);
    };
    set(0, 0, 1);  // S[0][0] = 0 plus the identity
    for (std::size_t j = 1; j < order; ++j) set(0, j, 1);
    for (std::size_t i = 1; i < order; ++i) set(i, 0, -1);
    for (std::size_t i = 1; i < order; ++i)
        for (std::size_t j = 1; j < order; ++j) {
            const std::uint32_t diff = (static_cast<std::uint32_t>(i - 1) + q -
                                        static_cast<std::uint32_t>(j - 1)) % q;
            int v = chi(diff);
            if (i == j) v = 1;  // Jacobsthal diagonal is 0; identity adds 1
            set(i, j, v);
        }
    return HadamardMatrix::from_entries(order, std::move(e));
}

/// The 2n-4 sets A_j | {n}, B_j | {n} built from the columns of an order n-1
/// Hadamard matrix normalized to an all-ones last column. Valid 1-defect
/// input needs n = 5 (mod 8) for ell = 2 and ell | n+3 for odd ell.
inline SetFamily one_defect_from_hadamard(const HadamardMatrix& h, PrimeModulus ell) {
    const std::size_t n = h.order() + 1;
    if (ell.value() == 2)
        require(n % 8 == 5, Errc::DivisibilityViolated, "need n = 5 (mod 8) for ell = 2");
    else
        require((n + 3) % ell.value() == 0, Errc::DivisibilityViolated,
                "need ell | n+3 for odd ell");

    const HadamardMatrix norm = h.normalized_last_column();
    std::vector<Bitset> sets;
    sets.reserve(2 * (n - 2));
    for (std::size_t j = 0; j + 1 < h.order(); ++j) {
        Bitset a(n), b(n);
        for (std::size_t i = 0; i < h.order(); ++i) {
            if (norm.at(i, j) == 1)
                a.set(i);
            else
                b.set(i);
        }
        a.set(n - 1);
        b.set(n - 1);
        sets.push_back(std::move(a));
        sets.push_back(std::move(b));
    }
    SetFamily f = SetFamily::from_sets(GroundSet(n), std::move(sets));
    if (f.size() <= kGeneratorValidationCap && !is_d_defect_l_oddtown(f, 1, ell).pass)
        throw std::logic_error("generator output failed its own checker");
    return f;
}

/// Core-times-apex families: {B | {i} : B in core, i > s}, a d-defect
/// ell-oddtown of size (d+1)(n-s). The default core takes the d+1 canonically
/// smallest unions of ceil(log2(d+1)) blocks of size ell; any ell-eventown
/// with at least d+1 sets works as a custom core.
inline SetFamily d_defect_construction(GroundSet n, std::size_t d, PrimeModulus ell,
                                       const std::optional<SetFamily>& core = std::nullopt) {
    std::vector<Bitset> core_sets;
    std::size_t s = 0;
    if (core) {
        s = core->ground().n;
        require(s <= n.n - 1, Errc::PreconditionViolated, "core universe leaves no apex room");
        require(core->size() >= d + 1, Errc::PreconditionViolated,
                "core must have at least d+1 sets");
        require(is_strong_k_wise_eventown(*core, 2, ell.value()).pass, Errc::CoreNotEventown,
                "core is not an ell-eventown");
        for (std::size_t i = 0; i <= d; ++i) core_sets.push_back(core->set(i).embedded(n.n, 0));
    } else {
        const std::size_t t = ceil_log2(d + 1);
        s = ell.value() * t;
        require(s <= n.n - 1, Errc::PreconditionViolated,
                "universe too small for the default core");
        std::vector<Bitset> blocks;
        for (std::size_t i = 0; i < t; ++i)
            blocks.push_back(Bitset::range(n.n, i * ell.value() + 1, (i + 1) * ell.value()));
        std::vector<Bitset> unions = detail::block_unions(n.n, blocks);
        core_sets.assign(unions.begin(), unions.begin() + (d + 1));
    }

    detail::check_family_budget(std::uint64_t(d + 1) * (n.n - s));
    std::vector<Bitset> sets;
    sets.reserve((d + 1) * (n.n - s));
    for (const auto& b : core_sets)
        for (std::size_t i = s; i < n.n; ++i) {
            Bitset withApex = b;
            withApex.set(i);
            sets.push_back(std::move(withApex));
        }
    SetFamily f = SetFamily::from_sets(n, std::move(sets));
    if (f.size() <= kGeneratorValidationCap && !is_d_defect_l_oddtown(f, d, ell).pass)
        throw std::logic_error("generator output failed its own checker");
    return f;
}

} // namespace towns
