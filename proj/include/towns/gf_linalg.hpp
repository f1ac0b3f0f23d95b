#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "towns/bitset.hpp"
#include "towns/error.hpp"

namespace towns {

inline std::size_t ceil_log2(std::uint64_t x) {
    // x >= 1
    return static_cast<std::size_t>(std::bit_width(x - 1));
}

/// A prime modulus for GF(ell) arithmetic. Residues are stored as bytes, so
/// ell is capped at 251 (the largest prime below 256); every use in this
/// library has ell in single digits.
class PrimeModulus {
public:
    explicit PrimeModulus(std::uint32_t ell) : ell_(ell) {
        require(is_prime(ell), Errc::NotPrime, std::to_string(ell) + " is not prime");
        require(ell <= 251, Errc::PreconditionViolated, "modulus exceeds byte storage");
    }

    /// Skips the primality check. Only the eventown checkers, whose modulus
    /// may be composite, go through here.
    static PrimeModulus unchecked(std::uint32_t ell) {
        require(ell >= 2, Errc::PreconditionViolated, "modulus must be at least 2");
        require(ell <= 251, Errc::PreconditionViolated, "modulus exceeds byte storage");
        return PrimeModulus(ell, 0);
    }

    std::uint32_t value() const { return ell_; }

    bool operator==(const PrimeModulus& o) const { return ell_ == o.ell_; }
    bool operator!=(const PrimeModulus& o) const { return ell_ != o.ell_; }

    static bool is_prime(std::uint32_t x) {
        if (x < 2) return false;
        for (std::uint32_t d = 2; d * d <= x; ++d)
            if (x % d == 0) return false;
        return true;
    }

private:
    PrimeModulus(std::uint32_t ell, int) : ell_(ell) {}
    std::uint32_t ell_;
};

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t ell) {
    a %= ell;
    for (std::uint32_t x = 1; x < ell; ++x)
        if (a * x % ell == 1) return x;
    fail(Errc::PreconditionViolated, "no inverse for " + std::to_string(a));
}

/// A vector over GF(ell) with reduced byte coordinates.
class GFVector {
public:
    GFVector(PrimeModulus mod, std::vector<std::uint8_t> coords)
        : mod_(mod), c_(std::move(coords)) {
        for (auto& x : c_) x = static_cast<std::uint8_t>(x % mod_.value());
    }

    static GFVector zero(PrimeModulus mod, std::size_t n) {
        return GFVector(mod, std::vector<std::uint8_t>(n, 0));
    }

    static GFVector from_bitset(PrimeModulus mod, const Bitset& b) {
        std::vector<std::uint8_t> c(b.universe(), 0);
        b.for_each_element([&](std::size_t e) { c[e] = 1; });
        return GFVector(mod, std::move(c));
    }

    PrimeModulus modulus() const { return mod_; }
    std::size_t dim() const { return c_.size(); }
    std::uint8_t operator[](std::size_t i) const { return c_[i]; }
    const std::vector<std::uint8_t>& coords() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](std::uint8_t x) { return x == 0; });
    }

    bool is_zero_one() const {
        return std::all_of(c_.begin(), c_.end(), [](std::uint8_t x) { return x <= 1; });
    }

    std::uint32_t dot(const GFVector& o) const {
        require(mod_ == o.mod_ && dim() == o.dim(), Errc::DimensionMismatch,
                "dot product needs matching dimension and modulus");
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < c_.size(); ++i) acc += std::uint32_t(c_[i]) * o.c_[i];
        return static_cast<std::uint32_t>(acc % mod_.value());
    }

    GFVector& add_scaled(const GFVector& o, std::uint32_t s) {
        const std::uint32_t ell = mod_.value();
        s %= ell;
        for (std::size_t i = 0; i < c_.size(); ++i)
            c_[i] = static_cast<std::uint8_t>((c_[i] + s * o.c_[i]) % ell);
        return *this;
    }

    GFVector& sub(const GFVector& o) { return add_scaled(o, mod_.value() - 1); }
    GFVector& add(const GFVector& o) { return add_scaled(o, 1); }

    GFVector scaled(std::uint32_t s) const {
        GFVector r = *this;
        const std::uint32_t ell = mod_.value();
        s %= ell;
        for (auto& x : r.c_) x = static_cast<std::uint8_t>(x * s % ell);
        return r;
    }

    bool operator==(const GFVector& o) const { return mod_ == o.mod_ && c_ == o.c_; }
    bool operator!=(const GFVector& o) const { return !(*this == o); }

private:
    PrimeModulus mod_;
    std::vector<std::uint8_t> c_;
};

/// Dense matrix over GF(ell), row-major reduced bytes.
class GFMatrix {
public:
    GFMatrix(PrimeModulus mod, std::size_t rows, std::size_t cols)
        : mod_(mod), r_(rows), c_(cols), e_(rows * cols, 0) {}

    static GFMatrix from_rows(const std::vector<GFVector>& rows) {
        require(!rows.empty(), Errc::DimensionMismatch, "from_rows needs at least one row");
        GFMatrix m(rows[0].modulus(), rows.size(), rows[0].dim());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].modulus() == m.mod_ && rows[i].dim() == m.c_,
                    Errc::DimensionMismatch, "rows disagree on dimension or modulus");
            for (std::size_t j = 0; j < m.c_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    PrimeModulus modulus() const { return mod_; }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    std::uint8_t& at(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
    std::uint8_t at(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }

    GFVector row(std::size_t i) const {
        return GFVector(mod_, std::vector<std::uint8_t>(e_.begin() + i * c_,
                                                        e_.begin() + (i + 1) * c_));
    }

private:
    PrimeModulus mod_;
    std::size_t r_, c_;
    std::vector<std::uint8_t> e_;
};

namespace detail {

/// In-place RREF. Returns the pivot columns; on exit `rows` holds the nonzero
/// reduced rows first (pivot 1, zeros above and below), in pivot order.
inline std::vector<std::size_t> rref_rows(std::vector<std::vector<std::uint8_t>>& rows,
                                          std::uint32_t ell) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t ncols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][col] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        const std::uint32_t inv = inv_mod(rows[r][col], ell);
        for (auto& x : rows[r]) x = static_cast<std::uint8_t>(x * inv % ell);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            const std::uint32_t f = ell - rows[i][col];
            for (std::size_t j = col; j < ncols; ++j)
                rows[i][j] = static_cast<std::uint8_t>((rows[i][j] + f * rows[r][j]) % ell);
        }
        pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

inline std::vector<std::vector<std::uint8_t>> matrix_rows(const GFMatrix& m) {
    std::vector<std::vector<std::uint8_t>> rows(m.rows(), std::vector<std::uint8_t>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m.at(i, j);
    return rows;
}

} // namespace detail

/// Incremental echelon basis over GF(2), rows packed as bitsets. Pivot of a
/// row is its lowest set bit; rows are kept in ascending pivot order.
class Gf2Basis {
public:
    /// Reduce v against the basis; the residual is zero iff v is in the span.
    Bitset reduce(Bitset v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (v.test(lead_[i])) v ^= rows_[i];
        return v;
    }

    /// Returns true when v was independent and the basis grew.
    bool insert(const Bitset& v) {
        Bitset r = reduce(v);
        if (r.none()) return false;
        const std::size_t lead = r.find_first();
        std::size_t pos = 0;
        while (pos < lead_.size() && lead_[pos] < lead) ++pos;
        rows_.insert(rows_.begin() + pos, r);
        lead_.insert(lead_.begin() + pos, lead);
        return true;
    }

    std::size_t dim() const { return rows_.size(); }
    const std::vector<Bitset>& rows() const { return rows_; }

private:
    std::vector<Bitset> rows_;
    std::vector<std::size_t> lead_;
};

inline std::size_t rank(const GFMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if (m.modulus().value() == 2) {
        // Packed elimination: the dominant workloads are over GF(2).
        Gf2Basis basis;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            Bitset row(m.cols());
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m.at(i, j)) row.set(j);
            basis.insert(row);
        }
        return basis.dim();
    }
    auto rows = detail::matrix_rows(m);
    return detail::rref_rows(rows, m.modulus().value()).size();
}

/// A subspace of GF(ell)^n held as its unique reduced-echelon basis.
/// Subspace equality is plain representation equality.
class Subspace {
public:
    static Subspace zero(PrimeModulus mod, std::size_t ambient) {
        return Subspace(mod, ambient, {});
    }

    static Subspace span_of(PrimeModulus mod, std::size_t ambient,
                            const std::vector<GFVector>& vectors) {
        std::vector<std::vector<std::uint8_t>> rows;
        rows.reserve(vectors.size());
        for (const auto& v : vectors) {
            require(v.modulus() == mod && v.dim() == ambient, Errc::DimensionMismatch,
                    "span vectors disagree on dimension or modulus");
            rows.push_back(v.coords());
        }
        detail::rref_rows(rows, mod.value());
        std::vector<GFVector> basis;
        basis.reserve(rows.size());
        for (auto& r : rows) basis.emplace_back(mod, std::move(r));
        return Subspace(mod, ambient, std::move(basis));
    }

    PrimeModulus modulus() const { return mod_; }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<GFVector>& basis() const { return basis_; }

    bool contains(const GFVector& v) const {
        if (v.dim() != ambient_ || v.modulus() != mod_) return false;
        return reduce(v).is_zero();
    }

    bool contains(const Subspace& o) const {
        for (const auto& b : o.basis_)
            if (!contains(b)) return false;
        return true;
    }

    /// Residual of v after elimination against the echelon basis.
    GFVector reduce(GFVector v) const {
        const std::uint32_t ell = mod_.value();
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const std::uint8_t coeff = v[pivot(i)];
            if (coeff) v.add_scaled(basis_[i], ell - coeff);
        }
        return v;
    }

    bool operator==(const Subspace& o) const {
        return mod_ == o.mod_ && ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    Subspace(PrimeModulus mod, std::size_t ambient, std::vector<GFVector> basis)
        : mod_(mod), ambient_(ambient), basis_(std::move(basis)) {}

    std::size_t pivot(std::size_t row) const {
        const auto& c = basis_[row].coords();
        for (std::size_t j = 0; j < c.size(); ++j)
            if (c[j]) return j;
        return c.size();
    }

    PrimeModulus mod_;
    std::size_t ambient_;
    std::vector<GFVector> basis_;
};

inline Subspace row_space(const GFMatrix& m) {
    std::vector<GFVector> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return Subspace::span_of(m.modulus(), m.cols(), rows);
}

constexpr std::uint64_t kDefaultSpanCap = std::uint64_t(1) << 26;

/// All ell^dim vectors of the span, each exactly once, walked in reflected
/// mixed-radix Gray order over the basis coefficients so that consecutive
/// vectors differ by one basis multiple.
inline std::vector<GFVector> enumerate_span(const Subspace& s,
                                            std::uint64_t cap = kDefaultSpanCap) {
    const std::uint32_t ell = s.modulus().value();
    const std::size_t m = s.dim();

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (total > cap / ell) fail(Errc::CapExceeded, "span larger than cap");
        total *= ell;
    }
    require(total <= cap, Errc::CapExceeded, "span larger than cap");

    std::vector<GFVector> out;
    out.reserve(static_cast<std::size_t>(total));
    GFVector cur = GFVector::zero(s.modulus(), s.ambient_dim());
    out.push_back(cur);

    // Knuth 7.2.1.1 Algorithm H, all radices equal to ell.
    std::vector<std::uint32_t> a(m, 0);
    std::vector<std::size_t> f(m + 1);
    for (std::size_t i = 0; i <= m; ++i) f[i] = i;
    std::vector<int> o(m, 1);
    while (true) {
        std::size_t j = f[0];
        f[0] = 0;
        if (j == m) break;
        if (o[j] > 0) {
            a[j] += 1;
            cur.add(s.basis()[j]);
        } else {
            a[j] -= 1;
            cur.sub(s.basis()[j]);
        }
        if (a[j] == 0 || a[j] == ell - 1) {
            o[j] = -o[j];
            f[j] = f[j + 1];
            f[j + 1] = j + 1;
        }
        out.push_back(cur);
    }
    return out;
}

/// Gram matrix of pairwise dot products mod ell. Empty input gives a 0x0
/// matrix over GF(2).
inline GFMatrix gram(const std::vector<GFVector>& vectors) {
    if (vectors.empty()) return GFMatrix(PrimeModulus::unchecked(2), 0, 0);
    GFMatrix g(vectors[0].modulus(), vectors.size(), vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = i; j < vectors.size(); ++j) {
            const std::uint8_t d = static_cast<std::uint8_t>(vectors[i].dot(vectors[j]));
            g.at(i, j) = d;
            g.at(j, i) = d;
        }
    return g;
}

/// True iff the dot product restricted to s has zero radical, i.e. the Gram
/// matrix of the basis has full rank.
inline bool is_nondegenerate(const Subspace& s) {
    if (s.dim() == 0) return true;
    return rank(gram(s.basis())) == s.dim();
}

/// U^perp inside V: all x in V with x.u = 0 for every u in U.
inline Subspace orthogonal_complement_in(const Subspace& v, const Subspace& u) {
    require(u.modulus() == v.modulus() && u.ambient_dim() == v.ambient_dim(),
            Errc::DimensionMismatch, "subspaces live in different ambient spaces");
    require(v.contains(u), Errc::NotSubspace, "U is not contained in V");
    require(is_nondegenerate(v), Errc::DegenerateAmbient, "ambient V is degenerate");

    const PrimeModulus mod = v.modulus();
    if (v.dim() == 0) return Subspace::zero(mod, v.ambient_dim());

    // Constrain coefficients c of V's basis: for each u_i, sum_j c_j (v_j.u_i) = 0.
    GFMatrix constraints(mod, u.dim(), v.dim());
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < v.dim(); ++j)
            constraints.at(i, j) = static_cast<std::uint8_t>(u.basis()[i].dot(v.basis()[j]));

    auto rows = detail::matrix_rows(constraints);
    const auto pivots = detail::rref_rows(rows, mod.value());

    std::vector<bool> is_pivot(v.dim(), false);
    for (std::size_t p : pivots) is_pivot[p] = true;

    std::vector<GFVector> result;
    for (std::size_t free = 0; free < v.dim(); ++free) {
        if (is_pivot[free]) continue;
        GFVector w = v.basis()[free];
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            const std::uint8_t coeff = rows[r][free];
            if (coeff) w.add_scaled(v.basis()[pivots[r]], mod.value() - coeff);
        }
        result.push_back(std::move(w));
    }
    return Subspace::span_of(mod, v.ambient_dim(), result);
}

/// Greedy left-to-right choice of a linearly independent subset of distinct
/// 0/1 vectors; the result always has size at least ceil(log2 t).
inline std::vector<std::size_t> independent_01_subset(const std::vector<GFVector>& vectors) {
    for (const auto& v : vectors)
        require(v.is_zero_one(), Errc::PreconditionViolated, "vector has entries outside {0,1}");
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = i + 1; j < vectors.size(); ++j)
            require(vectors[i] != vectors[j], Errc::DuplicateVectors,
                    "vectors " + std::to_string(i) + " and " + std::to_string(j) + " coincide");

    std::vector<std::size_t> chosen;
    if (vectors.empty()) return chosen;
    std::vector<std::vector<std::uint8_t>> rows;  // kept in echelon form
    const std::uint32_t ell = vectors[0].modulus().value();
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        auto trial = rows;
        trial.push_back(vectors[i].coords());
        if (detail::rref_rows(trial, ell).size() > rows.size()) {
            rows = std::move(trial);
            chosen.push_back(i);
        }
    }
    return chosen;
}

struct DimensionLemmaReport {
    std::size_t t = 0;
    std::size_t dim_w = 0;
    std::size_t dim_b = 0;  // rank of the b_i
    std::size_t dim_c = 0;  // rank of the witnesses c_i = (b1.b1) b_i - (b1.b_i) b1
    std::size_t bound = 0;  // 2 ceil(log2(t+1)) - 1
    bool bound_holds = false;
    bool chain_holds = false;  // dim_c = dim_b - 1 and dim_w >= dim_b + dim_c
    std::optional<std::size_t> bound_gf2;  // 2 ceil(log2 t) + 1; GF(2) only
    bool bound_gf2_holds = false;
};

/// Checks the product hypothesis (b1.b1)(bi.bj) = (b1.bi)(b1.bj) != 0 on
/// distinct 0/1 vectors inside a non-degenerate subspace, then reports the
/// dimension bound it forces on W together with the c_i witnesses.
inline DimensionLemmaReport check_dimension_lemma(const std::vector<GFVector>& b,
                                                  const Subspace& w) {
    require(!b.empty(), Errc::PreconditionViolated, "need at least one vector");
    require(is_nondegenerate(w), Errc::DegenerateAmbient, "W is degenerate");
    for (const auto& v : b) {
        require(v.is_zero_one(), Errc::PreconditionViolated, "vector has entries outside {0,1}");
        require(w.contains(v), Errc::NotInSubspace, "b vector outside W");
    }
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
            require(b[i] != b[j], Errc::DuplicateVectors, "b vectors are not distinct");

    const std::uint32_t ell = w.modulus().value();
    const std::uint32_t b11 = b[0].dot(b[0]);
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            const std::uint32_t lhs = b11 * b[i].dot(b[j]) % ell;
            const std::uint32_t rhs = b[0].dot(b[i]) * b[0].dot(b[j]) % ell;
            if (lhs != rhs || lhs == 0)
                fail(Errc::HypothesisFailed,
                     "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }

    std::vector<GFVector> c;
    c.reserve(b.size());
    for (const auto& bi : b) {
        GFVector ci = bi.scaled(b11);
        ci.add_scaled(b[0], ell - b[0].dot(bi) % ell);
        c.push_back(std::move(ci));
    }

    DimensionLemmaReport rep;
    rep.t = b.size();
    rep.dim_w = w.dim();
    rep.dim_b = rank(GFMatrix::from_rows(b));
    rep.dim_c = rank(GFMatrix::from_rows(c));
    rep.bound = 2 * ceil_log2(rep.t + 1) - 1;
    rep.bound_holds = rep.dim_w >= rep.bound;
    rep.chain_holds = rep.dim_c + 1 == rep.dim_b && rep.dim_w >= rep.dim_b + rep.dim_c;
    if (ell == 2) {
        rep.bound_gf2 = 2 * ceil_log2(std::max<std::uint64_t>(rep.t, 1)) + 1;
        rep.bound_gf2_holds = rep.dim_w >= *rep.bound_gf2;
    }
    return rep;
}

} // namespace towns
