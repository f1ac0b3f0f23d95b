#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "towns/constructions.hpp"
#include "towns/set_family.hpp"

#include "test_helpers.hpp"

using namespace towns;
using testutil::bits;

namespace {

// Exact integer check of the defining identity, independent of the packed
// validation inside the class.
bool orthogonality_by_multiplication(const HadamardMatrix& h) {
    const std::size_t n = h.order();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            long long dot = 0;
            for (std::size_t t = 0; t < n; ++t) dot += (long long)h.at(i, t) * h.at(j, t);
            if (dot != (i == j ? (long long)n : 0)) return false;
        }
    return true;
}

} // namespace

TEST_CASE("block families") {
    const SetFamily f = block_family(GroundSet(6), 2);
    CHECK(f.size() == 8);
    for (std::size_t k = 1; k <= 5; ++k) CHECK(is_strong_k_wise_eventown(f, k, 2).pass);

    const SetFamily mod3 = block_family(GroundSet(9), 3);
    CHECK(mod3.size() == 8);
    CHECK(is_strong_k_wise_eventown(mod3, 4, 3).pass);

    const SetFamily tiny = block_family(GroundSet(1), 2);
    REQUIRE(tiny.size() == 1);
    CHECK(tiny.set(0) == bits(1, {}));

    CHECK_THROWS_AS(block_family(GroundSet(100), 1), Error);  // budget
}

TEST_CASE("augmented block families") {
    const SetFamily f9 = augmented_block_family(GroundSet(9), 3);
    CHECK(f9.size() == 18);
    CHECK(is_k_wise_eventown(f9, 3, 2).pass);
    CHECK_FALSE(is_k_wise_eventown(f9, 2, 2).pass);

    const SetFamily f7 = augmented_block_family(GroundSet(7), 2);
    CHECK(f7.size() == 9);
    CHECK(is_k_wise_eventown(f7, 2, 2).pass);

    // alternative seed still yields a k-wise family of the same size
    const SetFamily seeded = augmented_block_family(GroundSet(9), 3, 5);
    CHECK(seeded.size() == 18);
    CHECK(is_k_wise_eventown(seeded, 3, 2).pass);
    CHECK(seeded != f9);

    CHECK_THROWS_AS(augmented_block_family(GroundSet(8), 3), Error);  // n must be odd
}

TEST_CASE("strong but not higher families") {
    const SetFamily f7 = strong_not_higher(GroundSet(7), 2);
    CHECK(f7.size() == 8);  // 2^(3 - (4-2-2))
    CHECK(is_strong_k_wise_eventown(f7, 2, 2).pass);
    CHECK_FALSE(is_k_wise_eventown(f7, 3, 2).pass);

    const SetFamily f8 = strong_not_higher(GroundSet(8), 2);
    CHECK(f8.size() == 16);  // the closure alone: 2^(k+2)
    CHECK(is_strong_k_wise_eventown(f8, 2, 2).pass);
    CHECK_FALSE(is_k_wise_eventown(f8, 3, 2).pass);

    const SetFamily f15 = strong_not_higher(GroundSet(15), 3);
    CHECK(f15.size() == 16);  // 2^(7-3)
    CHECK(is_strong_k_wise_eventown(f15, 3, 2).pass);
    CHECK_FALSE(is_k_wise_eventown(f15, 4, 2).pass);

    CHECK_THROWS_AS(strong_not_higher(GroundSet(6), 2), Error);  // below 2^(k+1)-1
}

TEST_CASE("recursive doubling families") {
    const SetFamily r1 = recursive_family(1);
    CHECK(r1.ground().n == 2);
    CHECK(testutil::same_sets(r1.sets(),
                              {bits(2, {}), bits(2, {1, 2}), bits(2, {2}), bits(2, {1})}));

    const SetFamily r2 = recursive_family(2);
    CHECK(r2.size() == 8);
    CHECK(r2.ground().n == 4);
    for (const auto& s : r2.sets()) CHECK(s.count() % 2 == 0);

    const SetFamily r3 = recursive_family(3);
    CHECK(r3.size() == 16);
    CHECK(is_strong_k_wise_eventown(r3, 2, 2).pass);

    CHECK_THROWS_AS(recursive_family(13), Error);
}

TEST_CASE("recursive divisibility property, exhaustive to r = 4 and sampled beyond") {
    for (std::size_t r = 0; r <= 4; ++r) {
        const SetFamily f = recursive_family(r);
        REQUIRE(f.size() == (std::size_t(1) << (r + 1)));
        // independent exhaustive oracle over all index subsets of size <= r
        std::vector<std::size_t> idx;
        const auto rec = [&](auto&& self, std::size_t from) -> bool {
            if (!idx.empty()) {
                Bitset acc = f.set(idx[0]);
                for (std::size_t i = 1; i < idx.size(); ++i) acc &= f.set(idx[i]);
                if (acc.count() % (std::size_t(1) << (r - idx.size())) != 0) return false;
            }
            if (idx.size() == r) return true;
            for (std::size_t j = from; j < f.size(); ++j) {
                idx.push_back(j);
                if (!self(self, j + 1)) return false;
                idx.pop_back();
            }
            return true;
        };
        CHECK(rec(rec, 0));
    }
    std::mt19937_64 rng(4001);
    for (std::size_t r : {5, 6}) {
        const SetFamily f = recursive_family(r);
        for (int trial = 0; trial < 300; ++trial) {
            const std::size_t size = 1 + rng() % r;
            std::vector<std::size_t> idx;
            while (idx.size() < size) {
                const std::size_t c = rng() % f.size();
                if (std::find(idx.begin(), idx.end(), c) == idx.end()) idx.push_back(c);
            }
            Bitset acc = f.set(idx[0]);
            for (std::size_t i = 1; i < idx.size(); ++i) acc &= f.set(idx[i]);
            CHECK(acc.count() % (std::size_t(1) << (r - size)) == 0);
        }
    }
}

TEST_CASE("power of two eventowns") {
    const SetFamily a = power_of_two_eventown(GroundSet(8), 2, 2);
    CHECK(a.size() == 16);
    CHECK(is_strong_k_wise_eventown(a, 2, 2).pass);

    const SetFamily b = power_of_two_eventown(GroundSet(16), 2, 2);
    CHECK(b.size() == 256);
    CHECK(is_strong_k_wise_eventown(b, 2, 2).pass);

    const SetFamily c = power_of_two_eventown(GroundSet(8), 1, 4);
    CHECK(c.size() == 16);
    for (const auto& s : c.sets()) CHECK(s.count() % 4 == 0);
    CHECK(is_strong_k_wise_eventown(c, 1, 4).pass);

    CHECK_THROWS_AS(power_of_two_eventown(GroundSet(8), 2, 3), Error);   // not a power of two
    CHECK_THROWS_AS(power_of_two_eventown(GroundSet(4), 2, 2), Error);   // universe too small
}

TEST_CASE("step up") {
    const SetFamily in = SetFamily::from_sets(
        GroundSet(4),
        {bits(4, {}), bits(4, {1, 2}), bits(4, {3, 4}), bits(4, {1, 2, 3, 4})});
    const SetFamily out = step_up(in, 2);
    CHECK(out.ground().n == 8);
    CHECK(out.size() == in.size());
    CHECK(testutil::same_sets(out.sets(), {bits(8, {5, 6, 7, 8}), bits(8, {1, 2, 7, 8}),
                                           bits(8, {3, 4, 5, 6}), bits(8, {1, 2, 3, 4})}));
    for (const auto& s : out.sets()) CHECK(s.count() == 4);

    // direct enumeration of all triple intersections
    CHECK(testutil::brute_k_wise(out, 3, 2));
    CHECK(is_strong_k_wise_eventown(out, 3, 2).pass);

    CHECK_THROWS_AS(step_up(SetFamily::empty(GroundSet(5)), 2), Error);  // 2 does not divide 5
}

TEST_CASE("step up turns strong 2-wise block families into strong 3-wise") {
    for (std::size_t n : {4, 6, 8}) {
        const SetFamily in = block_family(GroundSet(n), 2);
        const SetFamily out = step_up(in, 2);
        CHECK(out.size() == in.size());
        CHECK(is_strong_k_wise_eventown(out, 3, 2).pass);
    }
    // mod 3: the same raise works for any modulus dividing n
    const SetFamily in3 = block_family(GroundSet(6), 3);
    const SetFamily out3 = step_up(in3, 3);
    CHECK(out3.ground().n == 12);
    CHECK(out3.size() == in3.size());
    CHECK(is_strong_k_wise_eventown(out3, 3, 3).pass);
}

TEST_CASE("sylvester doubling") {
    const HadamardMatrix h0 = hadamard_sylvester(0);
    CHECK(h0.order() == 1);
    CHECK(h0.at(0, 0) == 1);

    const HadamardMatrix h1 = hadamard_sylvester(1);
    CHECK(h1.order() == 2);
    CHECK(h1.at(0, 0) == 1);
    CHECK(h1.at(0, 1) == 1);
    CHECK(h1.at(1, 0) == 1);
    CHECK(h1.at(1, 1) == -1);

    const HadamardMatrix h3 = hadamard_sylvester(3);
    CHECK(h3.order() == 8);
    CHECK(orthogonality_by_multiplication(h3));

    CHECK_THROWS_AS(hadamard_sylvester(13), Error);
}

TEST_CASE("paley construction") {
    const HadamardMatrix p3 = hadamard_paley(3);
    CHECK(p3.order() == 4);
    CHECK(orthogonality_by_multiplication(p3));

    const HadamardMatrix p7 = hadamard_paley(7);
    CHECK(p7.order() == 8);
    CHECK(orthogonality_by_multiplication(p7));

    const HadamardMatrix p11 = hadamard_paley(11);
    CHECK(p11.order() == 12);
    CHECK(orthogonality_by_multiplication(p11));

    CHECK_THROWS_AS(hadamard_paley(5), Error);  // 5 = 1 (mod 4)
    CHECK_THROWS_AS(hadamard_paley(9), Error);  // prime powers not supported
}

TEST_CASE("hadamard serialization round trip") {
    const HadamardMatrix h = hadamard_paley(3);
    const HadamardMatrix back = HadamardMatrix::parse(h.to_string());
    CHECK(back.order() == h.order());
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(back.at(i, j) == h.at(i, j));
    CHECK_THROWS_AS(HadamardMatrix::parse("+-\n+\n"), Error);
    CHECK_THROWS_AS(HadamardMatrix::parse("++\n++\n"), Error);  // not orthogonal
}

TEST_CASE("one-defect families from hadamard matrices") {
    const PrimeModulus f2(2);
    const SetFamily n5 = one_defect_from_hadamard(hadamard_paley(3), f2);
    CHECK(n5.ground().n == 5);
    CHECK(n5.size() == 6);  // 2n-4
    CHECK(is_d_defect_l_oddtown(n5, 1, f2).pass);
    for (const auto& s : n5.sets()) CHECK(s.test(4));  // every set contains n

    const PrimeModulus f3(3);
    const SetFamily n9 = one_defect_from_hadamard(hadamard_sylvester(3), f3);
    CHECK(n9.ground().n == 9);
    CHECK(n9.size() == 14);
    CHECK(is_d_defect_l_oddtown(n9, 1, f3).pass);
    for (const auto& s : n9.sets()) CHECK(s.count() % 3 != 0);

    CHECK_THROWS_AS(one_defect_from_hadamard(hadamard_paley(3), f3), Error);  // 3 does not divide 8
}

TEST_CASE("d-defect construction") {
    const PrimeModulus f2(2);
    const SetFamily f = d_defect_construction(GroundSet(5), 1, f2);
    CHECK(testutil::same_sets(f.sets(), {bits(5, {3}), bits(5, {4}), bits(5, {5}),
                                         bits(5, {1, 2, 3}), bits(5, {1, 2, 4}),
                                         bits(5, {1, 2, 5})}));
    CHECK(is_d_defect_l_oddtown(f, 1, f2).pass);

    const SetFamily f3 = d_defect_construction(GroundSet(10), 3, f2);
    CHECK(f3.size() == 24);  // (d+1)(n-s) with s = 4
    CHECK(is_d_defect_l_oddtown(f3, 3, f2).pass);

    const SetFamily f0 = d_defect_construction(GroundSet(6), 0, f2);
    CHECK(f0.size() == 6);
    CHECK(is_l_oddtown(f0, f2).pass);

    // custom core: the block family on [4] is a 2-eventown with 4 sets
    const SetFamily core = block_family(GroundSet(4), 2);
    const SetFamily custom = d_defect_construction(GroundSet(7), 3, f2, core);
    CHECK(custom.size() == 4 * 3);
    CHECK(is_d_defect_l_oddtown(custom, 3, f2).pass);

    // a non-eventown core is rejected
    const SetFamily bad = SetFamily::from_sets(GroundSet(2), {bits(2, {1})});
    CHECK_THROWS_AS(d_defect_construction(GroundSet(6), 0, f2, bad), Error);
}

TEST_CASE("advertised cardinalities across a parameter sweep") {
    for (std::size_t n = 1; n <= 13; ++n) {
        CHECK(block_family(GroundSet(n), 2).size() == (std::size_t(1) << (n / 2)));
        if (n % 2 == 1)
            for (std::size_t k = 2; k <= 4; ++k) {
                if (n < 2 * ceil_log2(k - 1)) continue;
                CHECK(augmented_block_family(GroundSet(n), k).size() ==
                      (std::size_t(1) << (n / 2)) + k - 1);
            }
    }
    CHECK(strong_not_higher(GroundSet(9), 2).size() == 16);   // 2^(4-0)
    CHECK(strong_not_higher(GroundSet(10), 2).size() == 32);  // 2^(5-0)
}
