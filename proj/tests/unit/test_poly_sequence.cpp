#include <doctest.h>

#include <random>

#include "apds/error.hpp"
#include "apds/poly_sequence.hpp"
#include "oracle.hpp"

using namespace apds;

TEST_CASE("poly examples") {
    const std::vector<uint64_t> t{4, 9, 9, 4, 12, 4, 12, 4, 9, 9, 4};
    const PolySequence q(t);
    CHECK(q.access(5) == 12);
    CHECK(q.rank(9, 9) == 3);
    CHECK(q.rank(9, 0) == 0);
    CHECK(q.select(9, 4) == 10);
    CHECK_THROWS_AS(q.select(12, 3), NotFound);
    CHECK_THROWS_AS(q.access(12), OutOfRange);
    CHECK_THROWS_AS(q.access(0), OutOfRange);

    const std::vector<uint64_t> one{7};
    CHECK(PolySequence(one).access(1) == 7);
    const std::vector<uint64_t> five{5};
    CHECK(PolySequence(five).select(5, 1) == 1);

    const std::vector<uint64_t> s{1, 2, 1};
    const PolySequence p(s);
    CHECK(p.access(3) == 1);
    CHECK(p.rank(3, 3) == 0);
}

TEST_CASE("poly exhaustive against scan") {
    std::mt19937_64 rng(21);
    for (uint64_t n : {1u, 2u, 5u, 64u, 200u, 512u}) {
        for (uint64_t sigma : {1u, 2u, 3u, 9u, 20u}) {
            const auto s = oracle::random_zipf(rng, n, sigma, 1.0);
            const PolySequence q(s);
            uint64_t max_a = *std::max_element(s.begin(), s.end());
            for (uint64_t i = 1; i <= n; ++i) REQUIRE(q.access(i) == s[i - 1]);
            for (uint64_t a = 0; a <= max_a + 1; ++a) {
                for (uint64_t i = 0; i <= n; ++i) REQUIRE(q.rank(a, i) == oracle::rank(s, a, i));
                const uint64_t occ = oracle::rank(s, a, n);
                for (uint64_t j = 1; j <= occ; ++j) REQUIRE(q.select(a, j) == *oracle::select(s, a, j));
                CHECK_THROWS_AS(q.select(a, occ + 1), NotFound);
            }
        }
    }
}

TEST_CASE("poly payload near nH0") {
    std::mt19937_64 rng(4);
    const uint64_t n = 1 << 16;
    for (uint64_t sigma : {2u, 8u, 16u}) {
        const auto s = oracle::random_zipf(rng, n, sigma, 1.0);
        std::vector<uint64_t> counts(sigma + 1, 0);
        for (auto a : s) ++counts[a];
        double nh0 = 0;
        for (auto c : counts)
            if (c) nh0 += c * std::log2(double(n) / c);
        const PolySequence q(s);
        const double bound = nh0 + 0.5 * n + 4.0 * sigma * std::log2(double(n));
        CAPTURE(sigma);
        CHECK(double(q.size_in_bits()) <= bound);
    }
}

TEST_CASE("poly serialization") {
    std::mt19937_64 rng(2);
    const auto s = oracle::random_zipf(rng, 3000, 12, 1.3);
    const PolySequence q(s);
    Writer w;
    q.serialize(w);
    Reader r(w.data());
    const PolySequence u = PolySequence::load(r);
    CHECK(r.done());
    for (uint64_t i = 1; i <= s.size(); ++i) REQUIRE(u.access(i) == s[i - 1]);
    Writer w2;
    u.serialize(w2);
    CHECK(w2.data() == w.data());
}
