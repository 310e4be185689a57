#include <doctest.h>

#include <random>

#include "apds/error.hpp"
#include "apds/large_sequence.hpp"
#include "oracle.hpp"

using namespace apds;

TEST_CASE("large examples") {
    for (auto v : {Variant::kFastSelect, Variant::kFastAccess}) {
        const std::vector<uint64_t> s9{1, 2, 1, 2};
        const LargeSequence q(s9, 2, v);
        CHECK(q.access(3) == 1);
        CHECK(q.rank(2, 3) == 1);
        CHECK(q.rank(2, 0) == 0);
        CHECK(q.select(2, 2) == 4);
        CHECK_THROWS_AS(q.rank(3, 1), OutOfRange);
        CHECK_THROWS_AS(q.select(1, 3), NotFound);

        const std::vector<uint64_t> s12{1, 2};
        CHECK(LargeSequence(s12, 2, v).rank(2, 2) == 1);

        const std::vector<uint64_t> single{40};
        const LargeSequence one(single, 40, v);
        CHECK(one.access(1) == 40);
        CHECK(one.select(40, 1) == 1);
        CHECK_THROWS_AS(one.select(3, 1), NotFound);
    }
}

TEST_CASE("large exhaustive against scan") {
    std::mt19937_64 rng(17);
    for (auto v : {Variant::kFastSelect, Variant::kFastAccess}) {
        for (uint64_t n : {1u, 7u, 64u, 300u, 1024u}) {
            for (uint64_t sigma : {1u, 5u, 40u, 129u, 1024u}) {
                if (sigma > n) continue;
                auto s = oracle::random_effective(rng, n, sigma);
                const uint64_t sig = *std::max_element(s.begin(), s.end());
                const LargeSequence q(s, sig, v);
                for (uint64_t i = 1; i <= n; ++i) REQUIRE(q.access(i) == s[i - 1]);
                const uint64_t stride = n > 300 ? 13 : 1;
                for (uint64_t a = 1; a <= sig; ++a) {
                    for (uint64_t i = 0; i <= n; i += (a % stride == 0 ? 1 : stride)) REQUIRE(q.rank(a, i) == oracle::rank(s, a, i));
                    const uint64_t occ = oracle::rank(s, a, n);
                    REQUIRE(q.count(a) == occ);
                    for (uint64_t j = 1; j <= occ; ++j) REQUIRE(q.select(a, j) == *oracle::select(s, a, j));
                }
                for (uint64_t c = 0; c < q.chunk_count(); ++c) {
                    const uint64_t len = c + 1 < q.chunk_count() ? sig : n - c * sig;
                    for (uint64_t x = 0; x < len; ++x) REQUIRE(q.stored_inverse(c, q.stored_forward(c, x)) == x);
                }
            }
        }
    }
}

TEST_CASE("large serialization") {
    std::mt19937_64 rng(8);
    const auto s = oracle::random_effective(rng, 2000, 300);
    const uint64_t sig = *std::max_element(s.begin(), s.end());
    const LargeSequence q(s, sig, Variant::kFastAccess);
    Writer w;
    q.serialize(w);
    Reader r(w.data());
    const LargeSequence u = LargeSequence::load(r);
    CHECK(r.done());
    for (uint64_t i = 1; i <= s.size(); ++i) REQUIRE(u.access(i) == s[i - 1]);
    Writer w2;
    u.serialize(w2);
    CHECK(w2.data() == w.data());
}

// per-chunk overhead counted as the sigma terminator bits each chunk adds to
// the histogram
TEST_CASE("large payload") {
    std::mt19937_64 rng(12);
    const uint64_t n = 1 << 16;
    for (uint64_t sigma : {64u, 1024u}) {
        auto s = oracle::random_effective(rng, n, sigma);
        const LargeSequence q(s, sigma);
        const double lgs = std::ceil(std::log2(double(sigma)));
        const double bound = n * lgs + 0.5 * n * lgs / std::log2(lgs) + 4.0 * (n + double(sigma) * q.chunk_count());
        CAPTURE(sigma);
        CAPTURE(q.size_in_bits());
        CHECK(double(q.size_in_bits()) <= bound);
    }
}
