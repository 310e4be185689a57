#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "apds/error.hpp"
#include "apds/permutation.hpp"
#include "apds/text_index.hpp"
#include "oracle.hpp"

using namespace apds;

namespace {

std::vector<uint64_t> chars(std::string_view s) { return std::vector<uint64_t>(s.begin(), s.end()); }

std::vector<uint64_t> naive_locate(const std::vector<uint64_t>& t, const std::vector<uint64_t>& p) {
    std::vector<uint64_t> out;
    for (uint64_t i = 0; i + p.size() <= t.size(); ++i)
        if (std::equal(p.begin(), p.end(), t.begin() + i)) out.push_back(i + 1);
    return out;
}

void check_block_store(const std::vector<uint64_t>& s, const BlockStore& q) {
    std::vector<uint64_t> alpha(s);
    std::sort(alpha.begin(), alpha.end());
    alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
    for (uint64_t i = 1; i <= s.size(); ++i) REQUIRE(q.access(i) == s[i - 1]);
    for (uint64_t a : alpha) {
        uint64_t r = 0;
        REQUIRE(q.rank(a, 0) == 0);
        for (uint64_t i = 1; i <= s.size(); ++i) {
            if (s[i - 1] == a) {
                ++r;
                REQUIRE(q.select(a, r) == i);
            }
            REQUIRE(q.rank(a, i) == r);
        }
        REQUIRE_THROWS_AS(q.select(a, r + 1), NotFound);
    }
    CHECK(q.counts_bitmap().ones() == s.size());
    CHECK(q.counts_bitmap().zeros() == q.pair_count());
    double limit = 1;
    for (uint64_t k = 0; k < q.block_length(); ++k) limit *= double(alpha.size());
    CHECK(double(q.distinct_blocks()) <= limit + 1);  // +1: a short last block
}

}  // namespace

TEST_CASE("block store examples") {
    const auto s = chars("abracadabra");
    const BlockStore q(s, 2);
    CHECK(q.block_count() == 6);
    CHECK(q.access(7) == 'd');
    CHECK(q.access(11) == 'a');
    CHECK(q.rank('a', 7) == 3);
    CHECK(q.rank('a', 0) == 0);
    CHECK(q.rank('c', 11) == 1);
    CHECK(q.rank('z', 11) == 0);
    CHECK(q.select('a', 4) == 8);
    CHECK(q.select('c', 1) == 5);
    CHECK_THROWS_AS(q.select('c', 2), NotFound);
    CHECK_THROWS_AS(q.select('z', 1), NotFound);
    CHECK_THROWS_AS(q.access(0), OutOfRange);
    CHECK_THROWS_AS(q.access(12), OutOfRange);
    CHECK_THROWS_AS(q.rank('a', 12), OutOfRange);
    // P: per (symbol, block) pair, count as 1^x 0; 'a' row first
    CHECK(q.counts_bitmap().ones() == 11);

    const std::vector<uint64_t> one{42};
    const BlockStore o(one);
    CHECK(o.access(1) == 42);
    CHECK(o.rank(42, 1) == 1);
    CHECK(o.select(42, 1) == 1);
    CHECK_THROWS_AS(BlockStore(std::vector<uint64_t>{}), EmptyInput);

    CHECK(default_block_length(11, 5) == 1);
    CHECK(default_block_length(1 << 16, 4) == 4);
    CHECK(default_block_length(1 << 20, 256) == 1);
}

TEST_CASE("block store exhaustive against scan") {
    std::mt19937_64 rng(12);
    for (uint64_t n : {1u, 2u, 5u, 17u, 100u, 512u})
        for (uint64_t sigma : {1u, 2u, 4u, 16u, 64u})
            for (uint64_t b : {1u, 2u, 3u, 4u}) {
                const auto s = oracle::random_effective(rng, n, sigma);
                CAPTURE(n);
                CAPTURE(sigma);
                CAPTURE(b);
                check_block_store(s, BlockStore(s, b));
            }
    // skewed text and default block length
    const auto z = oracle::random_zipf(rng, 4000, 8, 1.5);
    check_block_store(z, BlockStore(z));
}

TEST_CASE("block store serialization") {
    std::mt19937_64 rng(2);
    const auto s = oracle::random_effective(rng, 300, 9);
    const BlockStore q(s, 3);
    Writer w;
    q.serialize(w);
    Reader r(w.data());
    const BlockStore back = BlockStore::load(r);
    CHECK(r.done());
    Writer w2;
    back.serialize(w2);
    CHECK(w2.data() == w.data());
    check_block_store(s, back);
}

TEST_CASE("suffix array against sorting") {
    std::mt19937_64 rng(6);
    for (uint64_t n : {0u, 1u, 2u, 9u, 100u, 1000u})
        for (uint64_t sigma : {1u, 2u, 5u, 30u}) {
            const auto s = oracle::random_effective(rng, n, sigma);
            const auto sa = suffix_array(s);
            std::vector<uint64_t> expect(n + 1);
            for (uint64_t i = 0; i <= n; ++i) expect[i] = i;
            std::sort(expect.begin(), expect.end(), [&](uint64_t a, uint64_t b) {
                // the terminator is the smallest symbol
                return std::lexicographical_compare(s.begin() + a, s.end(), s.begin() + b, s.end());
            });
            CHECK(sa == expect);
        }
}

TEST_CASE("fm index examples") {
    const FmIndex f("abracadabra");
    CHECK(f.bwt_text() == "ard$rcaaaabb");
    CHECK(f.count("abra") == 2);
    CHECK(f.count("zzz") == 0);
    CHECK_THROWS_AS(f.count(""), ParameterError);
    CHECK(f.locate("abra") == std::vector<uint64_t>{1, 8});
    CHECK(f.locate("d") == std::vector<uint64_t>{7});
    CHECK(f.locate("abc").empty());
    CHECK(f.extract_text(4, 6) == "aca");
    CHECK(f.extract_text(1, 1) == "a");
    CHECK(f.extract_text(1, 11) == "abracadabra");
    CHECK_THROWS_AS(f.extract(0, 2), OutOfRange);
    CHECK_THROWS_AS(f.extract(3, 12), OutOfRange);
    CHECK_THROWS_AS(f.extract(5, 4), OutOfRange);

    CHECK(FmIndex("a").bwt_text() == "a$");

    for (uint64_t k : {0u, 1u, 2u, 3u}) {
        FmOptions o;
        o.k_context = k;
        o.sample_rate = 3;
        const FmIndex g("abracadabra", o);
        CHECK(g.bwt_text() == "ard$rcaaaabb");
        CHECK(g.count("abra") == 2);
        CHECK(g.locate("a") == std::vector<uint64_t>{1, 4, 6, 8, 11});
        CHECK(g.extract_text(2, 10) == "bracadabr");
        if (k == 0) CHECK(g.partitions() == 1);
    }
}

TEST_CASE("fm index against naive search") {
    std::mt19937_64 rng(44);
    for (int t = 0; t < 12; ++t) {
        const uint64_t n = 1 + rng() % 1500;
        const uint64_t sigma = 1 + rng() % 20;
        const auto text = oracle::random_effective(rng, n, sigma);
        FmOptions o;
        o.k_context = rng() % 3;
        o.sample_rate = rng() % 2 ? 0 : 1 + rng() % 9;
        const FmIndex f(text, o);
        CAPTURE(n);
        CAPTURE(sigma);
        // LF is a permutation of the rows
        std::vector<uint64_t> lf(n + 1);
        for (uint64_t r = 1; r <= n + 1; ++r) lf[r - 1] = f.lf(r);
        CHECK_NOTHROW(validate_permutation(lf));
        for (int q = 0; q < 200; ++q) {
            const uint64_t len = 1 + rng() % 8;
            std::vector<uint64_t> p;
            if (rng() % 4 == 0 || len > n) {
                for (uint64_t k = 0; k < len; ++k) p.push_back(1 + rng() % (sigma + 1));
            } else {
                const uint64_t at = rng() % (n - len + 1);
                p.assign(text.begin() + at, text.begin() + at + len);
            }
            const auto expect = naive_locate(text, p);
            REQUIRE(f.count(p) == expect.size());
            REQUIRE(f.locate(p) == expect);
            const uint64_t l = 1 + rng() % n, r = l + rng() % (n - l + 1);
            REQUIRE(f.extract(l, r) == std::vector<uint64_t>(text.begin() + l - 1, text.begin() + r));
        }
        CHECK(f.extract(1, n) == text);
    }
}

TEST_CASE("fm index serialization") {
    std::mt19937_64 rng(9);
    const auto text = oracle::random_zipf(rng, 2000, 30, 1.0);
    for (uint64_t k : {0u, 2u}) {
        FmOptions o;
        o.k_context = k;
        const FmIndex f(text, o);
        Writer w;
        f.serialize(w);
        Reader r(w.data());
        const FmIndex back = FmIndex::load(r);
        CHECK(r.done());
        Writer w2;
        back.serialize(w2);
        CHECK(w2.data() == w.data());
        CHECK(back.bwt() == f.bwt());
        for (uint64_t i = 1; i + 3 <= text.size(); i += 97) {
            const std::vector<uint64_t> p(text.begin() + i - 1, text.begin() + i + 2);
            CHECK(back.locate(p) == f.locate(p));
        }
    }
}
