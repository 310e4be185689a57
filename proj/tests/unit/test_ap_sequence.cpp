#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "apds/ap_sequence.hpp"
#include "apds/error.hpp"
#include "apds/stats.hpp"
#include "oracle.hpp"

using namespace apds;

namespace {

// a..r -> 1..5
std::vector<uint64_t> abra() {
    const std::string text = "abracadabra";
    const std::string alpha = "abcdr";
    std::vector<uint64_t> s;
    for (char c : text) s.push_back(alpha.find(c) + 1);
    return s;
}

}  // namespace

TEST_CASE("class formula") {
    CHECK(symbol_class(11, 5) == 4);
    CHECK(symbol_class(11, 2) == 9);
    CHECK(symbol_class(11, 1) == 12);
    CHECK(symbol_class(1, 1) == 0);
    CHECK(symbol_class(8, 8) == 0);
    // lg(16/4) * lg 16 = 8 exactly
    CHECK(symbol_class(16, 4) == 8);
    CHECK(symbol_class(16, 1) == 16);
}

TEST_CASE("abracadabra partition") {
    const auto s = abra();
    const Partition p = Partition::of(s);
    CHECK(p.t == std::vector<uint64_t>{4, 9, 9, 4, 12, 4, 12, 4, 9, 9, 4});
    CHECK(p.m == std::vector<uint64_t>{4, 9, 12, 12, 9});
    REQUIRE(p.classes.size() == 3);
    CHECK(p.classes[0].seq == std::vector<uint64_t>{1, 1, 1, 1, 1});
    CHECK(p.classes[1].seq == std::vector<uint64_t>{1, 2, 1, 2});
    CHECK(p.classes[2].seq == std::vector<uint64_t>{1, 2});
    CHECK(p.partition_bits() == doctest::Approx(22.444107).epsilon(1e-6));

    const ApSequence q(s);
    for (uint64_t i = 1; i <= 11; ++i) CHECK(q.class_at(i) == p.t[i - 1]);
    CHECK(q.class_sigma(9) == 2);
    CHECK(q.class_length(4) == 5);
    CHECK(q.class_count() == 3);
}

TEST_CASE("abracadabra queries") {
    const ApSequence q(abra());
    CHECK(q.access(5) == 3);   // c
    CHECK(q.access(11) == 1);  // a
    CHECK(q.rank(2, 9) == 2);  // b
    CHECK(q.rank(2, 0) == 0);
    CHECK(q.rank(26, 11) == 0);
    CHECK(q.select(5, 2) == 10);  // r
    CHECK(q.select(3, 1) == 5);
    CHECK_THROWS_AS(q.select(3, 2), NotFound);
    CHECK_THROWS_AS(q.select(26, 1), NotFound);
    CHECK_THROWS_AS(q.access(12), OutOfRange);
    CHECK(q.rank(1, 8) == 4);
}

TEST_CASE("abracadabra space report") {
    const SpaceReport r = ApSequence(abra()).space_report();
    CHECK(r.h0_bits == doctest::Approx(22.444107).epsilon(1e-6));
    CHECK(r.partition_bits == doctest::Approx(22.444107).epsilon(1e-6));
    CHECK(r.bound_bits == doctest::Approx(25.623820).epsilon(1e-6));
    CHECK(r.to_json().find("\"h0_bits\"") != std::string::npos);
}

TEST_CASE("degenerate sequences") {
    const std::vector<uint64_t> one{1};
    const ApSequence q(one);
    CHECK(q.access(1) == 1);
    CHECK(q.class_at(1) == 0);
    CHECK(q.class_sigma(0) == 1);

    const std::vector<uint64_t> constant(50, 1);
    const SpaceReport r = ApSequence(constant).space_report();
    CHECK(r.h0_bits == 0.0);
    CHECK(r.partition_bits == 0.0);

    std::vector<uint64_t> uniform(64);
    for (uint64_t i = 0; i < 64; ++i) uniform[i] = i + 1;
    CHECK(ApSequence(uniform).space_report().h0_bits == doctest::Approx(64 * 6.0).epsilon(1e-9));

    CHECK_THROWS_AS(ApSequence(std::vector<uint64_t>{}), EmptyInput);
    CHECK_THROWS_AS(ApSequence(std::vector<uint64_t>{1, 0, 2}), InvalidSymbol);
    CHECK_THROWS_AS(ApSequence(std::vector<uint64_t>{1, 3}), InvalidSymbol);
}

TEST_CASE("general alphabet") {
    const std::vector<uint64_t> s{200, 10, 3000, 10, 200, 10};
    ApOptions opt;
    opt.general_alphabet = true;
    const ApSequence q(s, opt);
    CHECK(q.has_dictionary());
    CHECK(q.alphabet_size() == 3);
    for (uint64_t i = 1; i <= s.size(); ++i) CHECK(q.access(i) == s[i - 1]);
    CHECK(q.rank(10, 6) == 3);
    CHECK(q.rank(11, 6) == 0);
    CHECK(q.rank(1 << 20, 6) == 0);
    CHECK(q.select(3000, 1) == 3);
    CHECK_THROWS_AS(q.select(11, 1), NotFound);
}

TEST_CASE("oracle equivalence exhaustive small") {
    std::mt19937_64 rng(33);
    for (auto v : {Variant::kFastSelect, Variant::kFastAccess}) {
        for (uint64_t n : {2u, 17u, 128u, 512u}) {
            for (uint64_t sigma : {1u, 4u, 30u, 200u}) {
                for (double z : {0.0, 1.0}) {
                    auto s = z == 0.0 ? oracle::random_effective(rng, n, std::min(sigma, n)) : oracle::random_zipf(rng, n, sigma, z);
                    ApOptions opt;
                    opt.variant = v;
                    opt.small_threshold = 3;  // push most classes to the large structure
                    const ApSequence q(s, opt);
                    const uint64_t sig = q.alphabet_size();
                    for (uint64_t i = 1; i <= n; ++i) REQUIRE(q.access(i) == s[i - 1]);
                    for (uint64_t a = 1; a <= sig; ++a) {
                        uint64_t r = 0;
                        for (uint64_t i = 0; i <= n; ++i) {
                            if (i > 0 && s[i - 1] == a) {
                                ++r;
                                REQUIRE(q.select(a, r) == i);
                            }
                            REQUIRE(q.rank(a, i) == r);
                        }
                        CHECK_THROWS_AS(q.select(a, r + 1), NotFound);
                    }
                }
            }
        }
    }
}

TEST_CASE("duality and partition identity") {
    std::mt19937_64 rng(44);
    for (int rep = 0; rep < 40; ++rep) {
        const uint64_t n = 2 + rng() % 3000;
        const uint64_t sigma = 1 + rng() % 300;
        auto s = oracle::random_zipf(rng, n, sigma, 0.5 + (rng() % 16) / 10.0);
        const ApSequence q(s);
        const SpaceReport r = q.space_report();
        CHECK(r.partition_bits < r.bound_bits + 1e-9);
        CHECK(r.h0_bits >= h0_convexity_floor(n, q.alphabet_size()) - 1e-6);
        for (int k = 0; k < 200; ++k) {
            const uint64_t i = 1 + rng() % n;
            const uint64_t a = s[i - 1];
            const uint64_t j = q.rank(a, i);
            CHECK(q.select(a, j) == i);
            const uint64_t b = 1 + rng() % q.alphabet_size();
            const uint64_t rb = q.rank(b, i);
            if (rb > 0) CHECK(q.select(b, rb) <= i);
        }
    }
}

TEST_CASE("serialization") {
    std::mt19937_64 rng(5);
    auto s = oracle::random_zipf(rng, 5000, 400, 0.8);
    ApOptions opt;
    opt.small_threshold = 4;
    const ApSequence q(s, opt);
    Writer w;
    q.serialize(w);
    Reader r(w.data());
    const ApSequence u = ApSequence::load(r);
    CHECK(r.done());
    for (uint64_t i = 1; i <= s.size(); ++i) REQUIRE(u.access(i) == s[i - 1]);
    Writer w2;
    u.serialize(w2);
    CHECK(w2.data() == w.data());
}
