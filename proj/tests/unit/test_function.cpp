#include <doctest.h>

#include <algorithm>
#include <random>

#include "apds/error.hpp"
#include "apds/function.hpp"
#include "apds/stats.hpp"
#include "oracle.hpp"

using namespace apds;

namespace {

const FunctionMode kModes[] = {FunctionMode::kDirect, FunctionMode::kRunsInterleaved, FunctionMode::kRunsContiguous};

void check_against_scan(const std::vector<uint64_t>& f, const CompressedFunction& q) {
    const uint64_t n = f.size();
    for (uint64_t i = 1; i <= n; ++i) REQUIRE(q.eval(i) == f[i - 1]);
    std::vector<uint64_t> image(f);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    uint64_t total = 0;
    std::vector<bool> covered(n + 1, false);
    for (uint64_t a : image) {
        const auto pre = q.preimage(a, true);
        std::vector<uint64_t> expect;
        for (uint64_t i = 1; i <= n; ++i)
            if (f[i - 1] == a) expect.push_back(i);
        REQUIRE(pre == expect);
        REQUIRE(q.preimage_size(a) == expect.size());
        for (uint64_t i : pre) {
            REQUIRE(!covered[i]);
            covered[i] = true;
        }
        total += pre.size();
        CHECK_THROWS_AS(q.preimage_select(a, expect.size() + 1), NotFound);
    }
    CHECK(total == n);
}

}  // namespace

TEST_CASE("function build examples") {
    const std::vector<uint64_t> f{1, 1, 2, 3, 2, 1};
    FunctionOptions o;
    o.mode = FunctionMode::kRunsContiguous;
    const CompressedFunction q(f, o);
    CHECK(q.delimiters().to_string() == "1000100101");
    const std::vector<uint64_t> pi{1, 2, 4, 6, 5, 3};
    for (uint64_t i = 1; i <= 6; ++i) CHECK(q.permutation().apply(i) == pi[i - 1]);

    o.mode = FunctionMode::kRunsInterleaved;
    const std::vector<uint64_t> c{1, 1, 1};
    const CompressedFunction k(c, o);
    CHECK(k.delimiters().to_string() == "10001");
    for (uint64_t i = 1; i <= 3; ++i) CHECK(k.permutation().apply(i) == i);

    const std::vector<uint64_t> id{1, 2, 3};
    CHECK(CompressedFunction(id, o).delimiters().to_string() == "1010101");
}

TEST_CASE("function eval and preimage examples") {
    const std::vector<uint64_t> f{1, 1, 2, 3, 2, 1};
    for (FunctionMode m : kModes) {
        FunctionOptions o;
        o.mode = m;
        const CompressedFunction q(f, o);
        CHECK(q.eval(5) == 2);
        CHECK(q.preimage_size(2) == 2);
        CHECK(q.preimage_size(3) == 1);
        CHECK(q.preimage(2, true) == std::vector<uint64_t>{3, 5});
        CHECK(q.preimage_select(3, 1) == 4);
        CHECK_THROWS_AS(q.preimage_select(3, 2), NotFound);
        CHECK_THROWS_AS(q.eval(0), OutOfRange);
        CHECK_THROWS_AS(q.eval(7), OutOfRange);
        CHECK_THROWS_AS(q.preimage_size(4), OutOfRange);
    }
    FunctionOptions o;
    o.mode = FunctionMode::kRunsContiguous;
    const CompressedFunction q(f, o);
    // area 4..5 maps back to {3, 5} through pi^-1
    CHECK(q.preimage_select(2, 1) == 3);
    CHECK(q.preimage_select(2, 2) == 5);

    const std::vector<uint64_t> c{1, 1, 1, 1};
    for (FunctionMode m : kModes) {
        o.mode = m;
        const CompressedFunction k(c, o);
        for (uint64_t i = 1; i <= 4; ++i) CHECK(k.eval(i) == 1);
        CHECK(k.preimage_size(1) == 4);
    }
}

TEST_CASE("function input errors and remap") {
    const std::vector<uint64_t> gap{1, 3, 3};
    CHECK_THROWS_AS(CompressedFunction{gap}, InvalidFunction);
    CHECK_THROWS_AS(CompressedFunction(std::vector<uint64_t>{}), EmptyInput);
    CHECK_THROWS_AS(CompressedFunction(std::vector<uint64_t>{0, 1}), InvalidFunction);
    for (FunctionMode m : kModes) {
        FunctionOptions o;
        o.mode = m;
        o.remap = true;
        const std::vector<uint64_t> f{100, 7, 7, 100, 2000};
        const CompressedFunction q(f, o);
        CHECK(q.has_remap());
        CHECK(q.sigma() == 3);
        check_against_scan(f, q);
        CHECK(q.preimage_size(8) == 0);
        CHECK_THROWS_AS(q.preimage_select(8, 1), NotFound);
        CHECK_THROWS_AS(q.preimage_size(2001), OutOfRange);
    }
}

TEST_CASE("function exhaustive against scan") {
    std::mt19937_64 rng(91);
    for (uint64_t n : {1u, 2u, 7u, 64u, 300u, 1024u}) {
        for (uint64_t sigma : {1u, 3u, 16u, 200u}) {
            if (sigma > n) continue;
            const auto f = oracle::random_effective(rng, n, sigma);
            for (FunctionMode m : kModes) {
                FunctionOptions o;
                o.mode = m;
                const CompressedFunction q(f, o);
                CAPTURE(n);
                CAPTURE(sigma);
                check_against_scan(f, q);
            }
        }
    }
}

TEST_CASE("function runs entropy") {
    std::mt19937_64 rng(17);
    for (uint64_t n : {50u, 500u, 2000u}) {
        // values built from a few monotone runs, plus random functions
        std::vector<std::vector<uint64_t>> inputs;
        inputs.push_back(oracle::random_effective(rng, n, 10));
        std::vector<uint64_t> f(n);
        for (uint64_t i = 0; i < n; ++i) f[i] = i % 3 == 0 ? 1 + i / 3 : (i % 3 == 1 ? 1 + (n - i) / 3 : 1 + i / 7);
        std::vector<uint64_t> image(f);
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        for (auto& x : f) x = std::lower_bound(image.begin(), image.end(), x) - image.begin() + 1;
        inputs.push_back(f);
        for (const auto& in : inputs) {
            FunctionOptions o;
            o.mode = FunctionMode::kRunsInterleaved;
            const CompressedFunction q(in, o);
            const ValueRuns vr = value_runs(in, false);
            // pi inherits the runs of f
            CHECK(q.runs_entropy() == doctest::Approx(vr.entropy()).epsilon(1e-12));
            CHECK(q.rho() == vr.length.size());
            CHECK(q.runs_entropy() <= h0(in) + 1e-9);
            check_against_scan(in, q);

            o.mode = FunctionMode::kRunsContiguous;
            const CompressedFunction c(in, o);
            CHECK(c.runs_entropy() == doctest::Approx(value_runs(in, true).entropy()).epsilon(1e-12));
            check_against_scan(in, c);
        }
    }
    // the structured input needs only 3 interleaved runs
    std::vector<uint64_t> three;
    for (uint64_t i = 0; i < 300; ++i) three.push_back(i % 3 == 0 ? 1 + i : (i % 3 == 1 ? 400 - i : 1000 + i));
    std::vector<uint64_t> image(three);
    std::sort(image.begin(), image.end());
    for (auto& x : three) x = std::lower_bound(image.begin(), image.end(), x) - image.begin() + 1;
    CHECK(value_runs(three, false).length.size() == 3);
}

TEST_CASE("function value runs examples") {
    const std::vector<uint64_t> f{1, 1, 2, 3, 2, 1};
    const ValueRuns c = value_runs(f, true);
    CHECK(c.label == std::vector<uint64_t>{1, 1, 1, 1, 2, 2});
    CHECK(c.decreasing == std::vector<bool>{false, true});
    const std::vector<uint64_t> flat{2, 2, 1, 1, 3};
    const ValueRuns d = value_runs(flat, true);
    CHECK(d.label == std::vector<uint64_t>{1, 1, 1, 1, 2});
    CHECK(d.decreasing == std::vector<bool>{true, false});
}

TEST_CASE("function serialization round trip") {
    std::mt19937_64 rng(5);
    const auto f = oracle::random_effective(rng, 500, 40);
    for (FunctionMode m : kModes) {
        for (bool remap : {false, true}) {
            FunctionOptions o;
            o.mode = m;
            o.remap = remap;
            const CompressedFunction q(f, o);
            Writer w;
            q.serialize(w);
            Reader r(w.data());
            const CompressedFunction back = CompressedFunction::load(r);
            CHECK(r.done());
            CHECK(back.mode() == m);
            CHECK(back.has_remap() == remap);
            check_against_scan(f, back);
        }
    }
}
