#include <doctest.h>

#include <string>

#include "apds/error.hpp"
#include "apds/stats.hpp"

using namespace apds;

namespace {

std::vector<uint64_t> bytes(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("h0") {
    CHECK(h0(bytes("abracadabra")) == doctest::Approx(2.0403733937).epsilon(1e-10));
    CHECK(h0(bytes("aaaa")) == 0.0);
    CHECK(h0(bytes("abcdabcd")) == doctest::Approx(2.0));
    CHECK_THROWS_AS(h0(std::vector<uint64_t>{}), EmptyInput);
}

TEST_CASE("hk") {
    const auto abra = bytes("abracadabra");
    CHECK(hk(abra, 0) == h0(abra));
    CHECK(hk(bytes("ababab"), 1) == 0.0);
    CHECK(hk(abra, 1) == doctest::Approx(0.5454545455).epsilon(1e-9));
    CHECK(hk(abra, 2) == 0.0);
    CHECK_THROWS_AS(hk(abra, 11), ParameterError);
}

TEST_CASE("run and set entropies") {
    CHECK(h_runs(std::vector<uint64_t>{7}) == 0.0);
    CHECK(h_runs(std::vector<uint64_t>{3, 3}) == doctest::Approx(1.0));
    CHECK(h_sets(std::vector<uint64_t>{1, 1, 1, 1, 1}) == doctest::Approx(2.3219280949));
    CHECK(h_sets(std::vector<uint64_t>{5}) == 0.0);
    CHECK(h_sets(std::vector<uint64_t>{2, 2, 1}) == doctest::Approx(1.5219280949));
}

TEST_CASE("convexity floor") {
    CHECK(h0_convexity_floor(11, 5) <= 22.4441);
    CHECK(h0_convexity_floor(8, 1) == 0.0);
    CHECK(h0_convexity_floor(8, 8) == doctest::Approx(7 * 3.0 + 1 * 3.0));
}
