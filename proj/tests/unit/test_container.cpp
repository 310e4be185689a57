#include <doctest.h>

#include "apds/container.hpp"
#include "apds/error.hpp"
#include "apds/io.hpp"
#include "apds/stats.hpp"

using namespace apds;

TEST_CASE("container layout") {
    Container c;
    c.kind = StructureKind::kPerm;
    c.sections.push_back({SectionKind::kMeta, "ab"});
    c.sections.push_back({SectionKind::kPerm, "xyz"});
    const std::string bytes = c.encode();
    // magic, version, kind, count, 2 table entries, payloads
    CHECK(bytes.size() == 4 + 4 + 1 + 8 + 2 * 9 + 5);
    CHECK(bytes.substr(0, 4) == "APDS");
    CHECK(bytes[4] == 1);
    CHECK(bytes[8] == 2);
    CHECK(bytes.substr(bytes.size() - 5) == "abxyz");
    const Container back = Container::decode(bytes);
    CHECK(back.kind == StructureKind::kPerm);
    CHECK(back.section(SectionKind::kPerm).payload == "xyz");
    CHECK_THROWS_AS(back.section(SectionKind::kFunc), FormatError);

    std::string bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_AS(Container::decode(bad), FormatError);
    bad = bytes;
    bad[4] = 2;
    CHECK_THROWS_AS(Container::decode(bad), FormatError);
    bad = bytes;
    bad[8] = 9;
    CHECK_THROWS_AS(Container::decode(bad), FormatError);
    CHECK_THROWS_AS(Container::decode(bytes.substr(0, bytes.size() - 1)), FormatError);
    CHECK_THROWS_AS(Container::decode(bytes + "!"), FormatError);
}

TEST_CASE("stored structures round trip") {
    const std::vector<uint64_t> s{98, 115, 99, 98, 115};
    for (int kind = 0; kind < 4; ++kind) {
        Stored st;
        st.format = InputFormat::kBytes;
        if (kind == 0) st.value = ApSequence(s, ApOptions{true});
        if (kind == 1) st.value = RunPermutation(std::vector<uint64_t>{3, 1, 4, 2}, PermOptions{});
        if (kind == 2) st.value = CompressedFunction(std::vector<uint64_t>{1, 2, 2, 1}, FunctionOptions{});
        if (kind == 3) st.value = FmIndex(std::string("banana"));
        const std::string bytes = to_container(st).encode();
        const Stored back = from_container(Container::decode(bytes));
        CHECK(back.kind() == st.kind());
        CHECK(back.format == InputFormat::kBytes);
        CHECK(to_container(back).encode() == bytes);
    }
}

TEST_CASE("input parsing") {
    CHECK(parse_ints(" 3 1\n4,2 ") == std::vector<uint64_t>{3, 1, 4, 2});
    CHECK_THROWS_AS(parse_ints(""), EmptyInput);
    CHECK_THROWS_AS(parse_ints("1 x"), InvalidInput);
    CHECK_THROWS_AS(parse_ints("1 0"), InvalidInput);
    CHECK_THROWS_AS(parse_ints("-1"), InvalidInput);
    CHECK(parse_pattern("ab", InputFormat::kBytes) == std::vector<uint64_t>{'a', 'b'});
    CHECK(parse_pattern("\\97\\0b", InputFormat::kBytes) == std::vector<uint64_t>{97, 0, 'b'});
    CHECK(parse_pattern("\\\\", InputFormat::kBytes) == std::vector<uint64_t>{'\\'});
    CHECK_THROWS_AS(parse_pattern("\\300", InputFormat::kBytes), InvalidInput);
    CHECK_THROWS_AS(parse_pattern("\\x", InputFormat::kBytes), InvalidInput);
    CHECK(parse_pattern("7 8", InputFormat::kInts) == std::vector<uint64_t>{7, 8});
    CHECK(parse_symbol("c", InputFormat::kBytes) == 'c');
    CHECK_THROWS_AS(parse_symbol("cd", InputFormat::kBytes), InvalidInput);
    CHECK(parse_input_format("ints") == InputFormat::kInts);
    CHECK_THROWS_AS(parse_input_format("words"), ParameterError);
    CHECK_THROWS_AS(read_file("/nonexistent/file"), InvalidInput);
}

TEST_CASE("entropy report fields") {
    const std::string t = "abracadabra";
    const std::vector<uint64_t> s(t.begin(), t.end());
    const EntropyReport r = entropy_report(s, 1);
    CHECK(r.n == 11);
    CHECK(r.sigma == 5);
    CHECK(r.h0 * 11 == doctest::Approx(22.4441).epsilon(1e-4));
    CHECK(r.h_sets == doctest::Approx(r.h0).epsilon(1e-12));
    // maximal monotone segments abr|ac|ad|abr|a
    CHECK(r.rho == 5);
    CHECK(r.h_runs == doctest::Approx(2.2312702546).epsilon(1e-9));
    CHECK(!r.sections.empty());
    CHECK(r.to_json().find("\"h_runs\"") != std::string::npos);
}
