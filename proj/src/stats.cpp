#include "apds/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "apds/ap_sequence.hpp"
#include "apds/error.hpp"
#include "apds/function.hpp"

namespace apds {

double entropy_of_counts(std::span<const uint64_t> counts) {
    const uint64_t n = std::accumulate(counts.begin(), counts.end(), uint64_t{0});
    if (n == 0) return 0.0;
    const double dn = static_cast<double>(n);
    double h = 0;
    for (uint64_t c : counts)
        if (c > 0 && c < n) h += static_cast<double>(c) * std::log2(dn / static_cast<double>(c));
    return h / dn;
}

double h0(std::span<const uint64_t> seq) {
    if (seq.empty()) throw EmptyInput();
    std::unordered_map<uint64_t, uint64_t> freq;
    for (uint64_t a : seq) ++freq[a];
    std::vector<uint64_t> counts;
    counts.reserve(freq.size());
    for (const auto& [a, c] : freq) counts.push_back(c);
    std::sort(counts.begin(), counts.end());  // fixed summation order
    return entropy_of_counts(counts);
}

double hk(std::span<const uint64_t> seq, uint64_t k) {
    if (seq.empty()) throw EmptyInput();
    if (k >= seq.size()) throw ParameterError("context length must be below the sequence length");
    if (k == 0) return h0(seq);

    // group positions i >= k by the context seq[i-k..i-1], then by seq[i]
    std::vector<uint64_t> pos(seq.size() - k);
    std::iota(pos.begin(), pos.end(), k);
    auto context_less = [&](uint64_t x, uint64_t y) {
        return std::lexicographical_compare(seq.begin() + (x - k), seq.begin() + x, seq.begin() + (y - k), seq.begin() + y);
    };
    std::sort(pos.begin(), pos.end(), [&](uint64_t x, uint64_t y) {
        if (context_less(x, y)) return true;
        if (context_less(y, x)) return false;
        return seq[x] < seq[y];
    });

    double total = 0;
    std::vector<uint64_t> counts;
    for (size_t lo = 0; lo < pos.size();) {
        size_t hi = lo + 1;
        while (hi < pos.size() && !context_less(pos[lo], pos[hi])) ++hi;
        counts.clear();
        for (size_t r = lo; r < hi;) {
            size_t e = r + 1;
            while (e < hi && seq[pos[e]] == seq[pos[r]]) ++e;
            counts.push_back(e - r);
            r = e;
        }
        total += static_cast<double>(hi - lo) * entropy_of_counts(counts);
        lo = hi;
    }
    return total / static_cast<double>(seq.size());
}

double h0_convexity_floor(uint64_t n, uint64_t sigma) {
    if (n == 0 || sigma == 0 || sigma > n) return 0.0;
    const double dn = static_cast<double>(n);
    const double rest = static_cast<double>(n - sigma + 1);
    return static_cast<double>(sigma - 1) * std::log2(dn) + rest * std::log2(dn / rest);
}

EntropyReport entropy_report(std::span<const uint64_t> seq, uint64_t k, bool structure) {
    EntropyReport r;
    r.n = seq.size();
    std::vector<uint64_t> sorted(seq.begin(), seq.end());
    std::sort(sorted.begin(), sorted.end());
    r.sigma = static_cast<uint64_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    r.h0 = h0(seq);
    r.k = k;
    r.hk = hk(seq, k);
    if (!structure) return r;
    const ValueRuns runs = value_runs(seq, true);
    r.rho = runs.length.size();
    r.h_runs = h_runs(runs.length);
    std::unordered_map<uint64_t, uint64_t> sizes;
    for (uint64_t x : seq) ++sizes[x];
    std::vector<uint64_t> counts;
    for (const auto& [x, c] : sizes) counts.push_back(c);
    std::sort(counts.begin(), counts.end());
    r.h_sets = h_sets(counts);
    ApOptions o;
    o.general_alphabet = true;
    const ApSequence a(seq, o);
    r.total_bits = a.size_in_bits();
    for (const SpaceSection& s : a.space_report().sections) r.sections.emplace_back(s.name, s.bits);
    return r;
}

std::string EntropyReport::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["sigma"] = sigma;
    j["h0"] = h0;
    j["h0_bits"] = h0 * static_cast<double>(n);
    j["k"] = k;
    j["hk"] = hk;
    j["hk_bits"] = hk * static_cast<double>(n);
    j["rho"] = rho;
    j["h_runs"] = h_runs;
    j["h_sets"] = h_sets;
    j["total_bits"] = total_bits;
    j["sections"] = nlohmann::ordered_json::array();
    for (const auto& [name, bits] : sections) j["sections"].push_back({{"name", name}, {"bits", bits}});
    return j.dump(2);
}

}  // namespace apds
