#pragma once

// Naive reference implementations shared by the unit tests.

#include <cstdint>
#include <algorithm>
#include <optional>
#include <cmath>
#include <random>
#include <vector>

namespace oracle {

inline uint64_t rank(const std::vector<uint64_t>& s, uint64_t a, uint64_t i) {
    uint64_t r = 0;
    for (uint64_t p = 0; p < i; ++p) r += s[p] == a;
    return r;
}

inline std::optional<uint64_t> select(const std::vector<uint64_t>& s, uint64_t a, uint64_t j) {
    for (uint64_t p = 0; p < s.size(); ++p)
        if (s[p] == a && --j == 0) return p + 1;
    return std::nullopt;
}

// symbols in [1..sigma], every symbol present at least once when n >= sigma
inline std::vector<uint64_t> random_effective(std::mt19937_64& rng, uint64_t n, uint64_t sigma) {
    std::vector<uint64_t> s(n);
    for (auto& x : s) x = rng() % sigma + 1;
    for (uint64_t a = 1; a <= sigma && a <= n; ++a) s[rng() % n] = a;
    // relabel to an effective alphabet
    std::vector<uint64_t> seen(sigma + 1, 0);
    uint64_t next = 0;
    for (auto& x : s) {
        if (!seen[x]) seen[x] = ++next;
        x = seen[x];
    }
    return s;
}

inline std::vector<uint64_t> random_zipf(std::mt19937_64& rng, uint64_t n, uint64_t sigma, double exponent) {
    std::vector<double> w(sigma);
    for (uint64_t r = 0; r < sigma; ++r) w[r] = 1.0 / std::pow(static_cast<double>(r + 1), exponent);
    std::discrete_distribution<uint64_t> dist(w.begin(), w.end());
    std::vector<uint64_t> s(n);
    for (auto& x : s) x = dist(rng) + 1;
    std::vector<uint64_t> seen(sigma + 1, 0);
    uint64_t next = 0;
    for (auto& x : s) {
        if (!seen[x]) seen[x] = ++next;
        x = seen[x];
    }
    return s;
}

}  // namespace oracle

namespace oracle {

inline std::vector<uint64_t> inverse(const std::vector<uint64_t>& p) {
    std::vector<uint64_t> q(p.size());
    for (uint64_t i = 0; i < p.size(); ++i) q[p[i] - 1] = i + 1;
    return q;
}

inline std::vector<uint64_t> random_perm(std::mt19937_64& rng, uint64_t n) {
    std::vector<uint64_t> p(n);
    for (uint64_t i = 0; i < n; ++i) p[i] = i + 1;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

// k contiguous segments, each sorted up or down
inline std::vector<uint64_t> contiguous_runs(std::mt19937_64& rng, uint64_t n, uint64_t k) {
    auto p = random_perm(rng, n);
    uint64_t pos = 0;
    for (uint64_t r = 0; r < k && pos < n; ++r) {
        const uint64_t len = r + 1 == k ? n - pos : 1 + rng() % std::max<uint64_t>(1, 2 * (n - pos) / (k - r));
        const uint64_t end = std::min(n, pos + len);
        std::sort(p.begin() + pos, p.begin() + end);
        if (rng() & 1) std::reverse(p.begin() + pos, p.begin() + end);
        pos = end;
    }
    return p;
}

// k contiguous segments covering consecutive value blocks, each +1 or -1
inline std::vector<uint64_t> contiguous_strict_runs(std::mt19937_64& rng, uint64_t n, uint64_t k) {
    std::vector<uint64_t> cuts{0, n};
    for (uint64_t r = 1; r < k; ++r) cuts.push_back(rng() % n);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<std::pair<uint64_t, uint64_t>> blocks;
    for (size_t b = 0; b + 1 < cuts.size(); ++b) blocks.emplace_back(cuts[b] + 1, cuts[b + 1] - cuts[b]);
    std::shuffle(blocks.begin(), blocks.end(), rng);
    std::vector<uint64_t> p;
    for (auto [lo, len] : blocks) {
        const bool down = rng() & 1;
        for (uint64_t x = 0; x < len; ++x) p.push_back(down ? lo + len - 1 - x : lo + x);
    }
    return p;
}

// k interleaved monotone sequences
inline std::vector<uint64_t> interleaved_runs(std::mt19937_64& rng, uint64_t n, uint64_t k) {
    std::vector<std::vector<uint64_t>> runs(k);
    for (uint64_t v = 1; v <= n; ++v) runs[rng() % k].push_back(v);
    for (auto& r : runs)
        if (rng() & 1) std::reverse(r.begin(), r.end());
    std::vector<uint64_t> owner;
    for (uint64_t r = 0; r < k; ++r) owner.insert(owner.end(), runs[r].size(), r);
    std::shuffle(owner.begin(), owner.end(), rng);
    std::vector<size_t> next(k, 0);
    std::vector<uint64_t> p;
    for (uint64_t r : owner) p.push_back(runs[r][next[r]++]);
    return p;
}

}  // namespace oracle
