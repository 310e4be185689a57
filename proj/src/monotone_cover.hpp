#pragma once

// Covers of integer sequences by monotone subsequences, shared by the
// permutation and function builders. Runs are non-strict (equal values may
// follow each other), which for permutations is the same as strict.

#include <cstdint>
#include <span>
#include <vector>

namespace apds::detail {

enum Dir : uint8_t { kOpen, kUp, kDown };

// Covers the positions `pos` (ascending, 0-based) with non-decreasing (or
// non-increasing) runs, each element extending the run whose top is closest
// below (above) it. label[i] gets the 1-based run id; new runs are appended
// to `dir`.
void patience_cover(std::span<const uint64_t> v, std::span<const uint64_t> pos, bool up, std::vector<uint64_t>& label,
                    std::vector<Dir>& dir);

// Relabels runs 1..rho by first position.
void renumber(std::vector<uint64_t>& label, std::vector<Dir>& dir);

// Longest non-decreasing (non-increasing) subsequence of v restricted to
// `pos`; returns the chosen positions in order.
std::vector<uint64_t> longest_monotone(std::span<const uint64_t> v, std::span<const uint64_t> pos, bool up);

// Repeatedly removes the longest monotone subsequence while it is long
// compared with what is left (>= 3 sqrt(m)), then covers the rest by the
// better patience cover. Labels are numbered by first position.
void peel_cover(std::span<const uint64_t> v, std::vector<uint64_t>& label, std::vector<Dir>& dir);

}  // namespace apds::detail
