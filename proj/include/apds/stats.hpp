#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace apds {

// Empirical entropies, base-2, bits per element. 0*lg(...) terms are 0.

// H0 of a sequence. Throws EmptyInput on an empty sequence.
double h0(std::span<const uint64_t> seq);

// Entropy of the distribution <c_1/n, ..., c_k/n> where n = sum of c_i.
// Zero entries are skipped. Used for H0 from counts, H(runs) and H(sets).
double entropy_of_counts(std::span<const uint64_t> counts);

// k-th order empirical entropy: sum over length-k contexts w of
// |s_w|/n * H0(s_w), s_w being the symbols that follow w. Requires k < n.
double hk(std::span<const uint64_t> seq, uint64_t k);

inline double h_runs(std::span<const uint64_t> run_lengths) { return entropy_of_counts(run_lengths); }
inline double h_sets(std::span<const uint64_t> set_sizes) { return entropy_of_counts(set_sizes); }

// (sigma - 1) lg n + (n - sigma + 1) lg(n / (n - sigma + 1)), a lower bound on
// n*H0 of any length-n string over an effective alphabet of size sigma.
double h0_convexity_floor(uint64_t n, uint64_t sigma);

struct EntropyReport {
    uint64_t n = 0;
    uint64_t sigma = 0;
    double h0 = 0;
    uint64_t k = 0;
    double hk = 0;
    // maximal monotone segments of the sequence read as a function
    uint64_t rho = 0;
    double h_runs = 0;
    // the sequence read as element -> set assignment
    double h_sets = 0;
    // ApSequence built over the sequence
    uint64_t total_bits = 0;
    std::vector<std::pair<std::string, uint64_t>> sections;

    std::string to_json() const;
};

// With structure = false the run, set and section fields stay 0.
EntropyReport entropy_report(std::span<const uint64_t> seq, uint64_t k = 0, bool structure = true);

}  // namespace apds
