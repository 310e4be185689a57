#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apds/ap_sequence.hpp"
#include "apds/bit_vector.hpp"
#include "apds/cycle_index.hpp"
#include "apds/int_vector.hpp"
#include "apds/predecessor.hpp"

namespace apds {

enum class RunKind : uint8_t {
    kInterleavedGeneral = 0,  // interleaved increasing/decreasing runs
    kInterleavedStrict = 1,   // interleaved runs stepping by exactly +1 or -1
    kContiguousGeneral = 2,   // maximal monotone segments
    kContiguousStrict = 3,    // maximal segments stepping by +1 or -1
};

std::string_view run_kind_name(RunKind kind);
RunKind parse_run_kind(std::string_view name);

struct Run {
    uint64_t length = 0;
    bool decreasing = false;
    uint64_t minimum = 0;  // smallest value in the run
    uint64_t start = 0;    // first position of the run
};

// Cover of a permutation by monotone runs. label[i-1] is the run (1-based)
// holding position i. Interleaved-strict runs are numbered by minimum value;
// every other kind by first position.
struct RunDecomposition {
    RunKind kind = RunKind::kContiguousGeneral;
    uint64_t n = 0;
    std::vector<uint64_t> label;
    std::vector<Run> runs;

    uint64_t rho() const { return runs.size(); }
    std::vector<uint64_t> lengths() const;
    // H(runs), bits per element
    double entropy() const;
};

// Throws InvalidPermutation unless perm is a bijection on [1..n].
void validate_permutation(std::span<const uint64_t> perm);

RunDecomposition decompose_runs(std::span<const uint64_t> perm, RunKind kind);

struct PermOptions {
    RunKind kind = RunKind::kInterleavedGeneral;
    double epsilon = 0.5;    // predecessor trie branching n^epsilon
    uint64_t power_step = 0;  // 0: no pi^k support
};

// A permutation stored through its runs:
//   interleaved-general: run labels s in position order and s' in value order
//     (both ApSequences) plus one direction bit per run;
//   interleaved-strict: labels s, per-run length/direction/minimum arrays and a
//     predecessor trie over the minima;
//   contiguous-general: the interleaved-strict store built on pi^-1, with the
//     roles of apply and inverse swapped;
//   contiguous-strict: two predecessor tries, over run starts and over run
//     value minima.
// An optional CycleIndex adds pi^k.
class RunPermutation {
public:
    RunPermutation() = default;
    RunPermutation(std::span<const uint64_t> perm, const PermOptions& options);
    // Uses the given decomposition (its kind must equal options.kind). Throws
    // InvalidInput if a run is not monotone in its recorded direction.
    RunPermutation(std::span<const uint64_t> perm, const RunDecomposition& runs, const PermOptions& options);

    uint64_t size() const { return n_; }
    RunKind kind() const { return kind_; }
    uint64_t rho() const { return rho_; }
    double runs_entropy() const { return h_runs_; }
    bool has_power() const { return power_.has_value(); }
    uint64_t power_step() const { return power_ ? power_->step() : 0; }

    uint64_t apply(uint64_t i) const;
    uint64_t inverse(uint64_t v) const;
    // pi^k(i); k < 0 gives inverse powers. Throws Unsupported without a
    // power step. `applications` (optional) accumulates calls to apply().
    uint64_t power(uint64_t i, int64_t k, uint64_t* applications = nullptr) const;

    uint64_t size_in_bits() const;
    std::vector<SpaceSection> sections() const;

    void serialize(Writer& out) const;
    static RunPermutation load(Reader& in);

private:
    // labels + run arrays + predecessor over run minima; values of run r are
    // the contiguous range [min_r, min_r + len_r - 1]
    struct StrictStore {
        ApSequence labels;
        IntVector length;
        IntVector minimum;
        BitVector decreasing;
        PredecessorTrie pred;

        uint64_t apply(uint64_t i) const;
        uint64_t inverse(uint64_t v) const;
        uint64_t size_in_bits() const;
        void serialize(Writer& out) const;
        static StrictStore load(Reader& in);
    };
    static StrictStore make_strict(std::span<const uint64_t> label, const std::vector<Run>& runs, uint64_t n, double epsilon);

    void check(uint64_t i) const;

    uint64_t n_ = 0;
    RunKind kind_ = RunKind::kInterleavedGeneral;
    uint64_t rho_ = 0;
    double h_runs_ = 0;

    // interleaved-general
    ApSequence s_;
    ApSequence s_prime_;
    BitVector direction_;

    // interleaved-strict and contiguous-general
    StrictStore strict_;

    // contiguous-strict
    PredecessorTrie by_start_;  // key: run start, aux: run id
    PredecessorTrie by_value_;  // key: run value minimum, aux: run id
    IntVector start_value_;     // pi(start) per run
    IntVector run_start_;       // start per run
    IntVector run_length_;
    BitVector run_decreasing_;

    std::optional<CycleIndex> power_;
};

}  // namespace apds
