#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "apds/bit_vector.hpp"
#include "apds/int_vector.hpp"

namespace apds {

// Companion for pi^k queries on a permutation stored elsewhere. On every
// cycle of length >= t, the cycle minimum and every t-th element after it are
// marked; each mark knows its cycle and its slot in that cycle's mark array.
// A query walks forward with pi() until it meets a mark or returns to the
// start (at most t steps), then jumps through the mark array and finishes
// with fewer than t more steps. Inverse powers use the same walk.
class CycleIndex {
public:
    using Apply = std::function<uint64_t(uint64_t)>;

    CycleIndex() = default;
    // perm holds pi(1..n) as 1-based values
    CycleIndex(std::span<const uint64_t> perm, uint64_t step);

    uint64_t step() const { return step_; }
    uint64_t size() const { return n_; }
    uint64_t marked_count() const { return marked_.ones(); }
    uint64_t long_cycles() const { return cycle_length_.size(); }

    // pi^k(i) using `apply` for pi(). If `applications` is given, the number
    // of calls to `apply` is added to it.
    uint64_t power(uint64_t i, int64_t k, const Apply& apply, uint64_t* applications = nullptr) const;

    uint64_t size_in_bits() const;

    void serialize(Writer& out) const;
    static CycleIndex load(Reader& in);

private:
    uint64_t n_ = 0;
    uint64_t step_ = 1;
    BitVector marked_;          // aligned to positions 1..n
    IntVector mark_cycle_;      // per mark (position order): long-cycle id
    IntVector mark_slot_;       // per mark: index in its cycle's mark array
    IntVector cycle_length_;    // per long cycle
    IntVector cycle_first_;     // per long cycle: offset into marks_, plus a sentinel
    IntVector marks_;           // concatenated mark arrays, 1-based elements
};

}  // namespace apds
