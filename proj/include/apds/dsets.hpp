#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apds/ap_sequence.hpp"
#include "apds/serialize.hpp"

namespace apds {

struct RebuildEvent {
    uint64_t unions = 0;  // successful unions performed before this rebuild
    uint64_t sets = 0;
    double entropy = 0;   // H(sets) at the rebuild
    uint64_t ids_bits_before = 0;
    uint64_t ids_bits_after = 0;
    uint64_t payload_bits_before = 0;  // ids plus union-find arrays
    uint64_t payload_bits_after = 0;
};

// Disjoint sets over [1..n]. The string ids[i] = set holding i is kept as an
// ApSequence over dense set numbers, fixed between rebuilds; unions run on a
// union-find (by rank, with path compression) over those numbers. The string
// is rebuilt when H(sets) has dropped by a factor 1 + epsilon since the last
// rebuild, as long as H(sets) >= 1 bit per element; the merge into a single
// set always triggers a last rebuild.
class DisjointSetCollection {
public:
    DisjointSetCollection() = default;
    DisjointSetCollection(uint64_t n, double epsilon);

    uint64_t size() const { return n_; }
    double epsilon() const { return epsilon_; }
    uint64_t set_count() const { return sets_; }
    // H(sets), bits per element
    double entropy() const;
    double entropy_at_last_rebuild() const { return h_last_; }
    uint64_t rebuild_count() const { return trace_.size(); }
    const std::vector<RebuildEvent>& trace() const { return trace_; }
    // serialized size of the ids string (payload, without rank/select directories)
    uint64_t ids_bits() const;
    // serialized size of the ids string, representatives and union-find state
    uint64_t payload_bits() const;

    // The smallest element of the set holding i.
    uint64_t find(uint64_t i);
    // Merges the sets of i and j; returns find(i) afterwards. Checks for a
    // rebuild.
    uint64_t unite(uint64_t i, uint64_t j);
    // Rebuilds if due; returns whether it did.
    bool maybe_rebuild();

    uint64_t size_in_bits() const;

    void serialize(Writer& out) const;
    static DisjointSetCollection load(Reader& in);

private:
    void check(uint64_t i) const;
    void write_state(Writer& out) const;
    uint64_t root(uint64_t id);
    void rebuild();

    uint64_t n_ = 0;
    double epsilon_ = 0.1;
    uint64_t sets_ = 0;
    uint64_t sets_last_ = 0;  // set count at the last rebuild
    double h_last_ = 0;
    double sum_size_lg_ = 0;  // sum over sets of |S| lg |S|
    uint64_t unions_ = 0;

    ApSequence ids_;
    // union-find over the dense ids of the last rebuild, 1-based
    std::vector<uint64_t> parent_;
    std::vector<uint8_t> rank_;
    std::vector<uint64_t> count_;  // elements per root
    std::vector<uint64_t> rep_;    // smallest element per root
    std::vector<RebuildEvent> trace_;
};

}  // namespace apds
