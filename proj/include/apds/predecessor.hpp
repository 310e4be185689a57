#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "apds/bit_vector.hpp"
#include "apds/int_vector.hpp"

namespace apds {

// Static predecessor search over keys in [1..universe] with a trie of
// branching B = ceil(universe^epsilon) (capped at 2^16) and depth
// ceil(log_B universe). Node bitmaps are concatenated level by level (LOUDS
// style), so a child index is a rank over the bitmap, and the leaves come out
// in key order. Queries take O(depth) rank/select operations.
class PredecessorTrie {
public:
    struct Hit {
        uint64_t key;
        uint64_t aux;
    };

    PredecessorTrie() = default;
    // keys strictly increasing in [1..universe]; aux defaults to the 1-based
    // rank of each key
    PredecessorTrie(std::span<const uint64_t> keys, uint64_t universe, double epsilon,
                    std::span<const uint64_t> aux = {});

    // Largest key <= x, or nullopt when every key is larger.
    std::optional<Hit> query(uint64_t x) const;

    uint64_t size() const { return keys_.size(); }
    uint64_t universe() const { return universe_; }
    uint64_t branching() const { return branch_; }
    unsigned depth() const { return depth_; }
    uint64_t key(uint64_t rank) const { return keys_.get(rank - 1); }
    uint64_t aux(uint64_t rank) const { return aux_.get(rank - 1); }

    uint64_t size_in_bits() const;

    void serialize(Writer& out) const;
    static PredecessorTrie load(Reader& in);

private:
    void build_levels();
    uint64_t digit(uint64_t y, unsigned level) const;
    // leaf rank (1-based) of the largest key below `node` at `level`
    uint64_t rightmost_leaf(uint64_t node, unsigned level) const;

    uint64_t universe_ = 0;
    uint64_t branch_ = 2;
    unsigned depth_ = 1;
    uint64_t internal_ = 0;  // nodes at depths < depth_
    double epsilon_ = 0.5;
    IntVector keys_;
    IntVector aux_;
    BitVector bitmap_;  // B bits per internal node, breadth-first
};

}  // namespace apds
