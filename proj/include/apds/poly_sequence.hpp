#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "apds/bit_vector.hpp"

namespace apds {

// Huffman-shaped binary wavelet tree. Stores a sequence in about
// n(H0 + 1) bits plus rank/select directories and answers access, rank and
// select in O(code length) bit-vector operations. Intended for small
// alphabets (class strings, the class map, and sub-sequences with at most
// lg n distinct symbols); symbol values must not exceed kMaxSymbol.
class PolySequence {
public:
    static constexpr uint64_t kMaxSymbol = uint64_t{1} << 24;

    PolySequence() = default;
    explicit PolySequence(std::span<const uint64_t> seq);

    uint64_t size() const { return n_; }
    uint64_t alphabet_size() const { return sigma_; }

    uint64_t access(uint64_t i) const;
    // Symbol at i together with its rank up to i.
    std::pair<uint64_t, uint64_t> access_rank(uint64_t i) const;
    uint64_t rank(uint64_t a, uint64_t i) const;
    uint64_t select(uint64_t a, uint64_t j) const;
    uint64_t count(uint64_t a) const { return rank(a, n_); }
    bool contains(uint64_t a) const { return a < leaves_.size() && leaves_[a].present; }

    // Code length of `a` in the tree (0 for a single-symbol sequence).
    unsigned code_length(uint64_t a) const;
    uint64_t size_in_bits() const;

    void serialize(Writer& out) const;
    static PolySequence load(Reader& in);

private:
    struct Node {
        BitVector bits;
        // >= 0: index of an internal node; < 0: leaf holding symbol -(child + 1)
        int64_t child[2] = {0, 0};
    };
    struct Leaf {
        uint64_t code = 0;  // bit d (LSB first) is the branch taken at depth d
        uint8_t length = 0;
        bool present = false;
        int64_t parent = -1;
    };

    void index_tree();
    void check_position(uint64_t i) const;

    uint64_t n_ = 0;
    uint64_t sigma_ = 0;
    uint64_t only_symbol_ = 0;  // meaningful when sigma_ == 1
    int64_t root_ = -1;
    std::vector<Node> nodes_;

    // derived from the topology on build and load
    std::vector<int64_t> parent_;
    std::vector<Leaf> leaves_;
};

}  // namespace apds
