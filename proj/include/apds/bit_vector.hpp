#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apds/int_vector.hpp"
#include "apds/serialize.hpp"

namespace apds {

// Growable bit buffer used to assemble a BitVector.
class BitBuilder {
public:
    BitBuilder() = default;
    explicit BitBuilder(uint64_t size) : size_(size), words_(bits::words_for(size), 0) {}

    void push_back(bool bit) {
        if ((size_ & 63) == 0) words_.push_back(0);
        if (bit) words_.back() |= uint64_t{1} << (size_ & 63);
        ++size_;
    }

    // Appends `count` copies of `bit`.
    void append(bool bit, uint64_t count) {
        for (uint64_t k = 0; k < count; ++k) push_back(bit);
    }

    // 0-based
    void set(uint64_t pos, bool bit = true) {
        if (bit)
            words_[pos >> 6] |= uint64_t{1} << (pos & 63);
        else
            words_[pos >> 6] &= ~(uint64_t{1} << (pos & 63));
    }

    bool get(uint64_t pos) const { return (words_[pos >> 6] >> (pos & 63)) & 1u; }

    uint64_t size() const { return size_; }
    const std::vector<uint64_t>& words() const { return words_; }
    std::vector<uint64_t>& words() { return words_; }

private:
    uint64_t size_ = 0;
    std::vector<uint64_t> words_;
};

// Uncompressed bit sequence with a two-level rank directory (4096/512-bit
// super/basic blocks) and select samples every 512 ones and every 512 zeros.
// Positions are 1-based; rank1(i) counts ones among the first i bits.
class PlainBits {
public:
    static constexpr uint64_t kBlockBits = 512;
    static constexpr uint64_t kSuperBits = 4096;
    static constexpr uint64_t kSelectSample = 512;

    PlainBits() { build_directory(); }
    PlainBits(std::vector<uint64_t> words, uint64_t size);

    uint64_t size() const { return size_; }
    uint64_t ones() const { return ones_; }

    bool access(uint64_t i) const { return (words_[(i - 1) >> 6] >> ((i - 1) & 63)) & 1u; }
    uint64_t rank1(uint64_t i) const;
    uint64_t select1(uint64_t j) const;
    uint64_t select0(uint64_t j) const;

    uint64_t size_in_bits() const;
    const std::vector<uint64_t>& words() const { return words_; }

private:
    void build_directory();
    uint64_t block_rank(uint64_t b) const { return super_[b / 8] + blocks_.get(b); }

    uint64_t size_ = 0;
    uint64_t ones_ = 0;
    std::vector<uint64_t> words_;
    std::vector<uint64_t> super_;
    IntVector blocks_;
    IntVector select1_samples_;
    IntVector select0_samples_;
};

// Elias-Fano encoding of the set-bit positions of a sparse bit sequence.
class EliasFano {
public:
    EliasFano() = default;
    // positions: strictly increasing, 0-based, each < universe
    EliasFano(std::span<const uint64_t> positions, uint64_t universe);

    uint64_t size() const { return universe_; }
    uint64_t ones() const { return count_; }

    bool access(uint64_t i) const;
    uint64_t rank1(uint64_t i) const;
    uint64_t select1(uint64_t j) const;
    uint64_t select0(uint64_t j) const;

    uint64_t size_in_bits() const { return low_.size_in_bits() + high_.size_in_bits() + 3 * 64; }

    void serialize(Writer& out) const;
    static EliasFano load(Reader& in);

private:
    uint64_t universe_ = 0;
    uint64_t count_ = 0;
    unsigned low_width_ = 0;
    IntVector low_;
    PlainBits high_;
};

enum class BitEncoding : uint8_t { kAuto = 0, kPlain = 1, kSparse = 2 };

// Immutable bit sequence with rank/select, backed by either PlainBits or
// EliasFano. kAuto picks the sparse form when fewer than 1/8 of the bits are
// ones. All positions are 1-based.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(const BitBuilder& builder, BitEncoding encoding = BitEncoding::kAuto);
    // From the 0-based positions of the ones (strictly increasing, each <
    // size), without materializing the plain bits unless they are kept.
    static BitVector from_positions(std::span<const uint64_t> ones, uint64_t size, BitEncoding encoding = BitEncoding::kAuto);
    // Convenience for tests: "1000100101" style strings.
    static BitVector from_string(std::string_view bits, BitEncoding encoding = BitEncoding::kAuto);

    uint64_t size() const { return size_; }
    uint64_t ones() const { return ones_; }
    uint64_t zeros() const { return size_ - ones_; }
    bool is_sparse() const { return sparse_; }

    bool access(uint64_t i) const;
    bool operator[](uint64_t i) const { return access(i); }

    // Occurrences of `bit` among positions 1..i; i = 0 is allowed.
    uint64_t rank(uint64_t i, bool bit) const;
    uint64_t rank1(uint64_t i) const { return rank(i, true); }
    uint64_t rank0(uint64_t i) const { return rank(i, false); }

    // Position of the j-th occurrence of `bit`; throws NotFound past the last one.
    uint64_t select(uint64_t j, bool bit) const;
    uint64_t select1(uint64_t j) const { return select(j, true); }
    uint64_t select0(uint64_t j) const { return select(j, false); }

    // Unchecked forms for hot paths; caller guarantees the preconditions.
    uint64_t rank1_unchecked(uint64_t i) const { return sparse_ ? sparse_bits_.rank1(i) : plain_.rank1(i); }
    uint64_t select1_unchecked(uint64_t j) const { return sparse_ ? sparse_bits_.select1(j) : plain_.select1(j); }
    uint64_t select0_unchecked(uint64_t j) const { return sparse_ ? sparse_bits_.select0(j) : plain_.select0(j); }
    bool access_unchecked(uint64_t i) const { return sparse_ ? sparse_bits_.access(i) : plain_.access(i); }
    // (bit at i, rank1(i)) in one step; i >= 1.
    std::pair<bool, uint64_t> access_rank1_unchecked(uint64_t i) const {
        if (sparse_) {
            const uint64_t r = sparse_bits_.rank1(i);
            return {r != sparse_bits_.rank1(i - 1), r};
        }
        return {plain_.access(i), plain_.rank1(i)};
    }

    uint64_t size_in_bits() const;
    std::string to_string() const;

    void serialize(Writer& out) const;
    static BitVector load(Reader& in);

private:
    uint64_t size_ = 0;
    uint64_t ones_ = 0;
    bool sparse_ = false;
    PlainBits plain_;
    EliasFano sparse_bits_;
};

// Indexed dictionary over a set of distinct values in [1..universe]:
// value -> rank among members, and rank -> value. Elias-Fano backed, so it
// takes about sigma*lg(universe/sigma) + 2*sigma bits.
class SparseDictionary {
public:
    SparseDictionary() = default;
    // members must be strictly increasing and >= 1
    explicit SparseDictionary(std::span<const uint64_t> members);

    uint64_t universe() const { return universe_; }
    uint64_t size() const { return set_.ones(); }

    // Rank of `a` among the members, or nullopt if `a` is not a member.
    // Throws OutOfRange if a is outside [1..universe].
    std::optional<uint64_t> index_of(uint64_t a) const;
    // i-th smallest member, 1-based.
    uint64_t value_of(uint64_t i) const;

    uint64_t size_in_bits() const { return set_.size_in_bits() + 64; }

    void serialize(Writer& out) const;
    static SparseDictionary load(Reader& in);

private:
    uint64_t universe_ = 0;
    EliasFano set_;
};

}  // namespace apds
