#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "apds/bits.hpp"
#include "apds/serialize.hpp"

namespace apds {

// Fixed-width packed integer array, 0-based. Values are laid out LSB-first
// across 64-bit words.
class IntVector {
public:
    IntVector() = default;

    IntVector(uint64_t size, unsigned width) : size_(size), width_(width) {
        if (width_ > 64) throw ParameterError("IntVector width must be <= 64");
        words_.assign(bits::words_for(size_ * width_), 0);
    }

    // Narrowest packing that holds every value of `values`.
    static IntVector from(std::span<const uint64_t> values) {
        uint64_t mx = 0;
        for (uint64_t v : values) mx = v > mx ? v : mx;
        IntVector out(values.size(), bits::width_for(mx));
        for (uint64_t i = 0; i < values.size(); ++i) out.set(i, values[i]);
        return out;
    }

    uint64_t get(uint64_t i) const {
        if (width_ == 0) return 0;
        const uint64_t bit = i * width_;
        const uint64_t w = bit >> 6;
        const unsigned off = bit & 63;
        uint64_t v = words_[w] >> off;
        if (off + width_ > 64) v |= words_[w + 1] << (64 - off);
        return v & bits::low_mask(width_);
    }

    uint64_t operator[](uint64_t i) const { return get(i); }

    void set(uint64_t i, uint64_t v) {
        if (width_ == 0) return;
        v &= bits::low_mask(width_);
        const uint64_t bit = i * width_;
        const uint64_t w = bit >> 6;
        const unsigned off = bit & 63;
        words_[w] = (words_[w] & ~(bits::low_mask(width_) << off)) | (v << off);
        if (off + width_ > 64) {
            const unsigned spill = off + width_ - 64;
            words_[w + 1] = (words_[w + 1] & ~bits::low_mask(spill)) | (v >> (64 - off));
        }
    }

    uint64_t size() const { return size_; }
    unsigned width() const { return width_; }
    bool empty() const { return size_ == 0; }

    uint64_t size_in_bits() const { return words_.size() * 64 + 128; }

    void serialize(Writer& out) const {
        out.u64(size_);
        out.u8(static_cast<uint8_t>(width_));
        out.words(words_);
    }

    static IntVector load(Reader& in) {
        IntVector v;
        v.size_ = in.u64();
        v.width_ = in.u8();
        if (v.width_ > 64) throw FormatError("bad IntVector width");
        v.words_ = in.words();
        if (v.words_.size() != bits::words_for(v.size_ * v.width_)) throw FormatError("IntVector payload size mismatch");
        return v;
    }

    friend bool operator==(const IntVector&, const IntVector&) = default;

private:
    uint64_t size_ = 0;
    unsigned width_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace apds
