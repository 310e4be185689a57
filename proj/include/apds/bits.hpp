#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>

namespace apds::bits {

inline constexpr uint64_t kWordBits = 64;

inline constexpr uint64_t words_for(uint64_t nbits) { return (nbits + kWordBits - 1) / kWordBits; }

// Mask with the low `k` bits set; k in [0, 64].
inline constexpr uint64_t low_mask(unsigned k) { return k >= 64 ? ~uint64_t{0} : (uint64_t{1} << k) - 1; }

// Number of bits needed to write any value in [0, x].
inline constexpr unsigned width_for(uint64_t x) { return x == 0 ? 1 : static_cast<unsigned>(std::bit_width(x)); }

// ceil(lg x) for x >= 1
inline constexpr unsigned ceil_log2(uint64_t x) { return x <= 1 ? 0 : static_cast<unsigned>(std::bit_width(x - 1)); }

inline constexpr unsigned floor_log2(uint64_t x) { return x == 0 ? 0 : static_cast<unsigned>(std::bit_width(x)) - 1; }

// Position (0-based) of the k-th set bit (k 0-based) of w. Requires k < popcount(w).
inline unsigned select_in_word(uint64_t w, unsigned k) {
    unsigned base = 0;
    for (;;) {
        const unsigned c = static_cast<unsigned>(std::popcount(w & 0xffu));
        if (k < c) break;
        k -= c;
        w >>= 8;
        base += 8;
    }
    for (;;) {
        if (w & 1u) {
            if (k == 0) return base;
            --k;
        }
        w >>= 1;
        ++base;
    }
}

}  // namespace apds::bits
