#pragma once

#include <cstdint>
#include <span>

#include "apds/bit_vector.hpp"
#include "apds/int_vector.hpp"

namespace apds {

// Which direction of the in-chunk permutation is stored explicitly.
//   kFastSelect: sorted rank -> chunk position (select is direct, access walks
//                the cycle shortcuts).
//   kFastAccess: chunk position -> sorted rank (access is direct, select walks).
enum class Variant : uint8_t { kFastSelect = 0, kFastAccess = 1 };

// Access/rank/select over [1..sigma] for large alphabets. The sequence is cut
// into chunks of length sigma; each chunk keeps a unary histogram and a
// permutation that sorts its positions stably by symbol. A per-symbol unary
// distribution over chunks locates occurrences across chunks.
//
// Bit layouts (all counts in zeros, terminated by a one):
//   histogram_:    for chunk c, for a in 1..sigma: 0^{occ(a, chunk c)} 1
//   distribution_: for a in 1..sigma, for chunk c:  0^{occ(a, chunk c)} 1
class LargeSequence {
public:
    LargeSequence() = default;
    // symbols in [1..sigma]
    LargeSequence(std::span<const uint64_t> seq, uint64_t sigma, Variant variant = Variant::kFastSelect);

    uint64_t size() const { return n_; }
    uint64_t alphabet_size() const { return sigma_; }
    Variant variant() const { return variant_; }

    uint64_t access(uint64_t i) const;
    uint64_t rank(uint64_t a, uint64_t i) const;
    uint64_t select(uint64_t a, uint64_t j) const;
    uint64_t count(uint64_t a) const;

    // Step between marked elements on each permutation cycle.
    uint64_t shortcut_step() const { return step_; }
    uint64_t chunk_count() const { return chunks_; }

    // chunk-local view of the stored permutation and its inverse (0-based)
    uint64_t stored_forward(uint64_t chunk, uint64_t x) const { return perm_.get(chunk * sigma_ + x); }
    uint64_t stored_inverse(uint64_t chunk, uint64_t y) const;

    uint64_t size_in_bits() const;

    void serialize(Writer& out) const;
    static LargeSequence load(Reader& in);

private:
    uint64_t chunk_length(uint64_t c) const { return c + 1 < chunks_ ? sigma_ : n_ - c * sigma_; }
    // zeros before the q-th one (q >= 0)
    static uint64_t zeros_before_one(const BitVector& bv, uint64_t q) { return q == 0 ? 0 : bv.select1_unchecked(q) - q; }
    uint64_t symbols_below(uint64_t c, uint64_t a) const;
    uint64_t symbol_of_sorted(uint64_t c, uint64_t k) const;
    uint64_t sorted_to_position(uint64_t c, uint64_t k) const;
    void build_shortcuts();

    uint64_t n_ = 0;
    uint64_t sigma_ = 0;
    uint64_t chunks_ = 0;
    uint64_t step_ = 1;
    Variant variant_ = Variant::kFastSelect;
    BitVector histogram_;
    BitVector distribution_;
    IntVector perm_;
    BitVector marked_;
    IntVector back_;
};

}  // namespace apds
