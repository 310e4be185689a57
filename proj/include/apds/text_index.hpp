#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apds/ap_sequence.hpp"
#include "apds/bit_vector.hpp"
#include "apds/int_vector.hpp"

namespace apds {

// max(1, floor(log_sigma(n) / 2))
uint64_t default_block_length(uint64_t n, uint64_t sigma);

// Sequence cut into blocks of b symbols. The block sequence s' (one id per
// block) is an ApSequence; B holds the distinct block contents. rank/select
// on the original sequence go through:
//   R: row a marks the blocks of s' that contain a (rows concatenated into
//      one sparse bitmap over sigma * n' positions);
//   P: for every marked (a, j), in row order, the count x of a in block j as
//      1^x 0.
// The last block may be shorter than b; it gets its own entry in B.
class BlockStore {
public:
    BlockStore() = default;
    // block_length 0 picks default_block_length(n, sigma).
    explicit BlockStore(std::span<const uint64_t> seq, uint64_t block_length = 0);

    uint64_t size() const { return n_; }
    uint64_t alphabet_size() const { return alphabet_.size(); }
    uint64_t block_length() const { return b_; }
    uint64_t block_count() const { return blocks_.size(); }
    uint64_t distinct_blocks() const { return dict_len_.size(); }
    // number of (symbol, block) pairs, i.e. zeros in P
    uint64_t pair_count() const { return p_.zeros(); }
    const BitVector& counts_bitmap() const { return p_; }

    uint64_t access(uint64_t i) const;
    uint64_t rank(uint64_t a, uint64_t i) const;
    uint64_t select(uint64_t a, uint64_t j) const;
    uint64_t count(uint64_t a) const { return rank(a, n_); }

    uint64_t size_in_bits() const;
    std::vector<SpaceSection> sections() const;

    void serialize(Writer& out) const;
    static BlockStore load(Reader& in);

private:
    // caller symbol -> [1..sigma], 0 if absent
    uint64_t internal(uint64_t a) const;
    // number of blocks among s'[1..j] containing internal symbol c
    uint64_t blocks_with(uint64_t c, uint64_t j) const;
    // occurrences of c in its first k blocks (row order)
    uint64_t row_total(uint64_t c, uint64_t k) const;
    uint64_t entry_symbol(uint64_t id, uint64_t offset) const;

    uint64_t n_ = 0;
    uint64_t b_ = 1;
    IntVector alphabet_;  // sorted distinct symbols
    ApSequence blocks_;   // s', ids 1..d
    IntVector dict_;      // d * b symbols (internal), entry id-1 at [(id-1)b, id*b)
    IntVector dict_len_;  // symbols per entry
    BitVector r_;         // sigma rows of n' bits
    BitVector p_;
};

struct FmOptions {
    // length of the contexts the BWT is split by; 0 keeps one sequence
    uint64_t k_context = 0;
    // suffix-array / text sampling step; 0 picks ceil(log_sigma(n) * lg lg n)
    uint64_t sample_rate = 0;
};

// Suffix array of seq with an implicit terminator smaller than every symbol
// appended; returns n + 1 0-based starting positions (the first is n).
std::vector<uint64_t> suffix_array(std::span<const uint64_t> seq);

// Self-index over a symbol sequence: the BWT of text + terminator is stored
// in ApSequences (one per length-k context when k > 0), with a C array,
// suffix-array samples for locate and inverse samples for extract.
class FmIndex {
public:
    FmIndex() = default;
    FmIndex(std::span<const uint64_t> text, const FmOptions& options = {});
    // bytes; symbol values are the byte values
    FmIndex(std::string_view text, const FmOptions& options = {});

    uint64_t size() const { return n_; }
    uint64_t alphabet_size() const { return alphabet_.size(); }
    uint64_t sample_rate() const { return rate_; }
    uint64_t k_context() const { return k_; }
    uint64_t partitions() const { return parts_.size(); }
    bool is_text() const { return text_; }

    // Throws ParameterError on an empty pattern. Symbols outside the
    // alphabet give no occurrences.
    uint64_t count(std::span<const uint64_t> pattern) const;
    uint64_t count(std::string_view pattern) const;
    // 1-based starting positions, ascending
    std::vector<uint64_t> locate(std::span<const uint64_t> pattern) const;
    std::vector<uint64_t> locate(std::string_view pattern) const;
    // text[l..r], 1-based inclusive
    std::vector<uint64_t> extract(uint64_t l, uint64_t r) const;
    std::string extract_text(uint64_t l, uint64_t r) const;

    // BWT rows 1..n+1; the terminator is reported as 0 in bwt() and '$' in
    // bwt_text().
    std::vector<uint64_t> bwt() const;
    std::string bwt_text() const;
    // LF mapping on rows 1..n+1
    uint64_t lf(uint64_t row) const;

    uint64_t size_in_bits() const;
    std::vector<SpaceSection> sections() const;

    void serialize(Writer& out) const;
    static FmIndex load(Reader& in);

private:
    void build(std::span<const uint64_t> text, const FmOptions& options);
    // internal symbols: terminator 1, text symbols 2..sigma+1; 0 if absent
    uint64_t internal(uint64_t a) const;
    std::vector<uint64_t> to_internal(std::span<const uint64_t> pattern) const;
    std::vector<uint64_t> bytes(std::string_view s) const;
    // BWT symbol at row i and rank of that symbol up to i
    std::pair<uint64_t, uint64_t> bwt_access_rank(uint64_t row) const;
    uint64_t bwt_rank(uint64_t c, uint64_t row) const;
    // [sp, ep] rows prefixed by the pattern; empty when sp > ep
    std::pair<uint64_t, uint64_t> range(std::span<const uint64_t> internal_pattern) const;
    uint64_t locate_row(uint64_t row) const;

    uint64_t n_ = 0;
    uint64_t k_ = 0;
    uint64_t rate_ = 1;
    bool text_ = false;
    IntVector alphabet_;  // sorted distinct text symbols
    IntVector c_;         // c_[c] = rows whose BWT symbol is < c, c in [1..sigma+2]
    std::vector<ApSequence> parts_;
    BitVector part_start_;  // rows starting a partition
    IntVector part_before_; // per partition, per symbol: occurrences in earlier partitions
    BitVector sampled_;     // rows whose suffix position is a multiple of rate
    IntVector sa_samples_;  // position / rate per sampled row
    IntVector isa_samples_; // row of suffix k*rate, k = 0..n/rate, then the terminator row
};

}  // namespace apds
