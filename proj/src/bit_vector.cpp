#include "apds/bit_vector.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "apds/error.hpp"

namespace apds {

// ---------------------------------------------------------------------------
// PlainBits

PlainBits::PlainBits(std::vector<uint64_t> words, uint64_t size) : size_(size), words_(std::move(words)) {
    words_.resize(bits::words_for(size_), 0);
    if (size_ & 63) words_.back() &= bits::low_mask(size_ & 63);
    build_directory();
}

void PlainBits::build_directory() {
    const uint64_t nblocks = (size_ + kBlockBits - 1) / kBlockBits;
    const uint64_t nsuper = (size_ + kSuperBits - 1) / kSuperBits;
    super_.assign(nsuper + 1, 0);
    blocks_ = IntVector(nblocks, 12);

    uint64_t running = 0;
    for (uint64_t b = 0; b < nblocks; ++b) {
        if (b % 8 == 0) super_[b / 8] = running;
        blocks_.set(b, running - super_[b / 8]);
        const uint64_t w_end = std::min<uint64_t>((b + 1) * 8, words_.size());
        for (uint64_t w = b * 8; w < w_end; ++w) running += static_cast<uint64_t>(std::popcount(words_[w]));
    }
    super_[nsuper] = running;
    ones_ = running;

    std::vector<uint64_t> s1, s0;
    uint64_t next1 = 1, next0 = 1;
    for (uint64_t b = 0; b < nblocks; ++b) {
        const uint64_t end_bits = std::min<uint64_t>((b + 1) * kBlockBits, size_);
        const uint64_t ones_end = b + 1 < nblocks ? block_rank(b + 1) : ones_;
        const uint64_t zeros_end = end_bits - ones_end;
        while (next1 <= ones_end) {
            s1.push_back(b);
            next1 += kSelectSample;
        }
        while (next0 <= zeros_end) {
            s0.push_back(b);
            next0 += kSelectSample;
        }
    }
    select1_samples_ = IntVector::from(s1);
    select0_samples_ = IntVector::from(s0);
}

uint64_t PlainBits::rank1(uint64_t i) const {
    if (i >= size_) return ones_;
    const uint64_t b = i / kBlockBits;
    uint64_t r = block_rank(b);
    const uint64_t wi = i >> 6;
    for (uint64_t w = b * 8; w < wi; ++w) r += static_cast<uint64_t>(std::popcount(words_[w]));
    if (i & 63) r += static_cast<uint64_t>(std::popcount(words_[wi] & bits::low_mask(i & 63)));
    return r;
}

uint64_t PlainBits::select1(uint64_t j) const {
    const uint64_t k = (j - 1) / kSelectSample;
    const uint64_t nblocks = blocks_.size();
    uint64_t lo = select1_samples_.get(k);
    uint64_t hi = k + 1 < select1_samples_.size() ? select1_samples_.get(k + 1) : nblocks - 1;
    while (lo < hi) {
        const uint64_t mid = (lo + hi + 1) / 2;
        if (block_rank(mid) < j)
            lo = mid;
        else
            hi = mid - 1;
    }
    uint64_t remaining = j - block_rank(lo);
    for (uint64_t w = lo * 8;; ++w) {
        const uint64_t c = static_cast<uint64_t>(std::popcount(words_[w]));
        if (remaining <= c) return w * 64 + bits::select_in_word(words_[w], static_cast<unsigned>(remaining - 1)) + 1;
        remaining -= c;
    }
}

uint64_t PlainBits::select0(uint64_t j) const {
    const uint64_t k = (j - 1) / kSelectSample;
    const uint64_t nblocks = blocks_.size();
    auto zero_rank = [&](uint64_t b) { return b * kBlockBits - block_rank(b); };
    uint64_t lo = select0_samples_.get(k);
    uint64_t hi = k + 1 < select0_samples_.size() ? select0_samples_.get(k + 1) : nblocks - 1;
    while (lo < hi) {
        const uint64_t mid = (lo + hi + 1) / 2;
        if (zero_rank(mid) < j)
            lo = mid;
        else
            hi = mid - 1;
    }
    uint64_t remaining = j - zero_rank(lo);
    for (uint64_t w = lo * 8;; ++w) {
        const uint64_t inv = ~words_[w];
        const uint64_t c = static_cast<uint64_t>(std::popcount(inv));
        if (remaining <= c) return w * 64 + bits::select_in_word(inv, static_cast<unsigned>(remaining - 1)) + 1;
        remaining -= c;
    }
}

uint64_t PlainBits::size_in_bits() const {
    return words_.size() * 64 + super_.size() * 64 + blocks_.size_in_bits() + select1_samples_.size_in_bits() +
           select0_samples_.size_in_bits() + 2 * 64;
}

// ---------------------------------------------------------------------------
// EliasFano

EliasFano::EliasFano(std::span<const uint64_t> positions, uint64_t universe)
    : universe_(universe), count_(positions.size()) {
    low_width_ = (count_ == 0 || universe_ <= count_) ? 0 : bits::floor_log2(universe_ / count_);
    low_ = IntVector(count_, low_width_);
    BitBuilder high(count_ + (universe_ >> low_width_) + 1);
    uint64_t prev = 0;
    for (uint64_t i = 0; i < count_; ++i) {
        const uint64_t p = positions[i];
        if (p >= universe_ || (i > 0 && p <= prev)) throw InvalidInput("Elias-Fano positions must be increasing and inside the universe");
        prev = p;
        low_.set(i, p & bits::low_mask(low_width_));
        high.set((p >> low_width_) + i);
    }
    high_ = PlainBits(std::move(high.words()), high.size());
}

uint64_t EliasFano::select1(uint64_t j) const {
    const uint64_t h = high_.select1(j) - 1;
    return (((h - (j - 1)) << low_width_) | low_.get(j - 1)) + 1;
}

uint64_t EliasFano::rank1(uint64_t i) const {
    if (i >= universe_) return count_;
    const uint64_t bucket = i >> low_width_;
    const uint64_t start = bucket == 0 ? 0 : high_.select0(bucket);
    uint64_t count = start - bucket;
    const uint64_t low = i & bits::low_mask(low_width_);
    for (uint64_t idx = start; idx < high_.size() && high_.access(idx + 1); ++idx) {
        if (low_.get(count) >= low) break;
        ++count;
    }
    return count;
}

bool EliasFano::access(uint64_t i) const { return rank1(i) != rank1(i - 1); }

uint64_t EliasFano::select0(uint64_t j) const {
    // largest r in [0, count] whose r-th one has fewer than j zeros before it
    uint64_t lo = 0, hi = count_;
    while (lo < hi) {
        const uint64_t mid = (lo + hi + 1) / 2;
        if (select1(mid) - mid < j)
            lo = mid;
        else
            hi = mid - 1;
    }
    return j + lo;
}

void EliasFano::serialize(Writer& out) const {
    out.u64(universe_);
    out.u64(count_);
    out.u8(static_cast<uint8_t>(low_width_));
    low_.serialize(out);
    out.u64(high_.size());
    out.words(high_.words());
}

EliasFano EliasFano::load(Reader& in) {
    EliasFano ef;
    ef.universe_ = in.u64();
    ef.count_ = in.u64();
    ef.low_width_ = in.u8();
    ef.low_ = IntVector::load(in);
    const uint64_t high_size = in.u64();
    auto words = in.words();
    if (words.size() != bits::words_for(high_size) || ef.low_.size() != ef.count_) throw FormatError("bad Elias-Fano section");
    ef.high_ = PlainBits(std::move(words), high_size);
    if (ef.high_.ones() != ef.count_) throw FormatError("Elias-Fano count mismatch");
    return ef;
}

// ---------------------------------------------------------------------------
// BitVector

BitVector::BitVector(const BitBuilder& builder, BitEncoding encoding) : size_(builder.size()) {
    uint64_t ones = 0;
    for (uint64_t w : builder.words()) ones += static_cast<uint64_t>(std::popcount(w));
    ones_ = ones;
    sparse_ = encoding == BitEncoding::kSparse || (encoding == BitEncoding::kAuto && size_ > 0 && ones_ * 8 < size_);
    if (sparse_) {
        std::vector<uint64_t> positions;
        positions.reserve(ones_);
        const auto& words = builder.words();
        for (uint64_t w = 0; w < words.size(); ++w) {
            uint64_t x = words[w];
            while (x) {
                positions.push_back(w * 64 + static_cast<uint64_t>(std::countr_zero(x)));
                x &= x - 1;
            }
        }
        sparse_bits_ = EliasFano(positions, size_);
    } else {
        plain_ = PlainBits(builder.words(), size_);
    }
}

BitVector BitVector::from_positions(std::span<const uint64_t> ones, uint64_t size, BitEncoding encoding) {
    for (uint64_t k = 0; k < ones.size(); ++k)
        if (ones[k] >= size || (k > 0 && ones[k] <= ones[k - 1]))
            throw InvalidInput("bit positions must be increasing and below the size");
    BitVector v;
    v.size_ = size;
    v.ones_ = ones.size();
    v.sparse_ = encoding == BitEncoding::kSparse || (encoding == BitEncoding::kAuto && size > 0 && v.ones_ * 8 < size);
    if (v.sparse_) {
        v.sparse_bits_ = EliasFano(ones, size);
    } else {
        BitBuilder b(size);
        for (uint64_t x : ones) b.set(x);
        v.plain_ = PlainBits(b.words(), size);
    }
    return v;
}

BitVector BitVector::from_string(std::string_view s, BitEncoding encoding) {
    BitBuilder b;
    for (char c : s) {
        if (c != '0' && c != '1') throw InvalidInput("bit strings may only contain 0 and 1");
        b.push_back(c == '1');
    }
    return BitVector(b, encoding);
}

bool BitVector::access(uint64_t i) const {
    if (i < 1 || i > size_) throw OutOfRange("bit position " + std::to_string(i) + " outside [1.." + std::to_string(size_) + "]");
    return access_unchecked(i);
}

uint64_t BitVector::rank(uint64_t i, bool bit) const {
    if (i > size_) throw OutOfRange("rank position " + std::to_string(i) + " exceeds length " + std::to_string(size_));
    const uint64_t r1 = rank1_unchecked(i);
    return bit ? r1 : i - r1;
}

uint64_t BitVector::select(uint64_t j, bool bit) const {
    const uint64_t total = bit ? ones_ : size_ - ones_;
    if (j < 1 || j > total) throw NotFound("select: occurrence " + std::to_string(j) + " of bit " + (bit ? "1" : "0") + " not found");
    return bit ? select1_unchecked(j) : select0_unchecked(j);
}

uint64_t BitVector::size_in_bits() const {
    return (sparse_ ? sparse_bits_.size_in_bits() : plain_.size_in_bits()) + 2 * 64 + 8;
}

std::string BitVector::to_string() const {
    std::string s;
    s.reserve(size_);
    for (uint64_t i = 1; i <= size_; ++i) s.push_back(access_unchecked(i) ? '1' : '0');
    return s;
}

void BitVector::serialize(Writer& out) const {
    out.u8(sparse_ ? 1 : 0);
    if (sparse_) {
        sparse_bits_.serialize(out);
    } else {
        out.u64(size_);
        out.words(plain_.words());
    }
}

BitVector BitVector::load(Reader& in) {
    BitVector v;
    const uint8_t tag = in.u8();
    if (tag > 1) throw FormatError("unknown bit vector encoding");
    v.sparse_ = tag == 1;
    if (v.sparse_) {
        v.sparse_bits_ = EliasFano::load(in);
        v.size_ = v.sparse_bits_.size();
        v.ones_ = v.sparse_bits_.ones();
    } else {
        v.size_ = in.u64();
        auto words = in.words();
        if (words.size() != bits::words_for(v.size_)) throw FormatError("bit vector payload size mismatch");
        v.plain_ = PlainBits(std::move(words), v.size_);
        v.ones_ = v.plain_.ones();
    }
    return v;
}

// ---------------------------------------------------------------------------
// SparseDictionary

SparseDictionary::SparseDictionary(std::span<const uint64_t> members) {
    if (members.empty()) throw EmptyInput();
    universe_ = members.back();
    std::vector<uint64_t> positions(members.size());
    for (size_t k = 0; k < members.size(); ++k) {
        if (members[k] == 0) throw InvalidSymbol("dictionary members must be >= 1");
        positions[k] = members[k] - 1;
    }
    set_ = EliasFano(positions, universe_);
}

std::optional<uint64_t> SparseDictionary::index_of(uint64_t a) const {
    if (a < 1 || a > universe_) throw OutOfRange("value " + std::to_string(a) + " outside universe [1.." + std::to_string(universe_) + "]");
    const uint64_t r = set_.rank1(a);
    if (r == 0 || set_.select1(r) != a) return std::nullopt;
    return r;
}

uint64_t SparseDictionary::value_of(uint64_t i) const {
    if (i < 1 || i > size()) throw OutOfRange("dictionary index " + std::to_string(i) + " outside [1.." + std::to_string(size()) + "]");
    return set_.select1(i);
}

void SparseDictionary::serialize(Writer& out) const {
    out.u64(universe_);
    set_.serialize(out);
}

SparseDictionary SparseDictionary::load(Reader& in) {
    SparseDictionary d;
    d.universe_ = in.u64();
    d.set_ = EliasFano::load(in);
    if (d.set_.size() != d.universe_) throw FormatError("dictionary universe mismatch");
    return d;
}

}  // namespace apds
