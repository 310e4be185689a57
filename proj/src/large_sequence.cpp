#include "apds/large_sequence.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "apds/error.hpp"

namespace apds {

LargeSequence::LargeSequence(std::span<const uint64_t> seq, uint64_t sigma, Variant variant)
    : n_(seq.size()), sigma_(sigma), variant_(variant) {
    if (seq.empty()) throw EmptyInput();
    if (sigma_ == 0) throw ParameterError("alphabet size must be positive");
    for (uint64_t a : seq)
        if (a < 1 || a > sigma_) throw InvalidSymbol("symbol " + std::to_string(a) + " outside [1.." + std::to_string(sigma_) + "]");

    chunks_ = (n_ + sigma_ - 1) / sigma_;
    step_ = std::max<unsigned>(1, bits::ceil_log2(sigma_));

    // global stable bucket order by symbol, used for the distribution bits
    std::vector<uint64_t> start(sigma_ + 2, 0);
    for (uint64_t a : seq) ++start[a + 1];
    for (uint64_t a = 1; a <= sigma_ + 1; ++a) start[a] += start[a - 1];
    std::vector<uint64_t> by_symbol(n_);
    {
        std::vector<uint64_t> fill(start.begin(), start.end() - 1);
        for (uint64_t i = 0; i < n_; ++i) by_symbol[fill[seq[i]]++] = i;
    }

    BitBuilder dist;
    for (uint64_t a = 1; a <= sigma_; ++a) {
        uint64_t k = start[a];
        const uint64_t end = start[a + 1];
        for (uint64_t c = 0; c < chunks_; ++c) {
            const uint64_t limit = (c + 1) * sigma_;
            while (k < end && by_symbol[k] < limit) {
                dist.push_back(false);
                ++k;
            }
            dist.push_back(true);
        }
    }
    distribution_ = BitVector(dist);

    BitBuilder hist;
    perm_ = IntVector(n_, bits::width_for(sigma_ - 1));
    std::vector<uint64_t> counts(sigma_ + 1, 0);
    std::vector<uint64_t> offset(sigma_ + 1, 0);
    for (uint64_t c = 0; c < chunks_; ++c) {
        const uint64_t base = c * sigma_;
        const uint64_t len = chunk_length(c);
        std::fill(counts.begin(), counts.end(), 0);
        for (uint64_t p = 0; p < len; ++p) ++counts[seq[base + p]];
        uint64_t running = 0;
        for (uint64_t a = 1; a <= sigma_; ++a) {
            hist.append(false, counts[a]);
            hist.push_back(true);
            offset[a] = running;
            running += counts[a];
        }
        for (uint64_t p = 0; p < len; ++p) {
            const uint64_t k = offset[seq[base + p]]++;
            if (variant_ == Variant::kFastSelect)
                perm_.set(base + k, p);
            else
                perm_.set(base + p, k);
        }
    }
    histogram_ = BitVector(hist);
    build_shortcuts();
}

// Marks every step_-th element of each cycle of length >= step_, starting from
// the cycle minimum, and records for each mark the element step_ positions
// earlier on its cycle.
void LargeSequence::build_shortcuts() {
    BitBuilder marks(n_);
    std::vector<std::pair<uint64_t, uint64_t>> backs;
    std::vector<bool> seen;
    std::vector<uint64_t> cycle;
    for (uint64_t c = 0; c < chunks_; ++c) {
        const uint64_t base = c * sigma_;
        const uint64_t len = chunk_length(c);
        seen.assign(len, false);
        for (uint64_t x = 0; x < len; ++x) {
            if (seen[x]) continue;
            cycle.clear();
            for (uint64_t y = x; !seen[y]; y = perm_.get(base + y)) {
                seen[y] = true;
                cycle.push_back(y);
            }
            const uint64_t L = cycle.size();
            if (L < step_) continue;
            for (uint64_t o = 0; o < L; o += step_) {
                marks.set(base + cycle[o]);
                backs.emplace_back(base + cycle[o], cycle[(o + L - step_ % L) % L]);
            }
        }
    }
    std::sort(backs.begin(), backs.end());
    back_ = IntVector(backs.size(), bits::width_for(sigma_ - 1));
    for (uint64_t k = 0; k < backs.size(); ++k) back_.set(k, backs[k].second);
    marked_ = BitVector(marks);
}

uint64_t LargeSequence::stored_inverse(uint64_t chunk, uint64_t y) const {
    const uint64_t base = chunk * sigma_;
    uint64_t z = y;
    bool jumped = false;
    for (;;) {
        const uint64_t next = perm_.get(base + z);
        if (next == y) return z;
        if (!jumped && marked_.access_unchecked(base + z + 1)) {
            z = back_.get(marked_.rank1_unchecked(base + z + 1) - 1);
            jumped = true;
            continue;
        }
        z = next;
    }
}

uint64_t LargeSequence::symbols_below(uint64_t c, uint64_t a) const {
    return zeros_before_one(histogram_, c * sigma_ + a - 1) - c * sigma_;
}

uint64_t LargeSequence::symbol_of_sorted(uint64_t c, uint64_t k) const {
    const uint64_t g = c * sigma_ + k + 1;
    const uint64_t pos = histogram_.select0_unchecked(g);
    return pos - g - c * sigma_ + 1;
}

uint64_t LargeSequence::sorted_to_position(uint64_t c, uint64_t k) const {
    return variant_ == Variant::kFastSelect ? perm_.get(c * sigma_ + k) : stored_inverse(c, k);
}

uint64_t LargeSequence::access(uint64_t i) const {
    if (i < 1 || i > n_) throw OutOfRange("position " + std::to_string(i) + " outside [1.." + std::to_string(n_) + "]");
    const uint64_t c = (i - 1) / sigma_;
    const uint64_t p = (i - 1) % sigma_;
    const uint64_t k = variant_ == Variant::kFastAccess ? perm_.get(c * sigma_ + p) : stored_inverse(c, p);
    return symbol_of_sorted(c, k);
}

uint64_t LargeSequence::count(uint64_t a) const {
    if (a < 1 || a > sigma_) throw OutOfRange("symbol " + std::to_string(a) + " outside [1.." + std::to_string(sigma_) + "]");
    const uint64_t q = (a - 1) * chunks_;
    return zeros_before_one(distribution_, q + chunks_) - zeros_before_one(distribution_, q);
}

uint64_t LargeSequence::rank(uint64_t a, uint64_t i) const {
    if (a < 1 || a > sigma_) throw OutOfRange("symbol " + std::to_string(a) + " outside [1.." + std::to_string(sigma_) + "]");
    if (i > n_) throw OutOfRange("rank position " + std::to_string(i) + " exceeds length " + std::to_string(n_));
    if (i == 0) return 0;
    const uint64_t c = (i - 1) / sigma_;
    const uint64_t p = (i - 1) % sigma_;
    const uint64_t q = (a - 1) * chunks_;
    const uint64_t before = zeros_before_one(distribution_, q + c) - zeros_before_one(distribution_, q);

    // occurrences of a in the chunk occupy sorted ranks [lo, hi) in position order
    uint64_t lo = symbols_below(c, a);
    uint64_t hi = symbols_below(c, a + 1);
    while (lo < hi) {
        const uint64_t mid = lo + (hi - lo) / 2;
        if (sorted_to_position(c, mid) <= p)
            lo = mid + 1;
        else
            hi = mid;
    }
    return before + (lo - symbols_below(c, a));
}

uint64_t LargeSequence::select(uint64_t a, uint64_t j) const {
    if (a < 1 || a > sigma_) throw OutOfRange("symbol " + std::to_string(a) + " outside [1.." + std::to_string(sigma_) + "]");
    const uint64_t q = (a - 1) * chunks_;
    const uint64_t first = zeros_before_one(distribution_, q);
    const uint64_t occ = zeros_before_one(distribution_, q + chunks_) - first;
    if (j < 1 || j > occ) throw NotFound("select: symbol " + std::to_string(a) + " has no occurrence " + std::to_string(j));
    const uint64_t g = first + j;
    const uint64_t pos = distribution_.select0_unchecked(g);
    const uint64_t c = (pos - g) - q;
    const uint64_t within = j - (zeros_before_one(distribution_, q + c) - first);
    const uint64_t k = symbols_below(c, a) + within - 1;
    return c * sigma_ + sorted_to_position(c, k) + 1;
}

uint64_t LargeSequence::size_in_bits() const {
    return histogram_.size_in_bits() + distribution_.size_in_bits() + perm_.size_in_bits() + marked_.size_in_bits() +
           back_.size_in_bits() + 5 * 64;
}

void LargeSequence::serialize(Writer& out) const {
    out.u64(n_);
    out.u64(sigma_);
    out.u64(step_);
    out.u8(static_cast<uint8_t>(variant_));
    histogram_.serialize(out);
    distribution_.serialize(out);
    perm_.serialize(out);
    marked_.serialize(out);
    back_.serialize(out);
}

LargeSequence LargeSequence::load(Reader& in) {
    LargeSequence q;
    q.n_ = in.u64();
    q.sigma_ = in.u64();
    q.step_ = in.u64();
    const uint8_t v = in.u8();
    if (v > 1 || q.sigma_ == 0 || q.n_ == 0 || q.step_ == 0) throw FormatError("bad large-alphabet sequence header");
    q.variant_ = static_cast<Variant>(v);
    q.chunks_ = (q.n_ + q.sigma_ - 1) / q.sigma_;
    q.histogram_ = BitVector::load(in);
    q.distribution_ = BitVector::load(in);
    q.perm_ = IntVector::load(in);
    q.marked_ = BitVector::load(in);
    q.back_ = IntVector::load(in);
    if (q.histogram_.zeros() != q.n_ || q.histogram_.ones() != q.sigma_ * q.chunks_ || q.distribution_.zeros() != q.n_ ||
        q.distribution_.ones() != q.sigma_ * q.chunks_ || q.perm_.size() != q.n_ || q.marked_.size() != q.n_ ||
        q.back_.size() != q.marked_.ones())
        throw FormatError("large-alphabet sequence sections disagree");
    return q;
}

}  // namespace apds
