#include "apds/cycle_index.hpp"

#include <string>
#include <vector>

#include "apds/error.hpp"

namespace apds {

CycleIndex::CycleIndex(std::span<const uint64_t> perm, uint64_t step) : n_(perm.size()), step_(step) {
    if (step_ == 0) throw ParameterError("power step must be positive");
    std::vector<bool> seen(n_ + 1, false);
    for (uint64_t v : perm) {
        if (v < 1 || v > n_ || seen[v]) throw InvalidPermutation("not a permutation of [1..n]");
        seen[v] = true;
    }
    seen.assign(n_ + 1, false);
    std::vector<uint64_t> cycle;
    std::vector<uint64_t> lengths, firsts, marks;
    std::vector<uint64_t> cyc_of(n_ + 1, 0), slot_of(n_ + 1, 0);
    BitBuilder mark_bits(n_);
    for (uint64_t x = 1; x <= n_; ++x) {
        if (seen[x]) continue;
        // x is the smallest element of its cycle
        cycle.clear();
        for (uint64_t y = x; !seen[y]; y = perm[y - 1]) {
            seen[y] = true;
            cycle.push_back(y);
        }
        if (cycle.size() < step_) continue;
        const uint64_t id = lengths.size();
        lengths.push_back(cycle.size());
        firsts.push_back(marks.size());
        for (uint64_t o = 0; o < cycle.size(); o += step_) {
            const uint64_t e = cycle[o];
            mark_bits.set(e - 1);
            cyc_of[e] = id;
            slot_of[e] = o / step_;
            marks.push_back(e);
        }
    }
    firsts.push_back(marks.size());
    marked_ = BitVector(mark_bits);
    std::vector<uint64_t> mc, ms;
    for (uint64_t x = 1; x <= n_; ++x) {
        if (!mark_bits.get(x - 1)) continue;
        mc.push_back(cyc_of[x]);
        ms.push_back(slot_of[x]);
    }
    mark_cycle_ = IntVector::from(mc);
    mark_slot_ = IntVector::from(ms);
    cycle_length_ = IntVector::from(lengths);
    cycle_first_ = IntVector::from(firsts);
    marks_ = IntVector::from(marks);
}

uint64_t CycleIndex::power(uint64_t i, int64_t k, const Apply& apply, uint64_t* applications) const {
    if (i < 1 || i > n_) throw OutOfRange("position " + std::to_string(i) + " outside [1.." + std::to_string(n_) + "]");
    uint64_t calls = 0;
    auto step = [&](uint64_t x) {
        ++calls;
        return apply(x);
    };
    auto walk = [&](uint64_t x, uint64_t steps) {
        for (uint64_t s = 0; s < steps; ++s) x = step(x);
        return x;
    };
    auto mod = [](int64_t a, uint64_t m) {
        const int64_t r = a % static_cast<int64_t>(m);
        return static_cast<uint64_t>(r < 0 ? r + static_cast<int64_t>(m) : r);
    };

    uint64_t result;
    uint64_t x = i;
    uint64_t dist = 0;
    for (;;) {
        if (marked_.access_unchecked(x)) break;
        x = step(x);
        ++dist;
        if (x == i) break;  // short cycle of length dist
    }
    if (!marked_.access_unchecked(x)) {
        result = walk(i, mod(k, dist));
    } else {
        const uint64_t r = marked_.rank1_unchecked(x) - 1;
        const uint64_t c = mark_cycle_.get(r);
        const uint64_t len = cycle_length_.get(c);
        const uint64_t first = cycle_first_.get(c);
        // offsets along the cycle, counted from its minimum
        const uint64_t here = (mark_slot_.get(r) * step_ + len - dist % len) % len;
        const uint64_t target = (here + mod(k, len)) % len;
        const uint64_t slot = target / step_;
        result = walk(marks_.get(first + slot), target - slot * step_);
    }
    if (applications) *applications += calls;
    return result;
}

uint64_t CycleIndex::size_in_bits() const {
    return marked_.size_in_bits() + mark_cycle_.size_in_bits() + mark_slot_.size_in_bits() + cycle_length_.size_in_bits() +
           cycle_first_.size_in_bits() + marks_.size_in_bits() + 2 * 64;
}

void CycleIndex::serialize(Writer& out) const {
    out.u64(n_);
    out.u64(step_);
    marked_.serialize(out);
    mark_cycle_.serialize(out);
    mark_slot_.serialize(out);
    cycle_length_.serialize(out);
    cycle_first_.serialize(out);
    marks_.serialize(out);
}

CycleIndex CycleIndex::load(Reader& in) {
    CycleIndex c;
    c.n_ = in.u64();
    c.step_ = in.u64();
    if (c.step_ == 0) throw FormatError("bad power step");
    c.marked_ = BitVector::load(in);
    c.mark_cycle_ = IntVector::load(in);
    c.mark_slot_ = IntVector::load(in);
    c.cycle_length_ = IntVector::load(in);
    c.cycle_first_ = IntVector::load(in);
    c.marks_ = IntVector::load(in);
    if (c.marked_.size() != c.n_ || c.mark_cycle_.size() != c.marked_.ones() || c.mark_slot_.size() != c.marked_.ones() ||
        c.cycle_first_.size() != c.cycle_length_.size() + 1 || c.marks_.size() != c.marked_.ones())
        throw FormatError("cycle index sections disagree");
    return c;
}

}  // namespace apds
