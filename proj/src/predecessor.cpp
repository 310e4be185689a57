#include "apds/predecessor.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "apds/error.hpp"

namespace apds {

namespace {

constexpr uint64_t kMaxBranch = uint64_t{1} << 16;

std::pair<uint64_t, unsigned> shape(uint64_t universe, double epsilon) {
    uint64_t b = static_cast<uint64_t>(std::ceil(std::pow(static_cast<double>(universe), epsilon)));
    b = std::clamp<uint64_t>(b, 2, kMaxBranch);
    // smallest d with b^d >= universe
    unsigned d = 1;
    for (uint64_t span = b; span < universe; ++d) {
        if (span > UINT64_MAX / b) {
            ++d;
            break;
        }
        span *= b;
    }
    return {b, d};
}

}  // namespace

PredecessorTrie::PredecessorTrie(std::span<const uint64_t> keys, uint64_t universe, double epsilon,
                                 std::span<const uint64_t> aux)
    : universe_(universe), epsilon_(epsilon) {
    if (!(epsilon > 0.0) || epsilon > 1.0) throw ParameterError("epsilon must be in (0, 1]");
    if (universe == 0) throw ParameterError("universe must be positive");
    if (!aux.empty() && aux.size() != keys.size()) throw ParameterError("aux size must match key count");
    for (size_t k = 0; k < keys.size(); ++k) {
        if (keys[k] < 1 || keys[k] > universe) throw OutOfRange("key " + std::to_string(keys[k]) + " outside universe");
        if (k > 0 && keys[k] <= keys[k - 1]) throw InvalidInput("predecessor keys must be strictly increasing");
    }
    std::tie(branch_, depth_) = shape(universe_, epsilon_);
    keys_ = IntVector(keys.size(), bits::width_for(universe_));
    for (size_t k = 0; k < keys.size(); ++k) keys_.set(k, keys[k]);
    if (aux.empty()) {
        aux_ = IntVector(keys.size(), bits::width_for(keys.size()));
        for (size_t k = 0; k < keys.size(); ++k) aux_.set(k, k + 1);
    } else {
        aux_ = IntVector::from(aux);
    }
    build_levels();
}

uint64_t PredecessorTrie::digit(uint64_t y, unsigned level) const {
    for (unsigned l = level + 1; l < depth_; ++l) y /= branch_;
    return y % branch_;
}

void PredecessorTrie::build_levels() {
    const uint64_t n = keys_.size();
    if (n == 0) {
        internal_ = 0;
        bitmap_ = BitVector();
        return;
    }
    // node = range of sorted keys sharing a digit prefix
    std::vector<std::pair<uint64_t, uint64_t>> level{{0, n}}, next;
    std::vector<uint64_t> set_bits;  // 0-based positions in the bitmap
    uint64_t node_id = 0;
    for (unsigned l = 0; l < depth_; ++l) {
        next.clear();
        for (const auto& [lo, hi] : level) {
            uint64_t k = lo;
            while (k < hi) {
                const uint64_t d = digit(keys_.get(k) - 1, l);
                uint64_t e = k + 1;
                while (e < hi && digit(keys_.get(e) - 1, l) == d) ++e;
                set_bits.push_back(node_id * branch_ + d);
                next.emplace_back(k, e);
                k = e;
            }
            ++node_id;
        }
        std::swap(level, next);
    }
    internal_ = node_id;
    BitBuilder b(internal_ * branch_);
    for (uint64_t p : set_bits) b.set(p);
    bitmap_ = BitVector(b);
}

uint64_t PredecessorTrie::rightmost_leaf(uint64_t node, unsigned level) const {
    for (; level < depth_; ++level) node = bitmap_.rank1_unchecked((node + 1) * branch_);
    return node - internal_ + 1;
}

std::optional<PredecessorTrie::Hit> PredecessorTrie::query(uint64_t x) const {
    if (keys_.size() == 0 || x < 1) return std::nullopt;
    const uint64_t y = std::min(x, universe_) - 1;
    uint64_t node = 0;
    bool have_candidate = false;
    uint64_t cand_node = 0;
    unsigned cand_level = 0;
    unsigned l = 0;
    for (; l < depth_; ++l) {
        const uint64_t base = node * branch_;
        const uint64_t c = digit(y, l);
        const uint64_t before = bitmap_.rank1_unchecked(base + c);
        if (before > bitmap_.rank1_unchecked(base)) {
            // deepest subtree holding keys smaller than y on this path
            have_candidate = true;
            cand_node = before;
            cand_level = l + 1;
        }
        if (!bitmap_.access_unchecked(base + c + 1)) break;
        node = before + 1;
    }
    uint64_t rank;
    if (l == depth_) {
        rank = node - internal_ + 1;
    } else {
        if (!have_candidate) return std::nullopt;
        rank = rightmost_leaf(cand_node, cand_level);
    }
    return Hit{keys_.get(rank - 1), aux_.get(rank - 1)};
}

uint64_t PredecessorTrie::size_in_bits() const {
    return keys_.size_in_bits() + aux_.size_in_bits() + bitmap_.size_in_bits() + 4 * 64;
}

void PredecessorTrie::serialize(Writer& out) const {
    out.u64(universe_);
    out.f64(epsilon_);
    keys_.serialize(out);
    aux_.serialize(out);
    bitmap_.serialize(out);
}

PredecessorTrie PredecessorTrie::load(Reader& in) {
    PredecessorTrie p;
    p.universe_ = in.u64();
    p.epsilon_ = in.f64();
    if (p.universe_ == 0 || !(p.epsilon_ > 0.0) || p.epsilon_ > 1.0) throw FormatError("bad predecessor header");
    std::tie(p.branch_, p.depth_) = shape(p.universe_, p.epsilon_);
    p.keys_ = IntVector::load(in);
    p.aux_ = IntVector::load(in);
    p.bitmap_ = BitVector::load(in);
    if (p.aux_.size() != p.keys_.size() || p.bitmap_.size() % p.branch_ != 0) throw FormatError("predecessor sections disagree");
    p.internal_ = p.bitmap_.size() / p.branch_;
    if (p.keys_.size() > 0 && p.bitmap_.ones() != p.internal_ - 1 + p.keys_.size()) throw FormatError("predecessor bitmap corrupt");
    return p;
}

}  // namespace apds
