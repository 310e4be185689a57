#include "apds/poly_sequence.hpp"

#include <algorithm>
#include <queue>
#include <string>
#include <tuple>

#include "apds/error.hpp"

namespace apds {

PolySequence::PolySequence(std::span<const uint64_t> seq) : n_(seq.size()) {
    if (seq.empty()) throw EmptyInput();
    uint64_t max_symbol = 0;
    for (uint64_t a : seq) {
        if (a > kMaxSymbol) throw InvalidSymbol("symbol " + std::to_string(a) + " too large for a small-alphabet sequence");
        max_symbol = std::max(max_symbol, a);
    }
    std::vector<uint64_t> counts(max_symbol + 1, 0);
    for (uint64_t a : seq) ++counts[a];

    std::vector<uint64_t> symbols;
    for (uint64_t a = 0; a <= max_symbol; ++a)
        if (counts[a]) symbols.push_back(a);
    sigma_ = symbols.size();

    if (sigma_ == 1) {
        only_symbol_ = symbols[0];
        index_tree();
        return;
    }

    // Huffman merge; ties broken by creation order so the shape is deterministic.
    using Item = std::tuple<uint64_t, uint64_t, int64_t>;  // weight, order, handle
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    uint64_t order = 0;
    for (uint64_t a : symbols) heap.emplace(counts[a], order++, -static_cast<int64_t>(a) - 1);
    while (heap.size() > 1) {
        auto [w0, o0, h0] = heap.top();
        heap.pop();
        auto [w1, o1, h1] = heap.top();
        heap.pop();
        Node node;
        node.child[0] = h0;
        node.child[1] = h1;
        nodes_.push_back(std::move(node));
        heap.emplace(w0 + w1, order++, static_cast<int64_t>(nodes_.size() - 1));
    }
    root_ = static_cast<int64_t>(nodes_.size() - 1);
    index_tree();

    std::vector<BitBuilder> builders(nodes_.size());
    for (uint64_t a : seq) {
        const Leaf& leaf = leaves_[a];
        int64_t node = root_;
        for (unsigned d = 0; d < leaf.length; ++d) {
            const bool bit = (leaf.code >> d) & 1u;
            builders[node].push_back(bit);
            node = nodes_[node].child[bit];
        }
    }
    for (size_t k = 0; k < nodes_.size(); ++k) nodes_[k].bits = BitVector(builders[k]);
}

void PolySequence::index_tree() {
    parent_.assign(nodes_.size(), -1);
    uint64_t max_symbol = only_symbol_;
    for (const Node& node : nodes_)
        for (int64_t c : node.child)
            if (c < 0) max_symbol = std::max<uint64_t>(max_symbol, static_cast<uint64_t>(-(c + 1)));
    leaves_.assign(max_symbol + 1, Leaf{});

    if (sigma_ == 1) {
        leaves_[only_symbol_].present = true;
        return;
    }
    // iterative DFS carrying the code prefix
    struct Frame {
        int64_t node;
        uint64_t code;
        unsigned depth;
    };
    std::vector<Frame> stack{{root_, 0, 0}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.depth >= 64) throw InvalidInput("Huffman code longer than 64 bits");
        for (int b = 0; b < 2; ++b) {
            const int64_t c = nodes_[f.node].child[b];
            const uint64_t code = f.code | (static_cast<uint64_t>(b) << f.depth);
            if (c >= 0) {
                parent_[c] = f.node;
                stack.push_back({c, code, f.depth + 1});
            } else {
                Leaf& leaf = leaves_[static_cast<uint64_t>(-(c + 1))];
                leaf.code = code;
                leaf.length = static_cast<uint8_t>(f.depth + 1);
                leaf.present = true;
                leaf.parent = f.node;
            }
        }
    }
}

void PolySequence::check_position(uint64_t i) const {
    if (i < 1 || i > n_) throw OutOfRange("position " + std::to_string(i) + " outside [1.." + std::to_string(n_) + "]");
}

uint64_t PolySequence::access(uint64_t i) const { return access_rank(i).first; }

std::pair<uint64_t, uint64_t> PolySequence::access_rank(uint64_t i) const {
    check_position(i);
    if (sigma_ == 1) return {only_symbol_, i};
    int64_t node = root_;
    uint64_t pos = i;
    for (;;) {
        const auto [bit, r1] = nodes_[node].bits.access_rank1_unchecked(pos);
        pos = bit ? r1 : pos - r1;
        const int64_t c = nodes_[node].child[bit];
        if (c < 0) return {static_cast<uint64_t>(-(c + 1)), pos};
        node = c;
    }
}

uint64_t PolySequence::rank(uint64_t a, uint64_t i) const {
    if (i > n_) throw OutOfRange("rank position " + std::to_string(i) + " exceeds length " + std::to_string(n_));
    if (!contains(a)) return 0;
    if (sigma_ == 1) return i;
    const Leaf& leaf = leaves_[a];
    int64_t node = root_;
    uint64_t pos = i;
    for (unsigned d = 0; d < leaf.length && pos > 0; ++d) {
        const bool bit = (leaf.code >> d) & 1u;
        const uint64_t r1 = nodes_[node].bits.rank1_unchecked(pos);
        pos = bit ? r1 : pos - r1;
        node = nodes_[node].child[bit];
    }
    return pos;
}

uint64_t PolySequence::select(uint64_t a, uint64_t j) const {
    if (!contains(a) || j < 1) throw NotFound("select: symbol " + std::to_string(a) + " has no occurrence " + std::to_string(j));
    if (sigma_ == 1) {
        if (j > n_) throw NotFound("select: symbol " + std::to_string(a) + " has no occurrence " + std::to_string(j));
        return j;
    }
    const Leaf& leaf = leaves_[a];
    int64_t node = leaf.parent;
    int d = leaf.length - 1;
    bool bit = (leaf.code >> d) & 1u;
    const BitVector& first = nodes_[node].bits;
    const uint64_t avail = bit ? first.ones() : first.zeros();
    if (j > avail) throw NotFound("select: symbol " + std::to_string(a) + " has no occurrence " + std::to_string(j));
    uint64_t pos = j;
    for (;;) {
        const BitVector& bv = nodes_[node].bits;
        pos = bit ? bv.select1_unchecked(pos) : bv.select0_unchecked(pos);
        if (--d < 0) return pos;
        node = parent_[node];
        bit = (leaf.code >> d) & 1u;
    }
}

unsigned PolySequence::code_length(uint64_t a) const {
    if (!contains(a)) throw NotFound("symbol " + std::to_string(a) + " not in sequence");
    return leaves_[a].length;
}

uint64_t PolySequence::size_in_bits() const {
    uint64_t total = 4 * 64;
    for (const Node& node : nodes_) total += node.bits.size_in_bits() + 2 * 64;
    return total;
}

void PolySequence::serialize(Writer& out) const {
    out.u64(n_);
    out.u64(sigma_);
    out.u64(only_symbol_);
    out.u64(nodes_.size());
    for (const Node& node : nodes_) {
        out.u64(static_cast<uint64_t>(node.child[0]));
        out.u64(static_cast<uint64_t>(node.child[1]));
        node.bits.serialize(out);
    }
}

PolySequence PolySequence::load(Reader& in) {
    PolySequence q;
    q.n_ = in.u64();
    q.sigma_ = in.u64();
    q.only_symbol_ = in.u64();
    const uint64_t count = in.u64();
    if (q.sigma_ == 0 || (q.sigma_ == 1) != (count == 0) || (count > 0 && count != q.sigma_ - 1))
        throw FormatError("inconsistent wavelet tree header");
    if (q.only_symbol_ > kMaxSymbol) throw FormatError("symbol out of range");
    q.nodes_.resize(count);
    for (uint64_t k = 0; k < count; ++k) {
        auto& node = q.nodes_[k];
        for (auto& c : node.child) {
            c = static_cast<int64_t>(in.u64());
            // children are always created before their parent
            if (c >= static_cast<int64_t>(k) || (c < 0 && static_cast<uint64_t>(-(c + 1)) > kMaxSymbol))
                throw FormatError("bad wavelet tree topology");
        }
        node.bits = BitVector::load(in);
    }
    q.root_ = static_cast<int64_t>(count) - 1;
    q.index_tree();
    return q;
}

}  // namespace apds
