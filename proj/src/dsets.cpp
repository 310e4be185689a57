#include "apds/dsets.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "apds/error.hpp"
#include "apds/int_vector.hpp"

namespace apds {

namespace {

double size_lg(uint64_t s) { return s <= 1 ? 0.0 : static_cast<double>(s) * std::log2(static_cast<double>(s)); }

}  // namespace

DisjointSetCollection::DisjointSetCollection(uint64_t n, double epsilon) : n_(n), epsilon_(epsilon), sets_(n), sets_last_(n) {
    if (n == 0) throw ParameterError("n must be at least 1");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ParameterError("epsilon must be positive");
    std::vector<uint64_t> identity(n);
    for (uint64_t i = 0; i < n; ++i) identity[i] = i + 1;
    ApOptions ap;
    ap.variant = Variant::kFastAccess;
    ids_ = ApSequence(identity, ap);
    parent_.resize(n + 1);
    for (uint64_t i = 0; i <= n; ++i) parent_[i] = i;
    rank_.assign(n + 1, 0);
    count_.assign(n + 1, 1);
    rep_ = parent_;
    h_last_ = entropy();
}

double DisjointSetCollection::entropy() const {
    if (sets_ <= 1) return 0.0;
    const double n = static_cast<double>(n_);
    if (sets_ == n_) return std::log2(n);
    return std::max(0.0, std::log2(n) - sum_size_lg_ / n);
}

void DisjointSetCollection::check(uint64_t i) const {
    if (i < 1 || i > n_) throw OutOfRange("element " + std::to_string(i) + " outside [1.." + std::to_string(n_) + "]");
}

uint64_t DisjointSetCollection::root(uint64_t id) {
    uint64_t r = id;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[id] != r) id = std::exchange(parent_[id], r);
    return r;
}

uint64_t DisjointSetCollection::find(uint64_t i) {
    check(i);
    return rep_[root(ids_.access(i))];
}

uint64_t DisjointSetCollection::unite(uint64_t i, uint64_t j) {
    check(i);
    check(j);
    uint64_t a = root(ids_.access(i));
    uint64_t b = root(ids_.access(j));
    if (a != b) {
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        sum_size_lg_ += size_lg(count_[a] + count_[b]) - size_lg(count_[a]) - size_lg(count_[b]);
        count_[a] += count_[b];
        rep_[a] = std::min(rep_[a], rep_[b]);
        --sets_;
        ++unions_;
        maybe_rebuild();
    }
    return find(i);
}

bool DisjointSetCollection::maybe_rebuild() {
    if (sets_ == sets_last_) return false;
    const double h = entropy();
    const bool shrunk = h * (1.0 + epsilon_) <= h_last_ + 1e-12;
    if (!shrunk || (h < 1.0 && sets_ != 1)) return false;
    rebuild();
    return true;
}

void DisjointSetCollection::rebuild() {
    RebuildEvent e;
    e.unions = unions_;
    e.sets = sets_;
    e.entropy = entropy();
    e.ids_bits_before = ids_bits();
    e.payload_bits_before = payload_bits();

    // dense ids by first occurrence; the first element of a set is its smallest
    std::vector<uint64_t> fresh(parent_.size(), 0);
    std::vector<uint64_t> s(n_);
    std::vector<uint64_t> rep(1, 0), count(1, 0);
    for (uint64_t i = 1; i <= n_; ++i) {
        const uint64_t r = root(ids_.access(i));
        if (fresh[r] == 0) {
            fresh[r] = rep.size();
            rep.push_back(i);
            count.push_back(0);
        }
        s[i - 1] = fresh[r];
        ++count[fresh[r]];
    }
    ApOptions ap;
    ap.variant = Variant::kFastAccess;
    ids_ = ApSequence(s, ap);
    const uint64_t k = rep.size() - 1;
    parent_.resize(k + 1);
    for (uint64_t x = 0; x <= k; ++x) parent_[x] = x;
    rank_.assign(k + 1, 0);
    rep_ = std::move(rep);
    count_ = std::move(count);
    sum_size_lg_ = 0;
    for (uint64_t x = 1; x <= k; ++x) sum_size_lg_ += size_lg(count_[x]);
    sets_ = sets_last_ = k;
    h_last_ = entropy();

    e.ids_bits_after = ids_bits();
    e.payload_bits_after = payload_bits();
    trace_.push_back(e);
}

uint64_t DisjointSetCollection::ids_bits() const {
    Writer w;
    ids_.serialize(w);
    return w.size() * 8;
}

uint64_t DisjointSetCollection::payload_bits() const {
    Writer w;
    write_state(w);
    return w.size() * 8;
}

void DisjointSetCollection::write_state(Writer& out) const {
    ids_.serialize(out);
    IntVector::from(parent_).serialize(out);
    std::vector<uint64_t> rank(rank_.begin(), rank_.end());
    IntVector::from(rank).serialize(out);
    IntVector::from(count_).serialize(out);
    IntVector::from(rep_).serialize(out);
}

uint64_t DisjointSetCollection::size_in_bits() const {
    const uint64_t k = parent_.size();
    return ids_.size_in_bits() + k * (64 * 3 + 8) + 6 * 64 + trace_.size() * 7 * 64;
}

void DisjointSetCollection::serialize(Writer& out) const {
    out.u64(n_);
    out.f64(epsilon_);
    out.u64(sets_);
    out.u64(sets_last_);
    out.f64(h_last_);
    out.u64(unions_);
    write_state(out);
    out.u64(trace_.size());
    for (const RebuildEvent& e : trace_) {
        out.u64(e.unions);
        out.u64(e.sets);
        out.f64(e.entropy);
        out.u64(e.ids_bits_before);
        out.u64(e.ids_bits_after);
        out.u64(e.payload_bits_before);
        out.u64(e.payload_bits_after);
    }
}

DisjointSetCollection DisjointSetCollection::load(Reader& in) {
    DisjointSetCollection c;
    c.n_ = in.u64();
    c.epsilon_ = in.f64();
    c.sets_ = in.u64();
    c.sets_last_ = in.u64();
    c.h_last_ = in.f64();
    c.unions_ = in.u64();
    c.ids_ = ApSequence::load(in);
    auto vec = [&] {
        const IntVector v = IntVector::load(in);
        std::vector<uint64_t> out(v.size());
        for (uint64_t i = 0; i < v.size(); ++i) out[i] = v.get(i);
        return out;
    };
    c.parent_ = vec();
    const auto rank = vec();
    c.rank_.assign(rank.begin(), rank.end());
    c.count_ = vec();
    c.rep_ = vec();
    const uint64_t k = c.parent_.size();
    if (c.n_ == 0 || !(c.epsilon_ > 0.0) || c.ids_.size() != c.n_ || k != c.ids_.alphabet_size() + 1 || c.rank_.size() != k ||
        c.count_.size() != k || c.rep_.size() != k)
        throw FormatError("disjoint-set sections disagree");
    uint64_t roots = 0;
    for (uint64_t x = 1; x < k; ++x) {
        if (c.parent_[x] == 0 || c.parent_[x] >= k) throw FormatError("bad union-find parent");
        if (c.parent_[x] == x) {
            ++roots;
            c.sum_size_lg_ += size_lg(c.count_[x]);
        }
    }
    if (roots != c.sets_) throw FormatError("disjoint-set count disagrees");
    const uint64_t events = in.u64();
    if (events > in.remaining()) throw FormatError("bad rebuild trace length");
    for (uint64_t i = 0; i < events; ++i) {
        RebuildEvent e;
        e.unions = in.u64();
        e.sets = in.u64();
        e.entropy = in.f64();
        e.ids_bits_before = in.u64();
        e.ids_bits_after = in.u64();
        e.payload_bits_before = in.u64();
        e.payload_bits_after = in.u64();
        c.trace_.push_back(e);
    }
    return c;
}

}  // namespace apds
