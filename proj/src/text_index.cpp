#include "apds/text_index.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "apds/bits.hpp"
#include "apds/error.hpp"

namespace apds {

namespace {

std::vector<uint64_t> sorted_alphabet(std::span<const uint64_t> seq) {
    std::vector<uint64_t> a(seq.begin(), seq.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

// 1-based index of a in the sorted alphabet, 0 if absent
uint64_t alphabet_index(const IntVector& alphabet, uint64_t a) {
    uint64_t lo = 0, hi = alphabet.size();
    while (lo < hi) {
        const uint64_t mid = (lo + hi) / 2;
        if (alphabet.get(mid) < a)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo < alphabet.size() && alphabet.get(lo) == a ? lo + 1 : 0;
}

void check_position(uint64_t i, uint64_t n) {
    if (i < 1 || i > n) throw OutOfRange("position " + std::to_string(i) + " outside [1.." + std::to_string(n) + "]");
}

}  // namespace

uint64_t default_block_length(uint64_t n, uint64_t sigma) {
    if (n < 2) return 1;
    const double s = static_cast<double>(std::max<uint64_t>(sigma, 2));
    const double b = std::floor(std::log(static_cast<double>(n)) / std::log(s) / 2.0 + 1e-12);
    return std::max<uint64_t>(1, static_cast<uint64_t>(b));
}

BlockStore::BlockStore(std::span<const uint64_t> seq, uint64_t block_length) : n_(seq.size()) {
    if (seq.empty()) throw EmptyInput();
    const auto alpha = sorted_alphabet(seq);
    alphabet_ = IntVector::from(alpha);
    const uint64_t sigma = alpha.size();
    b_ = block_length == 0 ? default_block_length(n_, sigma) : block_length;
    const uint64_t nb = (n_ + b_ - 1) / b_;

    std::vector<uint64_t> c(n_);
    for (uint64_t i = 0; i < n_; ++i) c[i] = std::lower_bound(alpha.begin(), alpha.end(), seq[i]) - alpha.begin() + 1;

    std::map<std::vector<uint64_t>, uint64_t> ids;
    std::vector<uint64_t> block_ids(nb), entries, lengths;
    std::vector<std::vector<std::pair<uint64_t, uint64_t>>> rows(sigma + 1);  // (block, count)
    std::vector<uint64_t> tally(sigma + 1, 0);
    for (uint64_t j = 0; j < nb; ++j) {
        const uint64_t lo = j * b_, hi = std::min(n_, lo + b_);
        std::vector<uint64_t> content(c.begin() + lo, c.begin() + hi);
        auto [it, fresh] = ids.try_emplace(content, lengths.size() + 1);
        if (fresh) {
            lengths.push_back(content.size());
            content.resize(b_, 0);
            entries.insert(entries.end(), content.begin(), content.end());
        }
        block_ids[j] = it->second;
        for (uint64_t i = lo; i < hi; ++i) ++tally[c[i]];
        for (uint64_t i = lo; i < hi; ++i) {
            if (tally[c[i]] == 0) continue;
            rows[c[i]].emplace_back(j + 1, tally[c[i]]);
            tally[c[i]] = 0;
        }
    }
    ApOptions ap;
    ap.variant = Variant::kFastAccess;
    blocks_ = ApSequence(block_ids, ap);
    IntVector dict(entries.size(), bits::width_for(sigma));
    for (uint64_t k = 0; k < entries.size(); ++k) dict.set(k, entries[k]);
    dict_ = std::move(dict);
    dict_len_ = IntVector::from(lengths);

    // R is sparse for large alphabets: built from its one positions
    std::vector<uint64_t> r;
    BitBuilder p;
    for (uint64_t a = 1; a <= sigma; ++a) {
        std::sort(rows[a].begin(), rows[a].end());
        for (const auto& [j, x] : rows[a]) {
            r.push_back((a - 1) * nb + j - 1);
            p.append(true, x);
            p.push_back(false);
        }
    }
    r_ = BitVector::from_positions(r, sigma * nb);
    p_ = BitVector(p, BitEncoding::kPlain);
}

uint64_t BlockStore::internal(uint64_t a) const { return alphabet_index(alphabet_, a); }

uint64_t BlockStore::entry_symbol(uint64_t id, uint64_t offset) const { return dict_.get((id - 1) * b_ + offset); }

uint64_t BlockStore::blocks_with(uint64_t c, uint64_t j) const {
    const uint64_t base = (c - 1) * blocks_.size();
    return r_.rank1_unchecked(base + j) - r_.rank1_unchecked(base);
}

uint64_t BlockStore::row_total(uint64_t c, uint64_t k) const {
    auto ones_through = [&](uint64_t g) { return g == 0 ? 0 : p_.select0_unchecked(g) - g; };
    const uint64_t g0 = r_.rank1_unchecked((c - 1) * blocks_.size());
    return ones_through(g0 + k) - ones_through(g0);
}

uint64_t BlockStore::access(uint64_t i) const {
    check_position(i, n_);
    const uint64_t j = (i - 1) / b_;
    return alphabet_.get(entry_symbol(blocks_.access(j + 1), i - 1 - j * b_) - 1);
}

uint64_t BlockStore::rank(uint64_t a, uint64_t i) const {
    if (i > n_) throw OutOfRange("rank position " + std::to_string(i) + " exceeds length " + std::to_string(n_));
    const uint64_t c = internal(a);
    if (c == 0 || i == 0) return 0;
    const uint64_t jb = (i + b_ - 1) / b_;  // block holding position i
    uint64_t r = row_total(c, blocks_with(c, jb - 1));
    const uint64_t id = blocks_.access(jb);
    const uint64_t prefix = i - (jb - 1) * b_;
    for (uint64_t o = 0; o < prefix; ++o) r += entry_symbol(id, o) == c;
    return r;
}

uint64_t BlockStore::select(uint64_t a, uint64_t j) const {
    const uint64_t c = internal(a);
    const uint64_t total = c == 0 ? 0 : row_total(c, blocks_with(c, blocks_.size()));
    if (j < 1 || j > total)
        throw NotFound("symbol " + std::to_string(a) + " occurs " + std::to_string(total) + " times, asked for #" + std::to_string(j));
    const uint64_t base = (c - 1) * blocks_.size();
    const uint64_t g0 = r_.rank1_unchecked(base);
    const uint64_t c0 = g0 == 0 ? 0 : p_.select0_unchecked(g0) - g0;
    const uint64_t pos = p_.select1_unchecked(c0 + j);
    const uint64_t g = pos - (c0 + j);  // pairs completed before this one
    const uint64_t prior = (g == 0 ? 0 : p_.select0_unchecked(g) - g) - c0;
    const uint64_t block = r_.select1_unchecked(g + 1) - base;
    const uint64_t id = blocks_.access(block);
    uint64_t want = j - prior;
    for (uint64_t o = 0;; ++o)
        if (entry_symbol(id, o) == c && --want == 0) return (block - 1) * b_ + o + 1;
}

std::vector<SpaceSection> BlockStore::sections() const {
    return {{"alphabet", alphabet_.size_in_bits()},
            {"s' (blocks)", blocks_.size_in_bits()},
            {"B (dictionary)", dict_.size_in_bits() + dict_len_.size_in_bits()},
            {"R", r_.size_in_bits()},
            {"P", p_.size_in_bits()}};
}

uint64_t BlockStore::size_in_bits() const {
    uint64_t bits = 2 * 64;
    for (const SpaceSection& s : sections()) bits += s.bits;
    return bits;
}

void BlockStore::serialize(Writer& out) const {
    out.u64(n_);
    out.u64(b_);
    alphabet_.serialize(out);
    blocks_.serialize(out);
    dict_.serialize(out);
    dict_len_.serialize(out);
    r_.serialize(out);
    p_.serialize(out);
}

BlockStore BlockStore::load(Reader& in) {
    BlockStore s;
    s.n_ = in.u64();
    s.b_ = in.u64();
    s.alphabet_ = IntVector::load(in);
    s.blocks_ = ApSequence::load(in);
    s.dict_ = IntVector::load(in);
    s.dict_len_ = IntVector::load(in);
    s.r_ = BitVector::load(in);
    s.p_ = BitVector::load(in);
    const uint64_t nb = s.b_ == 0 ? 0 : (s.n_ + s.b_ - 1) / s.b_;
    if (s.b_ == 0 || s.n_ == 0 || s.blocks_.size() != nb || s.dict_len_.size() != s.blocks_.alphabet_size() ||
        s.dict_.size() != s.dict_len_.size() * s.b_ || s.r_.size() != s.alphabet_.size() * nb || s.p_.ones() != s.n_ ||
        s.p_.zeros() != s.r_.ones())
        throw FormatError("block store sections disagree");
    return s;
}

std::vector<uint64_t> suffix_array(std::span<const uint64_t> seq) {
    const uint64_t n = seq.size() + 1;
    const auto alpha = sorted_alphabet(seq);
    std::vector<uint64_t> rank(n), sa(n), tmp(n), order, cnt;
    for (uint64_t i = 0; i + 1 < n; ++i) rank[i] = std::lower_bound(alpha.begin(), alpha.end(), seq[i]) - alpha.begin() + 1;
    rank[n - 1] = 0;
    uint64_t classes = alpha.size() + 1;
    // stable counting sort of `in` by rank[]
    auto counting = [&](const std::vector<uint64_t>& in) {
        cnt.assign(classes + 1, 0);
        for (uint64_t x : in) ++cnt[rank[x] + 1];
        for (uint64_t c = 1; c <= classes; ++c) cnt[c] += cnt[c - 1];
        for (uint64_t x : in) sa[cnt[rank[x]]++] = x;
    };
    order.resize(n);
    for (uint64_t i = 0; i < n; ++i) order[i] = i;
    counting(order);
    // prefix doubling: sort by (rank[i], rank[i + k]), a missing second key first
    for (uint64_t k = 1; classes < n; k *= 2) {
        order.clear();
        for (uint64_t i = n - std::min(n, k); i < n; ++i) order.push_back(i);
        for (uint64_t x : sa)
            if (x >= k) order.push_back(x - k);
        counting(order);
        auto second = [&](uint64_t x) { return x + k < n ? rank[x + k] + 1 : 0; };
        tmp[sa[0]] = 0;
        for (uint64_t i = 1; i < n; ++i) {
            const uint64_t a = sa[i - 1], b = sa[i];
            tmp[b] = tmp[a] + ((rank[a] == rank[b] && second(a) == second(b)) ? 0 : 1);
        }
        std::swap(rank, tmp);
        classes = rank[sa[n - 1]] + 1;
    }
    return sa;
}

FmIndex::FmIndex(std::span<const uint64_t> text, const FmOptions& options) { build(text, options); }

FmIndex::FmIndex(std::string_view text, const FmOptions& options) : text_(true) {
    std::vector<uint64_t> s(text.size());
    for (size_t i = 0; i < text.size(); ++i) s[i] = static_cast<unsigned char>(text[i]);
    build(s, options);
}

void FmIndex::build(std::span<const uint64_t> text, const FmOptions& options) {
    if (text.empty()) throw EmptyInput();
    n_ = text.size();
    k_ = options.k_context;
    const auto alpha = sorted_alphabet(text);
    alphabet_ = IntVector::from(alpha);
    const uint64_t sigma = alpha.size();
    if (options.sample_rate > 0) {
        rate_ = options.sample_rate;
    } else {
        const double lg = std::log2(static_cast<double>(n_));
        const double lglg = lg > 1.0 ? std::log2(lg) : 0.0;
        const double log_sigma = lg / std::log2(static_cast<double>(std::max<uint64_t>(sigma, 2)));
        rate_ = std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(log_sigma * lglg - 1e-9)));
    }

    std::vector<uint64_t> s(n_ + 1);
    for (uint64_t i = 0; i < n_; ++i) s[i] = std::lower_bound(alpha.begin(), alpha.end(), text[i]) - alpha.begin() + 2;
    s[n_] = 1;
    const auto sa = suffix_array(std::span<const uint64_t>(s).first(n_));
    const uint64_t rows = n_ + 1;
    std::vector<uint64_t> bwt(rows);
    for (uint64_t r = 0; r < rows; ++r) bwt[r] = sa[r] == 0 ? 1 : s[sa[r] - 1];

    std::vector<uint64_t> c(sigma + 3, 0);
    for (uint64_t x : bwt) ++c[x + 1];
    for (uint64_t x = 1; x < c.size(); ++x) c[x] += c[x - 1];
    c_ = IntVector::from(c);

    // context partitions: rows whose suffixes share the first k symbols
    BitBuilder starts(rows);
    starts.set(0);
    for (uint64_t r = 1; r < rows && k_ > 0; ++r) {
        const uint64_t a = sa[r - 1], b = sa[r];
        for (uint64_t o = 0; o < k_; ++o) {
            const uint64_t x = a + o <= n_ ? s[a + o] : 0, y = b + o <= n_ ? s[b + o] : 0;
            if (x != y) {
                starts.set(r);
                break;
            }
            if (x == 1) break;  // both reached the terminator
        }
    }
    part_start_ = BitVector(starts);
    const uint64_t width = sigma + 2;
    std::vector<uint64_t> before;
    std::vector<uint64_t> running(width, 0);
    parts_.clear();
    for (uint64_t r = 0; r < rows;) {
        uint64_t e = r + 1;
        while (e < rows && !starts.get(e)) ++e;
        before.insert(before.end(), running.begin(), running.end());
        std::span<const uint64_t> seg(bwt.data() + r, e - r);
        ApOptions ap;
        ap.general_alphabet = k_ > 0;
        parts_.emplace_back(seg, ap);
        for (uint64_t x : seg) ++running[x];
        r = e;
    }
    part_before_ = IntVector::from(before);

    BitBuilder sampled(rows);
    std::vector<uint64_t> sa_samples;
    std::vector<uint64_t> isa((n_ + rate_ - 1) / rate_ + 1, 0);
    for (uint64_t r = 0; r < rows; ++r) {
        if (sa[r] % rate_ == 0) {
            sampled.set(r);
            sa_samples.push_back(sa[r] / rate_);
            if (sa[r] < n_) isa[sa[r] / rate_] = r + 1;
        }
    }
    isa.back() = 1;  // the terminator suffix sorts first
    sampled_ = BitVector(sampled);
    sa_samples_ = IntVector::from(sa_samples);
    isa_samples_ = IntVector::from(isa);
}

uint64_t FmIndex::internal(uint64_t a) const {
    const uint64_t x = alphabet_index(alphabet_, a);
    return x == 0 ? 0 : x + 1;
}

std::vector<uint64_t> FmIndex::to_internal(std::span<const uint64_t> pattern) const {
    if (pattern.empty()) throw ParameterError("empty pattern");
    std::vector<uint64_t> p(pattern.size());
    for (size_t i = 0; i < p.size(); ++i) p[i] = internal(pattern[i]);
    return p;
}

std::vector<uint64_t> FmIndex::bytes(std::string_view s) const {
    std::vector<uint64_t> out(s.size());
    for (size_t i = 0; i < s.size(); ++i) out[i] = static_cast<unsigned char>(s[i]);
    return out;
}

uint64_t FmIndex::bwt_rank(uint64_t c, uint64_t row) const {
    if (row == 0) return 0;
    const uint64_t p = part_start_.rank1_unchecked(row);
    const uint64_t start = part_start_.select1_unchecked(p);
    return part_before_.get((p - 1) * (alphabet_.size() + 2) + c) + parts_[p - 1].rank(c, row - start + 1);
}

std::pair<uint64_t, uint64_t> FmIndex::bwt_access_rank(uint64_t row) const {
    const uint64_t p = part_start_.rank1_unchecked(row);
    const uint64_t start = part_start_.select1_unchecked(p);
    const uint64_t c = parts_[p - 1].access(row - start + 1);
    return {c, part_before_.get((p - 1) * (alphabet_.size() + 2) + c) + parts_[p - 1].rank(c, row - start + 1)};
}

uint64_t FmIndex::lf(uint64_t row) const {
    check_position(row, n_ + 1);
    const auto [c, r] = bwt_access_rank(row);
    return c_.get(c) + r;
}

std::pair<uint64_t, uint64_t> FmIndex::range(std::span<const uint64_t> p) const {
    uint64_t sp = 1, ep = n_ + 1;
    for (size_t k = p.size(); k-- > 0;) {
        const uint64_t c = p[k];
        if (c == 0) return {1, 0};
        sp = c_.get(c) + bwt_rank(c, sp - 1) + 1;
        ep = c_.get(c) + bwt_rank(c, ep);
        if (sp > ep) return {1, 0};
    }
    return {sp, ep};
}

uint64_t FmIndex::count(std::span<const uint64_t> pattern) const {
    const auto [sp, ep] = range(to_internal(pattern));
    return sp > ep ? 0 : ep - sp + 1;
}

uint64_t FmIndex::count(std::string_view pattern) const { return count(bytes(pattern)); }

uint64_t FmIndex::locate_row(uint64_t row) const {
    uint64_t steps = 0;
    while (!sampled_.access_unchecked(row)) {
        const auto [c, r] = bwt_access_rank(row);
        row = c_.get(c) + r;
        ++steps;
    }
    return sa_samples_.get(sampled_.rank1_unchecked(row) - 1) * rate_ + steps;
}

std::vector<uint64_t> FmIndex::locate(std::span<const uint64_t> pattern) const {
    const auto [sp, ep] = range(to_internal(pattern));
    std::vector<uint64_t> out;
    for (uint64_t row = sp; row <= ep; ++row) out.push_back(locate_row(row) + 1);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<uint64_t> FmIndex::locate(std::string_view pattern) const { return locate(bytes(pattern)); }

std::vector<uint64_t> FmIndex::extract(uint64_t l, uint64_t r) const {
    if (l < 1 || l > r || r > n_)
        throw OutOfRange("range [" + std::to_string(l) + ", " + std::to_string(r) + "] outside [1.." + std::to_string(n_) + "]");
    // start from the first sampled suffix at or after position r (0-based)
    uint64_t pos = (r + rate_ - 1) / rate_ * rate_;
    uint64_t row;
    if (pos >= n_) {
        pos = n_;
        row = 1;
    } else {
        row = isa_samples_.get(pos / rate_);
    }
    std::vector<uint64_t> out(r - l + 1);
    while (pos > l - 1) {
        const auto [c, rk] = bwt_access_rank(row);
        --pos;  // c = text[pos]
        if (pos < r) out[pos - (l - 1)] = alphabet_.get(c - 2);
        row = c_.get(c) + rk;
    }
    return out;
}

std::string FmIndex::extract_text(uint64_t l, uint64_t r) const {
    const auto v = extract(l, r);
    return std::string(v.begin(), v.end());
}

std::vector<uint64_t> FmIndex::bwt() const {
    std::vector<uint64_t> out;
    out.reserve(n_ + 1);
    for (const ApSequence& p : parts_)
        for (uint64_t i = 1; i <= p.size(); ++i) {
            const uint64_t c = p.access(i);
            out.push_back(c == 1 ? 0 : alphabet_.get(c - 2));
        }
    return out;
}

std::string FmIndex::bwt_text() const {
    std::string out;
    for (const ApSequence& p : parts_)
        for (uint64_t i = 1; i <= p.size(); ++i) {
            const uint64_t c = p.access(i);
            out.push_back(c == 1 ? '$' : static_cast<char>(alphabet_.get(c - 2)));
        }
    return out;
}

std::vector<SpaceSection> FmIndex::sections() const {
    uint64_t bwt_bits = 0;
    for (const ApSequence& p : parts_) bwt_bits += p.size_in_bits();
    std::vector<SpaceSection> out{{"alphabet", alphabet_.size_in_bits()}, {"bwt", bwt_bits}, {"C", c_.size_in_bits()}};
    if (parts_.size() > 1) out.push_back({"contexts", part_start_.size_in_bits() + part_before_.size_in_bits()});
    out.push_back({"sa samples", sampled_.size_in_bits() + sa_samples_.size_in_bits()});
    out.push_back({"isa samples", isa_samples_.size_in_bits()});
    return out;
}

uint64_t FmIndex::size_in_bits() const {
    uint64_t bits = 3 * 64 + 8;
    for (const SpaceSection& s : sections()) bits += s.bits;
    return bits;
}

void FmIndex::serialize(Writer& out) const {
    out.u64(n_);
    out.u64(k_);
    out.u64(rate_);
    out.u8(text_ ? 1 : 0);
    alphabet_.serialize(out);
    c_.serialize(out);
    out.u64(parts_.size());
    for (const ApSequence& p : parts_) p.serialize(out);
    part_start_.serialize(out);
    part_before_.serialize(out);
    sampled_.serialize(out);
    sa_samples_.serialize(out);
    isa_samples_.serialize(out);
}

FmIndex FmIndex::load(Reader& in) {
    FmIndex f;
    f.n_ = in.u64();
    f.k_ = in.u64();
    f.rate_ = in.u64();
    const uint8_t text = in.u8();
    if (text > 1) throw FormatError("bad text flag");
    f.text_ = text == 1;
    f.alphabet_ = IntVector::load(in);
    f.c_ = IntVector::load(in);
    const uint64_t parts = in.u64();
    if (parts == 0 || parts > f.n_ + 1) throw FormatError("bad partition count");
    uint64_t rows = 0;
    for (uint64_t p = 0; p < parts; ++p) {
        f.parts_.push_back(ApSequence::load(in));
        rows += f.parts_.back().size();
    }
    f.part_start_ = BitVector::load(in);
    f.part_before_ = IntVector::load(in);
    f.sampled_ = BitVector::load(in);
    f.sa_samples_ = IntVector::load(in);
    f.isa_samples_ = IntVector::load(in);
    const uint64_t sigma = f.alphabet_.size();
    if (f.n_ == 0 || f.rate_ == 0 || rows != f.n_ + 1 || f.c_.size() != sigma + 3 || f.part_start_.size() != rows ||
        f.part_start_.ones() != parts || f.part_before_.size() != parts * (sigma + 2) || f.sampled_.size() != rows ||
        f.sa_samples_.size() != f.sampled_.ones() || f.isa_samples_.size() != (f.n_ + f.rate_ - 1) / f.rate_ + 1)
        throw FormatError("fm-index sections disagree");
    return f;
}

}  // namespace apds
