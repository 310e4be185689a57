#include "apds/ap_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include <json.hpp>

#include "apds/error.hpp"
#include "apds/stats.hpp"

namespace apds {

uint64_t symbol_class(uint64_t n, uint64_t occ) {
    if (occ == 0 || occ > n) throw ParameterError("occurrence count outside [1..n]");
    if (n <= 1 || occ == n) return 0;
    const double lgn = std::log2(static_cast<double>(n));
    const double x = (lgn - std::log2(static_cast<double>(occ))) * lgn;
    const double r = std::round(x);
    if (std::fabs(x - r) <= 1e-12 * std::max(1.0, x)) return static_cast<uint64_t>(r);
    return static_cast<uint64_t>(std::ceil(x));
}

Partition Partition::of(std::span<const uint64_t> seq) {
    if (seq.empty()) throw EmptyInput();
    Partition p;
    p.n = seq.size();
    for (uint64_t a : seq) {
        if (a == 0) throw InvalidSymbol("symbol 0 is not allowed");
        p.sigma = std::max(p.sigma, a);
    }
    if (p.sigma > p.n) throw InvalidSymbol("alphabet is not effective (symbol " + std::to_string(p.sigma) + " > n)");
    std::vector<uint64_t> occ(p.sigma + 1, 0);
    for (uint64_t a : seq) ++occ[a];
    for (uint64_t a = 1; a <= p.sigma; ++a)
        if (occ[a] == 0) throw InvalidSymbol("alphabet is not effective (symbol " + std::to_string(a) + " missing)");

    p.m.resize(p.sigma);
    uint64_t max_class = 0;
    for (uint64_t a = 1; a <= p.sigma; ++a) {
        p.m[a - 1] = symbol_class(p.n, occ[a]);
        max_class = std::max(max_class, p.m[a - 1]);
    }
    // c = rank of a among the symbols of its class
    std::vector<uint64_t> local(p.sigma + 1, 0);
    std::vector<uint64_t> class_sigma(max_class + 1, 0);
    for (uint64_t a = 1; a <= p.sigma; ++a) local[a] = ++class_sigma[p.m[a - 1]];

    std::vector<int64_t> slot(max_class + 1, -1);
    for (uint64_t l = 0; l <= max_class; ++l) {
        if (class_sigma[l] == 0) continue;
        slot[l] = static_cast<int64_t>(p.classes.size());
        Class c;
        c.id = l;
        c.sigma = class_sigma[l];
        p.classes.push_back(std::move(c));
    }
    p.t.resize(p.n);
    for (uint64_t i = 0; i < p.n; ++i) {
        const uint64_t l = p.m[seq[i] - 1];
        p.t[i] = l;
        Class& c = p.classes[slot[l]];
        c.seq.push_back(local[seq[i]]);
        ++c.length;
    }
    return p;
}

double Partition::partition_bits() const {
    std::vector<uint64_t> lengths;
    double total = 0;
    for (const Class& c : classes) {
        lengths.push_back(c.length);
        total += static_cast<double>(c.length) * std::log2(static_cast<double>(c.sigma));
    }
    return total + static_cast<double>(n) * entropy_of_counts(lengths);
}

ApSequence::ApSequence(std::span<const uint64_t> seq, const ApOptions& options) : variant_(options.variant) {
    if (seq.empty()) throw EmptyInput();
    std::vector<uint64_t> remapped;
    std::span<const uint64_t> input = seq;
    if (options.general_alphabet) {
        std::vector<uint64_t> members(seq.begin(), seq.end());
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        if (members.front() == 0) throw InvalidSymbol("symbol 0 is not allowed");
        dict_.emplace(members);
        remapped.resize(seq.size());
        for (size_t i = 0; i < seq.size(); ++i)
            remapped[i] = static_cast<uint64_t>(std::lower_bound(members.begin(), members.end(), seq[i]) - members.begin()) + 1;
        input = remapped;
    }

    const Partition p = Partition::of(input);
    n_ = p.n;
    sigma_ = p.sigma;
    t_ = PolySequence(p.t);
    m_ = PolySequence(p.m);

    const uint64_t threshold = options.small_threshold ? options.small_threshold : std::max<uint64_t>(2, bits::floor_log2(n_));
    subs_.assign(p.classes.back().id + 1, Sub{});
    for (const Partition::Class& c : p.classes) {
        if (c.sigma <= threshold)
            subs_[c.id] = PolySequence(c.seq);
        else
            subs_[c.id] = LargeSequence(c.seq, c.sigma, variant_);
    }
}

std::optional<uint64_t> ApSequence::internal(uint64_t a) const {
    if (dict_) {
        if (a < 1 || a > dict_->universe()) return std::nullopt;
        return dict_->index_of(a);
    }
    if (a < 1 || a > sigma_) return std::nullopt;
    return a;
}

void ApSequence::check_position(uint64_t i) const {
    if (i < 1 || i > n_) throw OutOfRange("position " + std::to_string(i) + " outside [1.." + std::to_string(n_) + "]");
}

uint64_t ApSequence::access(uint64_t i) const {
    check_position(i);
    const auto [l, k] = t_.access_rank(i);
    const uint64_t c = std::visit(
        [k = k](const auto& sub) -> uint64_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(sub)>, std::monostate>)
                throw FormatError("missing class sub-sequence");
            else
                return sub.access(k);
        },
        subs_[l]);
    const uint64_t a = m_.select(l, c);
    return dict_ ? dict_->value_of(a) : a;
}

uint64_t ApSequence::rank(uint64_t a, uint64_t i) const {
    if (i > n_) throw OutOfRange("rank position " + std::to_string(i) + " exceeds length " + std::to_string(n_));
    const auto x = internal(a);
    if (!x || i == 0) return 0;
    const uint64_t l = m_.access(*x);
    const uint64_t c = m_.rank(l, *x);
    const uint64_t r = t_.rank(l, i);
    if (r == 0) return 0;
    if (const auto* q = std::get_if<PolySequence>(&subs_[l])) return q->rank(c, r);
    return std::get<LargeSequence>(subs_[l]).rank(c, r);
}

uint64_t ApSequence::select(uint64_t a, uint64_t j) const {
    const auto x = internal(a);
    auto missing = [&] { return NotFound("select: symbol " + std::to_string(a) + " has no occurrence " + std::to_string(j)); };
    if (!x || j < 1) throw missing();
    const uint64_t l = m_.access(*x);
    const uint64_t c = m_.rank(l, *x);
    uint64_t k;
    try {
        if (const auto* q = std::get_if<PolySequence>(&subs_[l]))
            k = q->select(c, j);
        else
            k = std::get<LargeSequence>(subs_[l]).select(c, j);
    } catch (const NotFound&) {
        throw missing();  // in the caller's alphabet
    }
    return t_.select(l, k);
}

uint64_t ApSequence::class_of(uint64_t a) const {
    const auto x = internal(a);
    if (!x) throw NotFound("symbol " + std::to_string(a) + " not in sequence");
    return m_.access(*x);
}

uint64_t ApSequence::class_count() const {
    uint64_t k = 0;
    for (const Sub& s : subs_) k += s.index() != 0;
    return k;
}

uint64_t ApSequence::class_sigma(uint64_t l) const {
    if (l >= subs_.size() || subs_[l].index() == 0) return 0;
    if (const auto* q = std::get_if<PolySequence>(&subs_[l])) return q->alphabet_size();
    return std::get<LargeSequence>(subs_[l]).alphabet_size();
}

uint64_t ApSequence::class_length(uint64_t l) const {
    if (l >= subs_.size() || subs_[l].index() == 0) return 0;
    if (const auto* q = std::get_if<PolySequence>(&subs_[l])) return q->size();
    return std::get<LargeSequence>(subs_[l]).size();
}

bool ApSequence::class_is_large(uint64_t l) const { return l < subs_.size() && subs_[l].index() == 2; }

uint64_t ApSequence::size_in_bits() const {
    uint64_t total = t_.size_in_bits() + m_.size_in_bits() + 4 * 64;
    if (dict_) total += dict_->size_in_bits();
    for (const Sub& s : subs_) {
        if (const auto* q = std::get_if<PolySequence>(&s)) total += q->size_in_bits();
        if (const auto* q = std::get_if<LargeSequence>(&s)) total += q->size_in_bits();
    }
    return total;
}

SpaceReport ApSequence::space_report() const {
    SpaceReport r;
    r.n = n_;
    r.sigma = sigma_;
    r.sections.push_back({"t", t_.size_in_bits()});
    r.sections.push_back({"m", m_.size_in_bits()});
    if (dict_) r.sections.push_back({"dict", dict_->size_in_bits()});

    std::vector<uint64_t> symbol_counts;
    std::vector<uint64_t> class_lengths;
    double sub_bits = 0;
    for (uint64_t l = 0; l < subs_.size(); ++l) {
        if (subs_[l].index() == 0) continue;
        const uint64_t len = class_length(l);
        const uint64_t sig = class_sigma(l);
        class_lengths.push_back(len);
        sub_bits += static_cast<double>(len) * std::log2(static_cast<double>(sig));
        if (const auto* q = std::get_if<PolySequence>(&subs_[l])) {
            r.sections.push_back({"s_" + std::to_string(l) + " (wavelet)", q->size_in_bits()});
            for (uint64_t c = 1; c <= sig; ++c) symbol_counts.push_back(q->count(c));
        } else {
            const auto& q2 = std::get<LargeSequence>(subs_[l]);
            r.sections.push_back({"s_" + std::to_string(l) + " (large)", q2.size_in_bits()});
            for (uint64_t c = 1; c <= sig; ++c) symbol_counts.push_back(q2.count(c));
        }
    }
    const double dn = static_cast<double>(n_);
    r.h0_bits = dn * entropy_of_counts(symbol_counts);
    r.partition_bits = dn * entropy_of_counts(class_lengths) + sub_bits;
    r.bound_bits = n_ >= 2 ? r.h0_bits + dn / std::log2(dn) : r.h0_bits;
    r.total_bits = size_in_bits();
    Writer w;
    serialize(w);
    r.serialized_bits = w.size() * 8;
    return r;
}

std::string SpaceReport::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["sigma"] = sigma;
    j["h0_bits"] = h0_bits;
    j["partition_bits"] = partition_bits;
    j["bound_bits"] = bound_bits;
    j["total_bits"] = total_bits;
    j["serialized_bits"] = serialized_bits;
    j["sections"] = nlohmann::ordered_json::array();
    for (const auto& s : sections) j["sections"].push_back({{"name", s.name}, {"bits", s.bits}});
    return j.dump(2);
}

void ApSequence::serialize(Writer& out) const {
    out.u64(n_);
    out.u64(sigma_);
    out.u8(static_cast<uint8_t>(variant_));
    out.u8(dict_ ? 1 : 0);
    if (dict_) dict_->serialize(out);
    t_.serialize(out);
    m_.serialize(out);
    out.u64(subs_.size());
    for (const Sub& s : subs_) {
        out.u8(static_cast<uint8_t>(s.index()));
        if (const auto* q = std::get_if<PolySequence>(&s)) q->serialize(out);
        if (const auto* q = std::get_if<LargeSequence>(&s)) q->serialize(out);
    }
}

ApSequence ApSequence::load(Reader& in) {
    ApSequence q;
    q.n_ = in.u64();
    q.sigma_ = in.u64();
    const uint8_t v = in.u8();
    const uint8_t has_dict = in.u8();
    if (v > 1 || has_dict > 1 || q.n_ == 0 || q.sigma_ == 0 || q.sigma_ > q.n_) throw FormatError("bad sequence header");
    q.variant_ = static_cast<Variant>(v);
    if (has_dict) {
        q.dict_ = SparseDictionary::load(in);
        if (q.dict_->size() != q.sigma_) throw FormatError("dictionary size disagrees with alphabet");
    }
    q.t_ = PolySequence::load(in);
    q.m_ = PolySequence::load(in);
    if (q.t_.size() != q.n_ || q.m_.size() != q.sigma_) throw FormatError("class strings disagree with header");
    const uint64_t count = in.u64();
    if (count > in.remaining()) throw FormatError("too many classes");
    q.subs_.resize(count);
    for (uint64_t l = 0; l < count; ++l) {
        const uint8_t kind = in.u8();
        if (kind == 1)
            q.subs_[l] = PolySequence::load(in);
        else if (kind == 2)
            q.subs_[l] = LargeSequence::load(in);
        else if (kind != 0)
            throw FormatError("bad class kind");
        if (kind != 0 && q.class_length(l) != q.t_.count(l)) throw FormatError("class length disagrees with t");
        if (kind == 0 && q.t_.contains(l)) throw FormatError("missing class sub-sequence");
    }
    for (uint64_t a = 1; a <= q.sigma_; ++a) {
        const uint64_t l = q.m_.access(a);
        if (l >= count || q.subs_[l].index() == 0) throw FormatError("symbol maps to a missing class");
    }
    return q;
}

}  // namespace apds
