#include "apds/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "apds/error.hpp"
#include "apds/stats.hpp"
#include "monotone_cover.hpp"

namespace apds {

std::string_view run_kind_name(RunKind kind) {
    switch (kind) {
        case RunKind::kInterleavedGeneral: return "interleaved-general";
        case RunKind::kInterleavedStrict: return "interleaved-strict";
        case RunKind::kContiguousGeneral: return "contiguous-general";
        case RunKind::kContiguousStrict: return "contiguous-strict";
    }
    return "?";
}

RunKind parse_run_kind(std::string_view name) {
    for (RunKind k : {RunKind::kInterleavedGeneral, RunKind::kInterleavedStrict, RunKind::kContiguousGeneral,
                      RunKind::kContiguousStrict})
        if (run_kind_name(k) == name) return k;
    throw ParameterError("unknown runs kind '" + std::string(name) + "'");
}

std::vector<uint64_t> RunDecomposition::lengths() const {
    std::vector<uint64_t> out;
    out.reserve(runs.size());
    for (const Run& r : runs) out.push_back(r.length);
    return out;
}

double RunDecomposition::entropy() const { return h_runs(lengths()); }

void validate_permutation(std::span<const uint64_t> perm) {
    if (perm.empty()) throw EmptyInput();
    std::vector<bool> seen(perm.size() + 1, false);
    for (uint64_t v : perm) {
        if (v < 1 || v > perm.size()) throw InvalidPermutation("value " + std::to_string(v) + " outside [1.." + std::to_string(perm.size()) + "]");
        if (seen[v]) throw InvalidPermutation("value " + std::to_string(v) + " repeated");
        seen[v] = true;
    }
}

namespace {

using namespace detail;

// Fills runs[] from labels numbered by first position; open runs count as
// increasing.
RunDecomposition finish(RunKind kind, std::span<const uint64_t> perm, std::vector<uint64_t> label, const std::vector<Dir>& dir) {
    RunDecomposition d;
    d.kind = kind;
    d.n = perm.size();
    d.runs.resize(dir.size());
    for (uint64_t i = 0; i < perm.size(); ++i) {
        Run& r = d.runs[label[i] - 1];
        if (r.length == 0) {
            r.start = i + 1;
            r.minimum = perm[i];
        }
        ++r.length;
        r.minimum = std::min(r.minimum, perm[i]);
    }
    for (size_t r = 0; r < dir.size(); ++r) d.runs[r].decreasing = dir[r] == kDown;
    d.label = std::move(label);
    return d;
}

RunDecomposition patience(std::span<const uint64_t> perm, bool up) {
    std::vector<uint64_t> all(perm.size());
    for (uint64_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<uint64_t> label(perm.size());
    std::vector<Dir> dir;
    patience_cover(perm, all, up, label, dir);
    return finish(RunKind::kInterleavedGeneral, perm, std::move(label), dir);
}

RunDecomposition peel(std::span<const uint64_t> perm) {
    std::vector<uint64_t> label;
    std::vector<Dir> dir;
    peel_cover(perm, label, dir);
    return finish(RunKind::kInterleavedGeneral, perm, std::move(label), dir);
}

// Each element joins the open run whose top is nearest to it and that can
// still move in that direction; ties go upward.
RunDecomposition mixed_greedy(std::span<const uint64_t> perm) {
    std::map<uint64_t, uint64_t> up, down;
    std::vector<uint64_t> label(perm.size());
    std::vector<Dir> dir;
    std::vector<uint64_t> top;
    for (uint64_t i = 0; i < perm.size(); ++i) {
        const uint64_t v = perm[i];
        auto u = up.lower_bound(v);
        const bool has_up = u != up.begin();
        if (has_up) --u;
        auto w = down.upper_bound(v);
        const bool has_down = w != down.end();
        uint64_t id;
        if (!has_up && !has_down) {
            id = dir.size();
            dir.push_back(kOpen);
            top.push_back(v);
            up.emplace(v, id);
            down.emplace(v, id);
            label[i] = id + 1;
            continue;
        }
        const bool go_up = has_up && (!has_down || v - u->first <= w->first - v);
        id = go_up ? u->second : w->second;
        up.erase(top[id]);
        down.erase(top[id]);
        dir[id] = go_up ? kUp : kDown;
        top[id] = v;
        (go_up ? up : down).emplace(v, id);
        label[i] = id + 1;
    }
    return finish(RunKind::kInterleavedGeneral, perm, std::move(label), dir);
}

RunDecomposition interleaved_general(std::span<const uint64_t> perm) {
    RunDecomposition best = patience(perm, true);
    double best_h = best.entropy();
    for (RunDecomposition cand : {patience(perm, false), mixed_greedy(perm), peel(perm)}) {
        const double h = cand.entropy();
        if (h < best_h - 1e-12 || (std::fabs(h - best_h) <= 1e-12 && cand.rho() < best.rho())) {
            best = std::move(cand);
            best_h = h;
        }
    }
    return best;
}

RunDecomposition interleaved_strict(std::span<const uint64_t> perm) {
    const uint64_t n = perm.size();
    // run whose current top is v, or -1
    std::vector<int64_t> ending(n + 2, -1);
    std::vector<uint64_t> label(n);
    std::vector<Dir> dir;
    for (uint64_t i = 0; i < n; ++i) {
        const uint64_t v = perm[i];
        int64_t id = -1;
        if (const int64_t a = ending[v - 1]; a >= 0 && dir[a] != kDown) {
            id = a;
            dir[a] = kUp;
            ending[v - 1] = -1;
        } else if (const int64_t b = ending[v + 1]; b >= 0 && dir[b] != kUp) {
            id = b;
            dir[b] = kDown;
            ending[v + 1] = -1;
        } else {
            id = static_cast<int64_t>(dir.size());
            dir.push_back(kOpen);
        }
        ending[v] = id;
        label[i] = static_cast<uint64_t>(id) + 1;
    }
    RunDecomposition d = finish(RunKind::kInterleavedStrict, perm, std::move(label), dir);

    // renumber by minimum value
    std::vector<uint64_t> order(d.runs.size());
    for (uint64_t r = 0; r < order.size(); ++r) order[r] = r;
    std::sort(order.begin(), order.end(), [&](uint64_t a, uint64_t b) { return d.runs[a].minimum < d.runs[b].minimum; });
    std::vector<uint64_t> new_id(order.size());
    std::vector<Run> runs(order.size());
    for (uint64_t k = 0; k < order.size(); ++k) {
        new_id[order[k]] = k + 1;
        runs[k] = d.runs[order[k]];
    }
    for (auto& x : d.label) x = new_id[x - 1];
    d.runs = std::move(runs);
    return d;
}

RunDecomposition contiguous(std::span<const uint64_t> perm, bool strict, RunKind kind) {
    std::vector<uint64_t> label(perm.size());
    std::vector<Dir> dir;
    uint64_t top = 0;
    for (uint64_t i = 0; i < perm.size(); ++i) {
        const uint64_t v = perm[i];
        if (!dir.empty()) {
            Dir& d = dir.back();
            const bool up = strict ? v == top + 1 : v > top;
            const bool down = strict ? v + 1 == top : v < top;
            if (up && d != kDown) {
                d = kUp;
            } else if (down && d != kUp) {
                d = kDown;
            } else {
                dir.push_back(kOpen);
            }
        } else {
            dir.push_back(kOpen);
        }
        top = v;
        label[i] = dir.size();
    }
    return finish(kind, perm, std::move(label), dir);
}

}  // namespace

RunDecomposition decompose_runs(std::span<const uint64_t> perm, RunKind kind) {
    validate_permutation(perm);
    switch (kind) {
        case RunKind::kInterleavedGeneral: return interleaved_general(perm);
        case RunKind::kInterleavedStrict: return interleaved_strict(perm);
        case RunKind::kContiguousGeneral: return contiguous(perm, false, kind);
        case RunKind::kContiguousStrict: return contiguous(perm, true, kind);
    }
    throw ParameterError("unknown runs kind");
}

// ---------------------------------------------------------------------------

RunPermutation::StrictStore RunPermutation::make_strict(std::span<const uint64_t> label, const std::vector<Run>& runs,
                                                        uint64_t n, double epsilon) {
    StrictStore st;
    st.labels = ApSequence(label);
    std::vector<uint64_t> len, mins;
    BitBuilder dec;
    for (const Run& r : runs) {
        len.push_back(r.length);
        mins.push_back(r.minimum);
        dec.push_back(r.decreasing);
    }
    st.length = IntVector::from(len);
    st.minimum = IntVector::from(mins);
    st.decreasing = BitVector(dec, BitEncoding::kPlain);
    st.pred = PredecessorTrie(mins, n, epsilon);
    return st;
}

uint64_t RunPermutation::StrictStore::apply(uint64_t i) const {
    const uint64_t r = labels.access(i);
    const uint64_t j = labels.rank(r, i);
    const uint64_t m = minimum.get(r - 1);
    return decreasing.access_unchecked(r) ? m + length.get(r - 1) - j : m + j - 1;
}

uint64_t RunPermutation::StrictStore::inverse(uint64_t v) const {
    const uint64_t r = pred.query(v)->aux;
    const uint64_t m = minimum.get(r - 1);
    const uint64_t j = decreasing.access_unchecked(r) ? m + length.get(r - 1) - v : v - m + 1;
    return labels.select(r, j);
}

uint64_t RunPermutation::StrictStore::size_in_bits() const {
    return labels.size_in_bits() + length.size_in_bits() + minimum.size_in_bits() + decreasing.size_in_bits() +
           pred.size_in_bits();
}

void RunPermutation::StrictStore::serialize(Writer& out) const {
    labels.serialize(out);
    length.serialize(out);
    minimum.serialize(out);
    decreasing.serialize(out);
    pred.serialize(out);
}

RunPermutation::StrictStore RunPermutation::StrictStore::load(Reader& in) {
    StrictStore st;
    st.labels = ApSequence::load(in);
    st.length = IntVector::load(in);
    st.minimum = IntVector::load(in);
    st.decreasing = BitVector::load(in);
    st.pred = PredecessorTrie::load(in);
    const uint64_t rho = st.labels.alphabet_size();
    if (st.length.size() != rho || st.minimum.size() != rho || st.decreasing.size() != rho || st.pred.size() != rho)
        throw FormatError("run arrays disagree with labels");
    return st;
}

RunPermutation::RunPermutation(std::span<const uint64_t> perm, const PermOptions& options)
    : RunPermutation(perm, decompose_runs(perm, options.kind), options) {}

RunPermutation::RunPermutation(std::span<const uint64_t> perm, const RunDecomposition& d, const PermOptions& options)
    : n_(perm.size()), kind_(options.kind) {
    if (!(options.epsilon > 0.0) || options.epsilon > 1.0) throw ParameterError("epsilon must be in (0, 1]");
    validate_permutation(perm);
    if (d.kind != kind_ || d.n != n_ || d.label.size() != n_) throw InvalidInput("run decomposition does not match the permutation");
    {
        // every run must be monotone in its direction (strictly, stepping by
        // one for the strict kinds, contiguous for the contiguous kinds)
        const bool strict = kind_ == RunKind::kInterleavedStrict || kind_ == RunKind::kContiguousStrict;
        const bool contiguous = kind_ == RunKind::kContiguousGeneral || kind_ == RunKind::kContiguousStrict;
        std::vector<uint64_t> last(d.runs.size() + 1, 0), seen(d.runs.size() + 1, 0);
        for (uint64_t i = 0; i < n_; ++i) {
            const uint64_t r = d.label[i];
            if (r < 1 || r > d.runs.size()) throw InvalidInput("run label out of range");
            const Run& run = d.runs[r - 1];
            if (seen[r] > 0) {
                const uint64_t prev = perm[last[r]];
                const bool ok = run.decreasing ? (strict ? prev == perm[i] + 1 : prev > perm[i])
                                               : (strict ? prev + 1 == perm[i] : prev < perm[i]);
                if (!ok || (contiguous && last[r] + 1 != i)) throw InvalidInput("run " + std::to_string(r) + " is not monotone");
            } else if (run.start != i + 1) {
                throw InvalidInput("run " + std::to_string(r) + " start mismatch");
            }
            ++seen[r];
            last[r] = i;
        }
        for (uint64_t r = 1; r <= d.runs.size(); ++r)
            if (seen[r] != d.runs[r - 1].length) throw InvalidInput("run " + std::to_string(r) + " length mismatch");
    }
    rho_ = d.rho();
    h_runs_ = d.entropy();

    switch (kind_) {
        case RunKind::kInterleavedGeneral: {
            std::vector<uint64_t> sp(n_);
            for (uint64_t i = 0; i < n_; ++i) sp[perm[i] - 1] = d.label[i];
            s_ = ApSequence(d.label);
            s_prime_ = ApSequence(sp);
            BitBuilder b;
            for (const Run& r : d.runs) b.push_back(r.decreasing);
            direction_ = BitVector(b, BitEncoding::kPlain);
            break;
        }
        case RunKind::kInterleavedStrict:
            strict_ = make_strict(d.label, d.runs, n_, options.epsilon);
            break;
        case RunKind::kContiguousGeneral: {
            // pi^-1 has interleaved strict runs; run r of pi starting at j
            // becomes the run over values j..j+len-1
            std::vector<uint64_t> inv_label(n_);
            for (uint64_t i = 0; i < n_; ++i) inv_label[perm[i] - 1] = d.label[i];
            std::vector<Run> inv_runs = d.runs;
            for (Run& r : inv_runs) r.minimum = r.start;
            strict_ = make_strict(inv_label, inv_runs, n_, options.epsilon);
            break;
        }
        case RunKind::kContiguousStrict: {
            std::vector<uint64_t> starts, start_values, lengths;
            BitBuilder dec;
            std::vector<std::pair<uint64_t, uint64_t>> by_min;
            for (uint64_t r = 0; r < d.runs.size(); ++r) {
                const Run& run = d.runs[r];
                starts.push_back(run.start);
                start_values.push_back(perm[run.start - 1]);
                lengths.push_back(run.length);
                dec.push_back(run.decreasing);
                by_min.emplace_back(run.minimum, r + 1);
            }
            std::sort(by_min.begin(), by_min.end());
            std::vector<uint64_t> min_keys, min_aux;
            for (const auto& [m, r] : by_min) {
                min_keys.push_back(m);
                min_aux.push_back(r);
            }
            by_start_ = PredecessorTrie(starts, n_, options.epsilon);
            by_value_ = PredecessorTrie(min_keys, n_, options.epsilon, min_aux);
            start_value_ = IntVector::from(start_values);
            run_length_ = IntVector::from(lengths);
            run_decreasing_ = BitVector(dec, BitEncoding::kPlain);
            break;
        }
    }
    if (options.power_step > 0) power_.emplace(perm, options.power_step);
}

void RunPermutation::check(uint64_t i) const {
    if (i < 1 || i > n_) throw OutOfRange("position " + std::to_string(i) + " outside [1.." + std::to_string(n_) + "]");
}

uint64_t RunPermutation::apply(uint64_t i) const {
    check(i);
    switch (kind_) {
        case RunKind::kInterleavedGeneral: {
            const uint64_t r = s_.access(i);
            uint64_t k = s_.rank(r, i);
            if (direction_.access_unchecked(r)) k = s_.count(r) + 1 - k;
            return s_prime_.select(r, k);
        }
        case RunKind::kInterleavedStrict: return strict_.apply(i);
        case RunKind::kContiguousGeneral: return strict_.inverse(i);
        case RunKind::kContiguousStrict: {
            const auto hit = *by_start_.query(i);
            const uint64_t r = hit.aux;
            const uint64_t v0 = start_value_.get(r - 1);
            const uint64_t off = i - hit.key;
            return run_decreasing_.access_unchecked(r) ? v0 - off : v0 + off;
        }
    }
    return 0;
}

uint64_t RunPermutation::inverse(uint64_t v) const {
    check(v);
    switch (kind_) {
        case RunKind::kInterleavedGeneral: {
            const uint64_t r = s_prime_.access(v);
            uint64_t k = s_prime_.rank(r, v);
            if (direction_.access_unchecked(r)) k = s_prime_.count(r) + 1 - k;
            return s_.select(r, k);
        }
        case RunKind::kInterleavedStrict: return strict_.inverse(v);
        case RunKind::kContiguousGeneral: return strict_.apply(v);
        case RunKind::kContiguousStrict: {
            const auto hit = *by_value_.query(v);
            const uint64_t r = hit.aux;
            const uint64_t start = by_start_.key(r);
            const uint64_t len = run_length_.get(r - 1);
            return run_decreasing_.access_unchecked(r) ? start + (hit.key + len - 1 - v) : start + (v - hit.key);
        }
    }
    return 0;
}

uint64_t RunPermutation::power(uint64_t i, int64_t k, uint64_t* applications) const {
    if (!power_) throw Unsupported("permutation was built without a power step");
    check(i);
    return power_->power(i, k, [this](uint64_t x) { return apply(x); }, applications);
}

std::vector<SpaceSection> RunPermutation::sections() const {
    std::vector<SpaceSection> out;
    switch (kind_) {
        case RunKind::kInterleavedGeneral:
            out.push_back({"s", s_.size_in_bits()});
            out.push_back({"s_prime", s_prime_.size_in_bits()});
            out.push_back({"directions", direction_.size_in_bits()});
            break;
        case RunKind::kInterleavedStrict:
        case RunKind::kContiguousGeneral:
            out.push_back({"labels", strict_.labels.size_in_bits()});
            out.push_back({"run_arrays",
                           strict_.length.size_in_bits() + strict_.minimum.size_in_bits() + strict_.decreasing.size_in_bits()});
            out.push_back({"predecessor", strict_.pred.size_in_bits()});
            break;
        case RunKind::kContiguousStrict:
            out.push_back({"predecessor_start", by_start_.size_in_bits()});
            out.push_back({"predecessor_value", by_value_.size_in_bits()});
            out.push_back({"run_arrays", start_value_.size_in_bits() + run_length_.size_in_bits() + run_decreasing_.size_in_bits()});
            break;
    }
    if (power_) out.push_back({"cycle_index", power_->size_in_bits()});
    return out;
}

uint64_t RunPermutation::size_in_bits() const {
    uint64_t total = 4 * 64;
    for (const auto& s : sections()) total += s.bits;
    return total;
}

void RunPermutation::serialize(Writer& out) const {
    out.u64(n_);
    out.u8(static_cast<uint8_t>(kind_));
    out.u64(rho_);
    out.f64(h_runs_);
    switch (kind_) {
        case RunKind::kInterleavedGeneral:
            s_.serialize(out);
            s_prime_.serialize(out);
            direction_.serialize(out);
            break;
        case RunKind::kInterleavedStrict:
        case RunKind::kContiguousGeneral:
            strict_.serialize(out);
            break;
        case RunKind::kContiguousStrict:
            by_start_.serialize(out);
            by_value_.serialize(out);
            start_value_.serialize(out);
            run_length_.serialize(out);
            run_decreasing_.serialize(out);
            break;
    }
    out.u8(power_ ? 1 : 0);
    if (power_) power_->serialize(out);
}

RunPermutation RunPermutation::load(Reader& in) {
    RunPermutation p;
    p.n_ = in.u64();
    const uint8_t kind = in.u8();
    if (kind > 3 || p.n_ == 0) throw FormatError("bad permutation header");
    p.kind_ = static_cast<RunKind>(kind);
    p.rho_ = in.u64();
    p.h_runs_ = in.f64();
    switch (p.kind_) {
        case RunKind::kInterleavedGeneral:
            p.s_ = ApSequence::load(in);
            p.s_prime_ = ApSequence::load(in);
            p.direction_ = BitVector::load(in);
            if (p.s_.size() != p.n_ || p.s_prime_.size() != p.n_ || p.s_.alphabet_size() != p.rho_ ||
                p.s_prime_.alphabet_size() != p.rho_ || p.direction_.size() != p.rho_)
                throw FormatError("permutation sections disagree");
            break;
        case RunKind::kInterleavedStrict:
        case RunKind::kContiguousGeneral:
            p.strict_ = StrictStore::load(in);
            if (p.strict_.labels.size() != p.n_ || p.strict_.labels.alphabet_size() != p.rho_ || p.strict_.pred.universe() != p.n_)
                throw FormatError("permutation sections disagree");
            break;
        case RunKind::kContiguousStrict:
            p.by_start_ = PredecessorTrie::load(in);
            p.by_value_ = PredecessorTrie::load(in);
            p.start_value_ = IntVector::load(in);
            p.run_length_ = IntVector::load(in);
            p.run_decreasing_ = BitVector::load(in);
            if (p.by_start_.size() != p.rho_ || p.by_value_.size() != p.rho_ || p.start_value_.size() != p.rho_ ||
                p.run_length_.size() != p.rho_ || p.run_decreasing_.size() != p.rho_ || p.by_start_.universe() != p.n_ ||
                p.by_value_.universe() != p.n_)
                throw FormatError("permutation sections disagree");
            break;
    }
    const uint8_t has_power = in.u8();
    if (has_power > 1) throw FormatError("bad power flag");
    if (has_power) {
        p.power_ = CycleIndex::load(in);
        if (p.power_->size() != p.n_) throw FormatError("cycle index size disagrees");
    }
    return p;
}

}  // namespace apds
