#include "apds/function.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "apds/error.hpp"
#include "apds/stats.hpp"
#include "monotone_cover.hpp"

namespace apds {

std::string_view function_mode_name(FunctionMode mode) {
    switch (mode) {
        case FunctionMode::kDirect: return "direct";
        case FunctionMode::kRunsInterleaved: return "runs-interleaved";
        case FunctionMode::kRunsContiguous: return "runs-contiguous";
    }
    return "?";
}

FunctionMode parse_function_mode(std::string_view name) {
    for (FunctionMode m : {FunctionMode::kDirect, FunctionMode::kRunsInterleaved, FunctionMode::kRunsContiguous})
        if (function_mode_name(m) == name) return m;
    throw ParameterError("unknown function mode '" + std::string(name) + "'");
}

double ValueRuns::entropy() const { return h_runs(length); }

namespace {

ValueRuns from_labels(std::vector<uint64_t> label, std::vector<bool> decreasing) {
    ValueRuns r;
    r.length.assign(decreasing.size(), 0);
    for (uint64_t x : label) ++r.length[x - 1];
    r.label = std::move(label);
    r.decreasing = std::move(decreasing);
    return r;
}

ValueRuns segments(std::span<const uint64_t> v) {
    std::vector<uint64_t> label(v.size());
    std::vector<bool> dec;
    int dir = 0;  // 0 open, 1 up, -1 down
    for (uint64_t i = 0; i < v.size(); ++i) {
        bool cut = i == 0;
        if (i > 0 && v[i] != v[i - 1]) {
            const int d = v[i] > v[i - 1] ? 1 : -1;
            if (dir == -d) {
                cut = true;
                dir = 0;
            } else {
                dir = d;
                dec.back() = d < 0;
            }
        }
        if (cut) dec.push_back(false);
        label[i] = dec.size();
    }
    return from_labels(std::move(label), std::move(dec));
}

// one run per distinct value, numbered by first occurrence
ValueRuns by_value(std::span<const uint64_t> v) {
    std::map<uint64_t, uint64_t> id;
    std::vector<uint64_t> label(v.size());
    for (uint64_t i = 0; i < v.size(); ++i) label[i] = id.try_emplace(v[i], id.size() + 1).first->second;
    return from_labels(std::move(label), std::vector<bool>(id.size(), false));
}

ValueRuns from_cover(std::vector<uint64_t> label, const std::vector<detail::Dir>& dir) {
    std::vector<bool> dec(dir.size());
    for (size_t r = 0; r < dir.size(); ++r) dec[r] = dir[r] == detail::kDown;
    return from_labels(std::move(label), std::move(dec));
}

ValueRuns patience(std::span<const uint64_t> v, bool up) {
    std::vector<uint64_t> all(v.size()), label(v.size());
    for (uint64_t i = 0; i < v.size(); ++i) all[i] = i;
    std::vector<detail::Dir> dir;
    detail::patience_cover(v, all, up, label, dir);
    return from_cover(std::move(label), dir);
}

ValueRuns peel(std::span<const uint64_t> v) {
    std::vector<uint64_t> label;
    std::vector<detail::Dir> dir;
    detail::peel_cover(v, label, dir);
    return from_cover(std::move(label), dir);
}

}  // namespace

ValueRuns value_runs(std::span<const uint64_t> values, bool contiguous) {
    if (values.empty()) throw EmptyInput();
    if (contiguous) return segments(values);
    ValueRuns best = by_value(values);
    double best_h = best.entropy();
    for (ValueRuns cand : {patience(values, true), patience(values, false), peel(values)}) {
        const double h = cand.entropy();
        if (h < best_h - 1e-12 || (std::fabs(h - best_h) <= 1e-12 && cand.length.size() < best.length.size())) {
            best = std::move(cand);
            best_h = h;
        }
    }
    return best;
}

CompressedFunction::CompressedFunction(std::span<const uint64_t> f, const FunctionOptions& options)
    : n_(f.size()), mode_(options.mode) {
    if (f.empty()) throw EmptyInput();
    std::vector<uint64_t> g(f.begin(), f.end());
    for (uint64_t v : g)
        if (v == 0) throw InvalidFunction("function values must be positive");
    if (options.remap) {
        std::vector<uint64_t> image(g);
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        dict_.emplace(image);
        for (uint64_t& v : g) v = *dict_->index_of(v);
        sigma_ = image.size();
    } else {
        sigma_ = *std::max_element(g.begin(), g.end());
        std::vector<bool> hit(sigma_ + 1, false);
        for (uint64_t v : g) hit[v] = true;
        for (uint64_t a = 1; a <= sigma_; ++a)
            if (!hit[a]) throw InvalidFunction("value " + std::to_string(a) + " has an empty preimage (use remap)");
    }

    if (mode_ == FunctionMode::kDirect) {
        ApOptions ap;
        ap.variant = Variant::kFastAccess;
        direct_ = ApSequence(g, ap);
        return;
    }

    const bool contiguous = mode_ == FunctionMode::kRunsContiguous;
    const ValueRuns vr = value_runs(g, contiguous);
    // stable order by value, then run, then along the run (reversed for
    // non-increasing runs so that pi is strictly monotone on every run)
    std::vector<uint64_t> order(n_);
    for (uint64_t i = 0; i < n_; ++i) order[i] = i;
    auto key = [&](uint64_t i) {
        const uint64_t r = vr.label[i];
        return std::tuple(g[i], r, vr.decreasing[r - 1] ? n_ - i : i);
    };
    std::sort(order.begin(), order.end(), [&](uint64_t x, uint64_t y) { return key(x) < key(y); });
    std::vector<uint64_t> perm(n_);
    for (uint64_t k = 0; k < n_; ++k) perm[order[k]] = k + 1;

    RunDecomposition d;
    d.kind = contiguous ? RunKind::kContiguousGeneral : RunKind::kInterleavedGeneral;
    d.n = n_;
    d.label = vr.label;
    d.runs.resize(vr.length.size());
    for (uint64_t i = 0; i < n_; ++i) {
        Run& r = d.runs[vr.label[i] - 1];
        if (r.length == 0) {
            r.start = i + 1;
            r.minimum = perm[i];
        }
        ++r.length;
        r.minimum = std::min(r.minimum, perm[i]);
    }
    for (uint64_t r = 0; r < d.runs.size(); ++r) d.runs[r].decreasing = vr.decreasing[r];
    PermOptions po;
    po.kind = d.kind;
    po.epsilon = options.epsilon;
    pi_ = RunPermutation(perm, d, po);

    std::vector<uint64_t> count(sigma_ + 1, 0);
    for (uint64_t v : g) ++count[v];
    BitBuilder b;
    b.push_back(true);
    for (uint64_t a = 1; a <= sigma_; ++a) {
        b.append(false, count[a]);
        b.push_back(true);
    }
    b_ = BitVector(b);
}

std::optional<uint64_t> CompressedFunction::internal(uint64_t a) const {
    if (dict_) return dict_->index_of(a);
    if (a < 1 || a > sigma_) throw OutOfRange("value " + std::to_string(a) + " outside [1.." + std::to_string(sigma_) + "]");
    return a;
}

uint64_t CompressedFunction::eval(uint64_t i) const {
    if (i < 1 || i > n_) throw OutOfRange("position " + std::to_string(i) + " outside [1.." + std::to_string(n_) + "]");
    if (mode_ == FunctionMode::kDirect) return external(direct_.access(i));
    return external(b_.rank1_unchecked(b_.select0_unchecked(pi_.apply(i))));
}

uint64_t CompressedFunction::preimage_size(uint64_t a) const {
    const auto v = internal(a);
    if (!v) return 0;
    if (mode_ == FunctionMode::kDirect) return direct_.count(*v);
    return b_.select1_unchecked(*v + 1) - b_.select1_unchecked(*v) - 1;
}

uint64_t CompressedFunction::preimage_select(uint64_t a, uint64_t j) const {
    const auto v = internal(a);
    const uint64_t size = v ? preimage_size(a) : 0;
    if (j < 1 || j > size)
        throw NotFound("preimage of " + std::to_string(a) + " has " + std::to_string(size) + " elements, asked for #" + std::to_string(j));
    if (mode_ == FunctionMode::kDirect) return direct_.select(*v, j);
    return pi_.inverse(b_.select1_unchecked(*v) - *v + j);
}

std::vector<uint64_t> CompressedFunction::preimage(uint64_t a, bool sorted) const {
    std::vector<uint64_t> out;
    const uint64_t size = preimage_size(a);
    out.reserve(size);
    for (uint64_t j = 1; j <= size; ++j) out.push_back(preimage_select(a, j));
    if (sorted) std::sort(out.begin(), out.end());
    return out;
}

std::vector<SpaceSection> CompressedFunction::sections() const {
    std::vector<SpaceSection> out;
    if (dict_) out.push_back({"dict", dict_->size_in_bits()});
    if (mode_ == FunctionMode::kDirect) {
        for (const SpaceSection& s : direct_.space_report().sections) out.push_back(s);
    } else {
        for (SpaceSection s : pi_.sections()) {
            s.name = "pi." + s.name;
            out.push_back(s);
        }
        out.push_back({"b", b_.size_in_bits()});
    }
    return out;
}

uint64_t CompressedFunction::size_in_bits() const {
    uint64_t bits = 2 * 64 + 8;
    for (const SpaceSection& s : sections()) bits += s.bits;
    return bits;
}

void CompressedFunction::serialize(Writer& out) const {
    out.u64(n_);
    out.u64(sigma_);
    out.u8(static_cast<uint8_t>(mode_));
    out.u8(dict_ ? 1 : 0);
    if (dict_) dict_->serialize(out);
    if (mode_ == FunctionMode::kDirect) {
        direct_.serialize(out);
    } else {
        pi_.serialize(out);
        b_.serialize(out);
    }
}

CompressedFunction CompressedFunction::load(Reader& in) {
    CompressedFunction f;
    f.n_ = in.u64();
    f.sigma_ = in.u64();
    const uint8_t mode = in.u8();
    if (mode > 2) throw FormatError("bad function mode");
    f.mode_ = static_cast<FunctionMode>(mode);
    const uint8_t has_dict = in.u8();
    if (has_dict > 1) throw FormatError("bad dictionary flag");
    if (has_dict) {
        f.dict_ = SparseDictionary::load(in);
        if (f.dict_->size() != f.sigma_) throw FormatError("function dictionary size disagrees");
    }
    if (f.mode_ == FunctionMode::kDirect) {
        f.direct_ = ApSequence::load(in);
        if (f.direct_.size() != f.n_ || f.direct_.alphabet_size() != f.sigma_) throw FormatError("function sections disagree");
    } else {
        f.pi_ = RunPermutation::load(in);
        f.b_ = BitVector::load(in);
        if (f.pi_.size() != f.n_ || f.b_.size() != f.n_ + f.sigma_ + 1 || f.b_.ones() != f.sigma_ + 1)
            throw FormatError("function sections disagree");
    }
    return f;
}

}  // namespace apds
