#include "apds/container.hpp"

#include "apds/error.hpp"
#include "apds/serialize.hpp"

namespace apds {

namespace {

constexpr std::string_view kMagic = "APDS";

template <class T>
std::string bytes_of(const T& x) {
    Writer w;
    x.serialize(w);
    return w.take();
}

template <class T>
T parse(const Section& s) {
    Reader r(s.payload);
    T x = T::load(r);
    if (!r.done()) throw FormatError("trailing bytes in section");
    return x;
}

}  // namespace

std::string_view structure_kind_name(StructureKind kind) {
    switch (kind) {
        case StructureKind::kSeq: return "seq";
        case StructureKind::kPerm: return "perm";
        case StructureKind::kFunc: return "func";
        case StructureKind::kIndex: return "index";
    }
    return "unknown";
}

std::string Container::encode() const {
    Writer w;
    for (char c : kMagic) w.u8(static_cast<uint8_t>(c));
    w.u32(kContainerVersion);
    w.u8(static_cast<uint8_t>(kind));
    w.u64(sections.size());
    for (const Section& s : sections) {
        w.u8(static_cast<uint8_t>(s.kind));
        w.u64(s.payload.size());
    }
    std::string out = w.take();
    for (const Section& s : sections) out += s.payload;
    return out;
}

Container Container::decode(std::string_view bytes) {
    if (bytes.substr(0, kMagic.size()) != kMagic) throw FormatError("not an APDS container");
    Reader r(bytes.substr(kMagic.size()));
    const uint32_t version = r.u32();
    if (version != kContainerVersion) throw FormatError("unsupported container version " + std::to_string(version));
    Container c;
    const uint8_t kind = r.u8();
    if (kind < 1 || kind > 4) throw FormatError("unknown structure kind " + std::to_string(kind));
    c.kind = static_cast<StructureKind>(kind);
    const uint64_t count = r.u64();
    if (count > r.remaining() / 9) throw FormatError("bad section count");
    std::vector<std::pair<uint8_t, uint64_t>> table(count);
    for (auto& [k, len] : table) {
        k = r.u8();
        len = r.u64();
    }
    for (auto [k, len] : table) {
        if (k < 1 || k > 5) throw FormatError("unknown section kind " + std::to_string(k));
        if (len > r.remaining()) throw FormatError("truncated section");
        Section s;
        s.kind = static_cast<SectionKind>(k);
        s.payload.resize(len);
        for (uint64_t i = 0; i < len; ++i) s.payload[i] = static_cast<char>(r.u8());
        c.sections.push_back(std::move(s));
    }
    if (!r.done()) throw FormatError("trailing bytes after sections");
    return c;
}

const Section& Container::section(SectionKind kind) const {
    for (const Section& s : sections)
        if (s.kind == kind) return s;
    throw FormatError("missing section " + std::to_string(static_cast<int>(kind)));
}

InputFormat parse_input_format(std::string_view name) {
    if (name == "ints") return InputFormat::kInts;
    if (name == "bytes") return InputFormat::kBytes;
    throw ParameterError("unknown format '" + std::string(name) + "' (expected bytes or ints)");
}

std::string_view input_format_name(InputFormat format) { return format == InputFormat::kBytes ? "bytes" : "ints"; }

StructureKind Stored::kind() const { return static_cast<StructureKind>(value.index() + 1); }

// meta: u8 input format, u8 sub-kind (ApSequence variant, run kind,
// function mode; 0 for the index)
Container to_container(const Stored& s) {
    Container c;
    c.kind = s.kind();
    uint8_t sub = 0;
    Section body;
    if (const auto* q = std::get_if<ApSequence>(&s.value)) {
        sub = static_cast<uint8_t>(q->variant());
        body = {SectionKind::kApSeq, bytes_of(*q)};
    } else if (const auto* p = std::get_if<RunPermutation>(&s.value)) {
        sub = static_cast<uint8_t>(p->kind());
        body = {SectionKind::kPerm, bytes_of(*p)};
    } else if (const auto* f = std::get_if<CompressedFunction>(&s.value)) {
        sub = static_cast<uint8_t>(f->mode());
        body = {SectionKind::kFunc, bytes_of(*f)};
    } else {
        body = {SectionKind::kIndex, bytes_of(std::get<FmIndex>(s.value))};
    }
    Writer meta;
    meta.u8(static_cast<uint8_t>(s.format));
    meta.u8(sub);
    c.sections.push_back({SectionKind::kMeta, meta.take()});
    c.sections.push_back(std::move(body));
    return c;
}

Stored from_container(const Container& c) {
    Stored s;
    Reader meta(c.section(SectionKind::kMeta).payload);
    const uint8_t format = meta.u8();
    if (format > 1) throw FormatError("unknown input format in metadata");
    s.format = static_cast<InputFormat>(format);
    const uint8_t sub = meta.u8();
    switch (c.kind) {
        case StructureKind::kSeq: {
            auto q = parse<ApSequence>(c.section(SectionKind::kApSeq));
            if (sub != static_cast<uint8_t>(q.variant())) throw FormatError("sequence variant disagrees with metadata");
            s.value = std::move(q);
            break;
        }
        case StructureKind::kPerm: {
            auto p = parse<RunPermutation>(c.section(SectionKind::kPerm));
            if (sub != static_cast<uint8_t>(p.kind())) throw FormatError("run kind disagrees with metadata");
            s.value = std::move(p);
            break;
        }
        case StructureKind::kFunc: {
            auto f = parse<CompressedFunction>(c.section(SectionKind::kFunc));
            if (sub != static_cast<uint8_t>(f.mode())) throw FormatError("function mode disagrees with metadata");
            s.value = std::move(f);
            break;
        }
        case StructureKind::kIndex: s.value = parse<FmIndex>(c.section(SectionKind::kIndex)); break;
    }
    return s;
}

}  // namespace apds
