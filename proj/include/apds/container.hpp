#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "apds/ap_sequence.hpp"
#include "apds/function.hpp"
#include "apds/permutation.hpp"
#include "apds/text_index.hpp"

namespace apds {

// File layout, little-endian:
//   "APDS" | u32 version (1) | u8 structure kind | u64 section count |
//   per section: u8 kind, u64 byte length | section payloads in table order
inline constexpr uint32_t kContainerVersion = 1;

enum class StructureKind : uint8_t { kSeq = 1, kPerm = 2, kFunc = 3, kIndex = 4 };
enum class SectionKind : uint8_t { kMeta = 1, kApSeq = 2, kPerm = 3, kFunc = 4, kIndex = 5 };

std::string_view structure_kind_name(StructureKind kind);

struct Section {
    SectionKind kind = SectionKind::kMeta;
    std::string payload;
};

struct Container {
    StructureKind kind = StructureKind::kSeq;
    std::vector<Section> sections;

    std::string encode() const;
    // Throws FormatError on a bad magic, unknown version or kind, or
    // truncated sections.
    static Container decode(std::string_view bytes);
    // first section of that kind; FormatError if missing
    const Section& section(SectionKind kind) const;
};

// How the symbols of the input file were read.
enum class InputFormat : uint8_t { kInts = 0, kBytes = 1 };

InputFormat parse_input_format(std::string_view name);
std::string_view input_format_name(InputFormat format);

// A built structure with the metadata the CLI needs. Byte sequences store
// byte b as symbol b + 1 (sequences need positive symbols); the index keeps
// byte values as they are.
struct Stored {
    InputFormat format = InputFormat::kInts;
    std::variant<ApSequence, RunPermutation, CompressedFunction, FmIndex> value;

    StructureKind kind() const;
};

Container to_container(const Stored& s);
Stored from_container(const Container& c);

}  // namespace apds
