#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "apds/bit_vector.hpp"
#include "apds/large_sequence.hpp"
#include "apds/poly_sequence.hpp"

namespace apds {

// Frequency class of a symbol occurring `occ` times in a length-n sequence:
// ceil(lg(n/occ) * lg n). Products that land within rounding noise of an
// integer are snapped to it before the ceiling, so class 0 (occ = n) and exact
// powers stay exact.
uint64_t symbol_class(uint64_t n, uint64_t occ);

// Plain (uncompressed) description of the alphabet partition of a sequence
// over [1..sigma]. Built directly from the input, without any succinct
// structure; ApSequence encodes the same data.
struct Partition {
    uint64_t n = 0;
    uint64_t sigma = 0;
    std::vector<uint64_t> t;  // class of every position
    std::vector<uint64_t> m;  // m[a-1] = class of symbol a
    struct Class {
        uint64_t id = 0;
        uint64_t length = 0;         // |s_l|
        uint64_t sigma = 0;          // number of symbols in the class
        std::vector<uint64_t> seq;   // s_l over [1..sigma]
    };
    std::vector<Class> classes;  // ascending by id, only non-empty classes

    static Partition of(std::span<const uint64_t> seq);

    // nH0(t) + sum_l |s_l| lg sigma_l
    double partition_bits() const;
};

struct ApOptions {
    // Accept any positive symbols; the alphabet is stored in a SparseDictionary
    // and the sequence remapped to [1..sigma]. Without it the symbols must
    // form an effective alphabet [1..sigma].
    bool general_alphabet = false;
    Variant variant = Variant::kFastSelect;
    // Classes with at most this many symbols go to a PolySequence.
    // 0 means max(2, floor(lg n)).
    uint64_t small_threshold = 0;
};

struct SpaceSection {
    std::string name;
    uint64_t bits = 0;
};

struct SpaceReport {
    uint64_t n = 0;
    uint64_t sigma = 0;
    double h0_bits = 0;         // n H0(s)
    double partition_bits = 0;  // n H0(t) + sum |s_l| lg sigma_l
    double bound_bits = 0;      // n H0(s) + n / lg n
    uint64_t total_bits = 0;    // in-memory size, all sections
    uint64_t serialized_bits = 0;
    std::vector<SpaceSection> sections;

    std::string to_json() const;
};

// Sequence with access/rank/select in about nH0 + o(n)(H0 + 1) bits, through
// alphabet partitioning: the class string t and class map m live in
// PolySequences, and each class sub-sequence s_l in a PolySequence or a
// LargeSequence depending on its alphabet size.
class ApSequence {
public:
    ApSequence() = default;
    explicit ApSequence(std::span<const uint64_t> seq, const ApOptions& options = {});

    uint64_t size() const { return n_; }
    // number of distinct symbols
    uint64_t alphabet_size() const { return sigma_; }
    bool has_dictionary() const { return dict_.has_value(); }
    Variant variant() const { return variant_; }

    // Symbols are in the caller's alphabet (the original universe when a
    // dictionary is present).
    uint64_t access(uint64_t i) const;
    uint64_t rank(uint64_t a, uint64_t i) const;
    uint64_t select(uint64_t a, uint64_t j) const;
    uint64_t count(uint64_t a) const { return rank(a, n_); }

    // decoded views, mostly for tests and reports
    uint64_t class_at(uint64_t i) const { return t_.access(i); }
    uint64_t class_of(uint64_t a) const;
    uint64_t class_count() const;
    // symbol count of class l, 0 if the class is empty
    uint64_t class_sigma(uint64_t l) const;
    uint64_t class_length(uint64_t l) const;
    bool class_is_large(uint64_t l) const;

    uint64_t size_in_bits() const;
    SpaceReport space_report() const;

    void serialize(Writer& out) const;
    static ApSequence load(Reader& in);

private:
    using Sub = std::variant<std::monostate, PolySequence, LargeSequence>;

    // caller symbol -> internal symbol in [1..sigma], nullopt if absent
    std::optional<uint64_t> internal(uint64_t a) const;
    void check_position(uint64_t i) const;

    uint64_t n_ = 0;
    uint64_t sigma_ = 0;
    Variant variant_ = Variant::kFastSelect;
    std::optional<SparseDictionary> dict_;
    PolySequence t_;
    PolySequence m_;
    std::vector<Sub> subs_;  // indexed by class id
};

}  // namespace apds
