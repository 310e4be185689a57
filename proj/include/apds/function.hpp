#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "apds/ap_sequence.hpp"
#include "apds/bit_vector.hpp"
#include "apds/permutation.hpp"

namespace apds {

enum class FunctionMode : uint8_t {
    kDirect = 0,           // ApSequence over the values
    kRunsInterleaved = 1,  // pi with interleaved runs + delimiter bitmap
    kRunsContiguous = 2,   // pi with contiguous runs + delimiter bitmap
};

std::string_view function_mode_name(FunctionMode mode);
FunctionMode parse_function_mode(std::string_view name);

struct FunctionOptions {
    FunctionMode mode = FunctionMode::kDirect;
    // Accept a non-surjective f: its image is kept in a SparseDictionary and
    // the values renumbered to [1..sigma].
    bool remap = false;
    double epsilon = 0.5;
};

// Cover of a value sequence by non-decreasing / non-increasing runs (equal
// neighbours allowed). label[i-1] is the run of position i, runs numbered by
// first position.
struct ValueRuns {
    std::vector<uint64_t> label;
    std::vector<uint64_t> length;
    std::vector<bool> decreasing;

    double entropy() const;
};

// Maximal monotone segments (contiguous) or the lowest-entropy cover found
// among a few greedy covers (interleaved). The interleaved cover never has
// higher entropy than the partition of positions by value, so
// H(runs) <= H0(values).
ValueRuns value_runs(std::span<const uint64_t> values, bool contiguous);

// Function f:[1..n] -> [1..sigma] with f(i), |f^-1(a)| and the j-th element
// of f^-1(a). In the runs modes f is kept as the permutation pi that sorts
// positions by value (ties by run, then along the run) and the bitmap
// b = 1 0^{|f^-1(1)|} 1 0^{|f^-1(2)|} 1 ... 1 of length n + sigma + 1.
class CompressedFunction {
public:
    CompressedFunction() = default;
    CompressedFunction(std::span<const uint64_t> f, const FunctionOptions& options = {});

    uint64_t size() const { return n_; }
    // size of the image
    uint64_t sigma() const { return sigma_; }
    FunctionMode mode() const { return mode_; }
    bool has_remap() const { return dict_.has_value(); }

    // Values are in the caller's numbering.
    uint64_t eval(uint64_t i) const;
    // 0 for a value outside the image when remapped; OutOfRange otherwise.
    uint64_t preimage_size(uint64_t a) const;
    // j-th element of f^-1(a) in storage order; NotFound past the end.
    uint64_t preimage_select(uint64_t a, uint64_t j) const;
    std::vector<uint64_t> preimage(uint64_t a, bool sorted = false) const;

    // runs modes only
    const RunPermutation& permutation() const { return pi_; }
    const BitVector& delimiters() const { return b_; }
    double runs_entropy() const { return pi_.runs_entropy(); }
    uint64_t rho() const { return pi_.rho(); }

    uint64_t size_in_bits() const;
    std::vector<SpaceSection> sections() const;

    void serialize(Writer& out) const;
    static CompressedFunction load(Reader& in);

private:
    // caller value -> internal value in [1..sigma], nullopt outside the image
    std::optional<uint64_t> internal(uint64_t a) const;
    uint64_t external(uint64_t v) const { return dict_ ? dict_->value_of(v) : v; }

    uint64_t n_ = 0;
    uint64_t sigma_ = 0;
    FunctionMode mode_ = FunctionMode::kDirect;
    std::optional<SparseDictionary> dict_;
    ApSequence direct_;
    RunPermutation pi_;
    BitVector b_;
};

}  // namespace apds
