#pragma once

// Trevisan's extractor: output bit i is the codeword bit of the source at the
// index formed by the seed bits selected by design set S_i.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "diqkd/bits.hpp"
#include "diqkd/extract/rs_hadamard.hpp"
#include "diqkd/extract/weak_design.hpp"

namespace diqkd::extract {

struct ExtractorSpec {
    CodeParams code;
    WeakDesign design;

    std::size_t output_length() const { return design.m(); }
    std::size_t seed_length() const { return design.d; }

    /// design.t == 2k, sets inside the seed, code parameters consistent.
    void validate() const;

    /// Code sized for an n-bit source at delta = eps^2 / (32 m_out^2); when no
    /// k <= 31 reaches that distance the largest supported field is used.
    /// The design is built at r = 2.
    static ExtractorSpec for_key(std::size_t n, std::size_t m_out, double eps);

    /// Explicit code, design built at r = 2 with t = 2k.
    static ExtractorSpec with_code(CodeParams code, std::size_t m_out);

    /// {"code": {"n","k","degree"}, "design": {"t","d","sets"}}
    std::string to_json() const;
    static ExtractorSpec from_json(std::string_view text);

    bool operator==(const ExtractorSpec&) const = default;
};

/// Index into the codeword formed from seed bits at the positions of `set` (j-th element -> bit j).
std::uint64_t seed_index(std::span<const Bit> seed, std::span<const std::uint32_t> set);

BitVector trevisan_extract(std::span<const Bit> x, std::span<const Bit> seed, const ExtractorSpec& spec);

}  // namespace diqkd::extract
