#include "diqkd/extract/trevisan.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace diqkd::extract {

void ExtractorSpec::validate() const {
    code.validate();
    if (design.t != code.log2_length()) throw std::invalid_argument("ExtractorSpec: design set size must equal 2k");
    if (design.sets.empty()) throw std::invalid_argument("ExtractorSpec: empty design");
    for (const auto& s : design.sets) {
        if (s.size() != design.t) throw std::invalid_argument("ExtractorSpec: design set of wrong size");
        for (auto e : s)
            if (e >= design.d) throw std::invalid_argument("ExtractorSpec: design element outside the seed");
    }
}

ExtractorSpec ExtractorSpec::for_key(std::size_t n, std::size_t m_out, double eps) {
    if (n == 0 || m_out == 0) throw std::invalid_argument("ExtractorSpec::for_key: empty source or output");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("ExtractorSpec::for_key: eps outside (0, 1)");
    const double delta = eps * eps / (32.0 * static_cast<double>(m_out) * static_cast<double>(m_out));
    CodeParams code;
    try {
        code = CodeParams::for_message(n, delta);
    } catch (const std::invalid_argument&) {
        code = CodeParams{n, kMaxCodeExponent, (n + kMaxCodeExponent - 1) / kMaxCodeExponent - 1};
    }
    return with_code(code, m_out);
}

ExtractorSpec ExtractorSpec::with_code(CodeParams code, std::size_t m_out) {
    code.validate();
    ExtractorSpec spec{code, build_weak_design(code.log2_length(), m_out, 2.0)};
    spec.validate();
    return spec;
}

std::string ExtractorSpec::to_json() const {
    nlohmann::json j;
    j["code"] = {{"n", code.n}, {"k", code.k}, {"degree", code.degree}};
    j["design"] = {{"t", design.t}, {"d", design.d}, {"sets", design.sets}};
    return j.dump();
}

ExtractorSpec ExtractorSpec::from_json(std::string_view text) {
    ExtractorSpec spec;
    try {
        const auto j = nlohmann::json::parse(text);
        spec.code.n = j.at("code").at("n").get<std::size_t>();
        spec.code.k = j.at("code").at("k").get<unsigned>();
        spec.code.degree = j.at("code").at("degree").get<std::size_t>();
        spec.design.t = j.at("design").at("t").get<std::size_t>();
        spec.design.d = j.at("design").at("d").get<std::size_t>();
        spec.design.sets = j.at("design").at("sets").get<std::vector<std::vector<std::uint32_t>>>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("ExtractorSpec JSON: ") + e.what());
    }
    spec.validate();
    return spec;
}

std::uint64_t seed_index(std::span<const Bit> seed, std::span<const std::uint32_t> set) {
    std::uint64_t index = 0;
    for (std::size_t j = 0; j < set.size(); ++j) index |= std::uint64_t{seed[set[j]] & 1u} << j;
    return index;
}

BitVector trevisan_extract(std::span<const Bit> x, std::span<const Bit> seed, const ExtractorSpec& spec) {
    if (seed.size() != spec.seed_length()) throw std::invalid_argument("trevisan_extract: seed length mismatch");
    if (x.size() != spec.code.n) throw std::invalid_argument("trevisan_extract: source length mismatch");
    const RsHadamardCode code(spec.code);
    const auto coeffs = code.coefficients(x);
    BitVector out(spec.output_length());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = code.bit(coeffs, seed_index(seed, spec.design.sets[i]));
    return out;
}

}  // namespace diqkd::extract
