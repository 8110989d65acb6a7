#pragma once

// Behavior tables p(a, b | x, y) and the checkers built on them: the
// no-signalling deviation and the guessing-lemma inequality.

#include <array>
#include <string>
#include <string_view>

#include "diqkd/devices.hpp"

namespace diqkd::analysis {

inline constexpr double kCheckTolerance = 1e-9;

struct BehaviorTable {
    /// p[x][y][a][b]
    std::array<std::array<std::array<std::array<double, 2>, 2>, 2>, 3> p{};

    double& at(std::uint8_t a, std::uint8_t b, std::uint8_t x, std::uint8_t y) { return p[x][y][a][b]; }
    double at(std::uint8_t a, std::uint8_t b, std::uint8_t x, std::uint8_t y) const { return p[x][y][a][b]; }

    /// Throws std::invalid_argument on negative entries or rows not summing to 1.
    void validate(double tolerance = kCheckTolerance) const;

    /// Table of HonestPair-style devices with depolarizing noise and the given bases.
    static BehaviorTable quantum(double noise, const devices::AngleTable& angles = devices::AngleTable::canonical());
    static BehaviorTable deterministic(const devices::DeterministicStrategy& strategy);

    /// {"p": [x][y][a][b]}
    std::string to_json() const;
    static BehaviorTable from_json(std::string_view text);
};

/// CHSH-condition satisfaction under uniform inputs.
double expected_satisfaction(const BehaviorTable& table);

/// Largest total-variation shift of one party's marginal when only the other
/// party's input changes, over both parties and all input choices.
double no_signalling_deviation(const BehaviorTable& table);

/// (1/4)(<A0B0> + <A0B1> + <A1B0> - <A1B1>) with A_x, B_y the +/-1 observables.
double chsh_correlator(const BehaviorTable& table);

enum class GuessingVerdict { Holds, Violated, HypothesisNotMet };

std::string_view to_string(GuessingVerdict verdict);

struct GuessingReport {
    GuessingVerdict verdict = GuessingVerdict::HypothesisNotMet;
    double correlator = 0.0;
    /// 1 - max_b Pr(b | x=2, y=1), the table's own deviation from a deterministic Bob output.
    double table_delta = 0.0;
    double no_signalling = 0.0;
    bool no_signalling_within_nu = false;  // hypothesis 1 proxy
    bool correlator_hypothesis = false;    // hypothesis 2
    bool determinism_hypothesis = false;   // hypothesis 3
    /// ((sqrt2 - 1)/2 - eta) - 75 nu
    double required_delta = 0.0;
};

/// Evaluates the guessing-lemma conclusion delta >= ((sqrt2-1)/2 - eta) - 75 nu
/// on a behavior table. HypothesisNotMet when the correlator or the
/// (2,1)-determinism hypothesis fails. The no-signalling proxy is reported but
/// does not gate the verdict: a Violated verdict on a signalling table is the
/// expected flag for behavior outside the lemma's domain.
GuessingReport guessing_lemma_check(const BehaviorTable& table, double delta, double eta, double nu,
                                    double tolerance = kCheckTolerance);

}  // namespace diqkd::analysis
