#include "diqkd/analysis/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "diqkd/protocol/chsh.hpp"
#include "diqkd/qsim.hpp"

namespace diqkd::analysis {

void BehaviorTable::validate(double tolerance) const {
    for (std::uint8_t x = 0; x < 3; ++x) {
        for (std::uint8_t y = 0; y < 2; ++y) {
            double sum = 0.0;
            for (std::uint8_t a = 0; a < 2; ++a) {
                for (std::uint8_t b = 0; b < 2; ++b) {
                    const double v = p[x][y][a][b];
                    if (!std::isfinite(v) || v < -tolerance) throw std::invalid_argument("behavior table: bad entry");
                    sum += v;
                }
            }
            if (std::abs(sum - 1.0) > tolerance) throw std::invalid_argument("behavior table: row does not sum to 1");
        }
    }
}

BehaviorTable BehaviorTable::quantum(double noise, const devices::AngleTable& angles) {
    const auto state = qsim::apply_depolarizing(qsim::epr_pair(), noise);
    BehaviorTable t;
    for (std::uint8_t x = 0; x < 3; ++x) {
        for (std::uint8_t y = 0; y < 2; ++y) {
            const auto o = qsim::outcome_distribution(state, angles.alice[x], angles.bob[y]);
            for (std::uint8_t a = 0; a < 2; ++a)
                for (std::uint8_t b = 0; b < 2; ++b) t.p[x][y][a][b] = o.p[a][b];
        }
    }
    return t;
}

BehaviorTable BehaviorTable::deterministic(const devices::DeterministicStrategy& s) {
    BehaviorTable t;
    for (std::uint8_t x = 0; x < 3; ++x)
        for (std::uint8_t y = 0; y < 2; ++y) t.p[x][y][s.alice[x]][s.bob[y]] = 1.0;
    return t;
}

std::string BehaviorTable::to_json() const {
    nlohmann::json j;
    j["p"] = p;
    return j.dump();
}

BehaviorTable BehaviorTable::from_json(std::string_view text) {
    BehaviorTable t;
    try {
        const auto j = nlohmann::json::parse(text);
        const auto& arr = j.at("p");
        if (!arr.is_array() || arr.size() != 3) throw std::invalid_argument("behavior table: p must have 3 x-rows");
        for (std::size_t x = 0; x < 3; ++x) {
            if (arr[x].size() != 2) throw std::invalid_argument("behavior table: each x-row needs 2 y-entries");
            for (std::size_t y = 0; y < 2; ++y) {
                if (arr[x][y].size() != 2) throw std::invalid_argument("behavior table: a dimension must be 2");
                for (std::size_t a = 0; a < 2; ++a) {
                    if (arr[x][y][a].size() != 2) throw std::invalid_argument("behavior table: b dimension must be 2");
                    for (std::size_t b = 0; b < 2; ++b) t.p[x][y][a][b] = arr[x][y][a][b].get<double>();
                }
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("behavior table JSON: ") + e.what());
    }
    t.validate();
    return t;
}

double expected_satisfaction(const BehaviorTable& t) {
    t.validate();
    double total = 0.0;
    for (std::uint8_t x = 0; x < 3; ++x)
        for (std::uint8_t y = 0; y < 2; ++y)
            for (std::uint8_t a = 0; a < 2; ++a)
                for (std::uint8_t b = 0; b < 2; ++b)
                    if (protocol::chsh_satisfied(x, y, a, b)) total += t.p[x][y][a][b];
    return total / 6.0;
}

double no_signalling_deviation(const BehaviorTable& t) {
    t.validate();
    double worst = 0.0;
    // Alice's marginal for fixed x across Bob's inputs.
    for (std::uint8_t x = 0; x < 3; ++x) {
        const double p0 = t.p[x][0][0][0] + t.p[x][0][0][1];
        const double p1 = t.p[x][1][0][0] + t.p[x][1][0][1];
        worst = std::max(worst, std::abs(p0 - p1));
    }
    // Bob's marginal for fixed y across Alice's inputs.
    for (std::uint8_t y = 0; y < 2; ++y) {
        for (std::uint8_t x1 = 0; x1 < 3; ++x1) {
            for (std::uint8_t x2 = x1 + 1; x2 < 3; ++x2) {
                const double q1 = t.p[x1][y][0][0] + t.p[x1][y][1][0];
                const double q2 = t.p[x2][y][0][0] + t.p[x2][y][1][0];
                worst = std::max(worst, std::abs(q1 - q2));
            }
        }
    }
    return worst;
}

double chsh_correlator(const BehaviorTable& t) {
    t.validate();
    auto corr = [&](std::uint8_t x, std::uint8_t y) {
        return t.p[x][y][0][0] + t.p[x][y][1][1] - t.p[x][y][0][1] - t.p[x][y][1][0];
    };
    return 0.25 * (corr(0, 0) + corr(0, 1) + corr(1, 0) - corr(1, 1));
}

std::string_view to_string(GuessingVerdict verdict) {
    switch (verdict) {
        case GuessingVerdict::Holds: return "HOLDS";
        case GuessingVerdict::Violated: return "VIOLATED";
        case GuessingVerdict::HypothesisNotMet: return "HYPOTHESIS_NOT_MET";
    }
    return "UNKNOWN";
}

GuessingReport guessing_lemma_check(const BehaviorTable& t, double delta, double eta, double nu, double tolerance) {
    if (!(delta >= 0.0 && delta <= 1.0) || !(eta >= 0.0) || !(nu >= 0.0)) {
        throw std::invalid_argument("guessing_lemma_check: parameters out of range");
    }
    GuessingReport r;
    r.correlator = chsh_correlator(t);
    const double bob0 = t.p[2][1][0][0] + t.p[2][1][1][0];
    const double bob1 = t.p[2][1][0][1] + t.p[2][1][1][1];
    r.table_delta = 1.0 - std::max(bob0, bob1);
    r.no_signalling = no_signalling_deviation(t);
    r.no_signalling_within_nu = r.no_signalling <= nu + tolerance;
    r.correlator_hypothesis = r.correlator >= std::sqrt(2.0) / 2.0 - eta - tolerance;
    r.determinism_hypothesis = std::max(bob0, bob1) >= 1.0 - delta - tolerance;
    r.required_delta = ((std::sqrt(2.0) - 1.0) / 2.0 - eta) - 75.0 * nu;

    if (!r.correlator_hypothesis || !r.determinism_hypothesis) {
        r.verdict = GuessingVerdict::HypothesisNotMet;
    } else if (delta + tolerance >= r.required_delta) {
        r.verdict = GuessingVerdict::Holds;
    } else {
        r.verdict = GuessingVerdict::Violated;
    }
    return r;
}

}  // namespace diqkd::analysis
