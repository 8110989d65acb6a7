#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "diqkd/protocol/session.hpp"

namespace diqkd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitAbort = 2;

struct RunConfig {
    std::string command;
    protocol::ProtocolParams params;
    std::optional<std::size_t> bell_size;  // overrides c_gamma when set
    double noise = 0.002;
    std::string device = "honest";
    std::string eve = "auto";
    std::size_t trials = 100;
    std::size_t train = 20;
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    std::string recon_cost = "H(2eta)";
    std::string basis = "C-B";
    std::string pa = "toeplitz";
    std::string out;

    // sweep / rates
    std::vector<double> noise_grid;
    std::vector<double> eta_grid;
    double eta_min = 0.0;
    double eta_max = 0.03;
    std::size_t eta_steps = 31;

    // attack
    std::vector<std::string> attack_devices{"deterministic", "memory", "covert:0.05", "covert:0.002"};

    // extract
    std::string in;
    std::optional<std::size_t> in_bits;
    std::size_t out_len = 64;
    std::optional<unsigned> code_k;
    std::string seed_in;
    std::string seed_hex;
    std::string spec_out;
};

/// Parses and validates flags plus an optional --config INI file, runs the
/// chosen command and returns its exit code: 0 ok, 1 error, 2 protocol abort.
/// Diagnostics go to `err`, the one-line summary to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);
int cmd_rates(const RunConfig& config, std::ostream& out);
int cmd_attack(const RunConfig& config, std::ostream& out);
int cmd_extract(const RunConfig& config, std::ostream& out);

inline constexpr const char* kSweepHeader = "noise,eta,abort_rate,mean_key_len,per_bit_guess_rate";
inline constexpr const char* kRatesHeader =
    "eta,kappa_bound,final_len_per_m,recon_cost,o_term_constant,basis,bell_fraction,eps,m";
inline constexpr const char* kAttackHeader =
    "device,eve,sessions,abort_rate,mean_key_len,per_bit_guess_rate,exact_guess_rate,final_key_guess_advantage,"
    "decoded_accuracy,decoded_accuracy_kept";

}  // namespace diqkd::cli
