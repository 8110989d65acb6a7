#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "diqkd/analysis/key_rate.hpp"
#include "diqkd/extract/toeplitz.hpp"
#include "diqkd/extract/trevisan.hpp"
#include "diqkd/protocol/transcript_json.hpp"
#include "diqkd/security_report.hpp"
#include "specs.hpp"

namespace diqkd::cli {

namespace {

std::vector<double> parse_grid(const std::string& text, const char* name) {
    std::vector<double> grid;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw std::invalid_argument(std::string("bad value in ") + name + ": '" + item + "'");
        grid.push_back(v);
    }
    if (grid.empty()) throw std::invalid_argument(std::string(name) + " is empty");
    return grid;
}

/// Applies the textual selectors and the Bell-size override to the protocol parameters.
protocol::ProtocolParams resolve_params(const RunConfig& config) {
    protocol::ProtocolParams p = config.params;
    const auto cost = analysis::parse_recon_cost(config.recon_cost);
    if (!cost) throw std::invalid_argument("unknown recon cost '" + config.recon_cost + "'");
    p.rate_model.recon_cost = *cost;
    const auto basis = analysis::parse_key_basis(config.basis);
    if (!basis) throw std::invalid_argument("unknown key basis '" + config.basis + "'");
    p.rate_model.basis = *basis;
    const auto pa = protocol::parse_pa_backend(config.pa);
    if (!pa) throw std::invalid_argument("unknown privacy amplification backend '" + config.pa + "'");
    p.pa_backend = *pa;
    if (config.bell_size) {
        const auto sized = protocol::ProtocolParams::with_bell_size(p.m, p.eps, p.eta, *config.bell_size);
        p.c_gamma = sized.c_gamma;
    }
    p.validate();
    return p;
}

/// Writes `data` to config.out, or to `out` when no path was given.
void emit(const RunConfig& config, const std::string& data, std::ostream& out) {
    if (config.out.empty()) {
        out << data;
        return;
    }
    std::ofstream file(config.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + config.out + "'");
    file << data;
    if (!file) throw std::runtime_error("write failed for '" + config.out + "'");
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

eve::TranscriptEveModel trained_model(const DeviceSpec& device, const protocol::ProtocolParams& params,
                                      const RunConfig& config) {
    if (config.train == 0 || device.kind == DeviceKind::Covert) return {};
    auto factory = [device](Rng& rng) { return make_pair(device, rng); };
    return eve::train_transcript_eve(factory, params, config.train, mix64(config.seed ^ 0x747261696eULL), config.threads);
}

}  // namespace

int cmd_simulate(const RunConfig& config, std::ostream& out) {
    const auto params = resolve_params(config);
    const auto device = parse_device(config.device, config.noise);
    Rng rng(config.seed);
    Rng device_rng = rng.split();
    auto pair = make_pair(device, device_rng);
    const auto result = protocol::run_protocol_a(*pair, nullptr, params, rng);
    if (!config.out.empty()) emit(config, protocol::transcript_to_json(result) + "\n", out);
    out << "simulate device=" << device.name() << " m=" << params.m << " bell=" << result.bell_set.size()
        << " eta_observed=" << result.eta_observed << " aborted=" << (result.aborted() ? "true" : "false")
        << " reason=" << protocol::to_string(result.abort_reason) << " check=" << result.check_set.size()
        << " leakage=" << result.leakage_bits << " key_bits=" << result.alice_key.size() << "\n";
    return result.aborted() ? kExitAbort : kExitOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
    if (config.noise_grid.empty()) throw std::invalid_argument("sweep needs a non-empty --noise-grid");
    const auto eta_grid = config.eta_grid.empty() ? std::vector<double>{config.params.eta} : config.eta_grid;
    std::ostringstream csv;
    csv << kSweepHeader << "\n" << std::setprecision(10);
    std::size_t rows = 0;
    for (double eta : eta_grid) {
        RunConfig point = config;
        point.params.eta = eta;
        const auto params = resolve_params(point);
        for (double noise : config.noise_grid) {
            const auto device = parse_device(config.device, noise);
            const auto model = trained_model(device, params, config);
            const auto report = eve::evaluate_security(make_scenario(device, parse_eve(config.eve), model), params,
                                                       config.trials, config.seed, config.threads);
            csv << noise << "," << eta << "," << report.abort_rate << "," << report.mean_key_len << ","
                << report.per_bit_guess_rate << "\n";
            ++rows;
        }
    }
    emit(config, csv.str(), out);
    out << "sweep rows=" << rows << " trials=" << config.trials << "\n";
    return kExitOk;
}

int cmd_rates(const RunConfig& config, std::ostream& out) {
    const auto base = resolve_params(config);
    std::vector<double> grid = config.eta_grid;
    if (grid.empty()) {
        if (config.eta_steps < 1 || !(config.eta_max >= config.eta_min) || config.eta_min < 0.0)
            throw std::invalid_argument("rates needs eta_min <= eta_max and eta_steps >= 1");
        for (std::size_t i = 0; i < config.eta_steps; ++i) {
            const double f = config.eta_steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(config.eta_steps - 1);
            grid.push_back(config.eta_min + f * (config.eta_max - config.eta_min));
        }
    }
    std::ostringstream csv;
    csv << kRatesHeader << "\n" << std::setprecision(10);
    for (double eta : grid) {
        analysis::RateModel model = base.rate_model;
        protocol::ProtocolParams at = base;
        at.eta = eta;
        model.bell_fraction = eta > 0.0 ? std::min(1.0, at.gamma()) : 1.0;
        const auto rate = analysis::key_rate(eta, base.eps, base.m, model);
        csv << eta << "," << rate.kappa_bound << "," << rate.final_len_per_m << "," << analysis::to_string(model.recon_cost)
            << "," << model.o_term_constant << "," << analysis::to_string(model.basis) << "," << model.bell_fraction << ","
            << base.eps << "," << base.m << "\n";
    }
    emit(config, csv.str(), out);
    analysis::RateModel zero_model = base.rate_model;
    zero_model.o_term_constant = 0.0;
    out << "rates rows=" << grid.size() << " kappa_zero=" << analysis::kappa_zero_crossing()
        << " final_zero(o_term=0)=" << analysis::final_rate_zero_crossing(base.eps, base.m, zero_model) << "\n";
    return kExitOk;
}

int cmd_attack(const RunConfig& config, std::ostream& out) {
    if (config.attack_devices.empty()) throw std::invalid_argument("attack needs at least one device");
    const auto params = resolve_params(config);
    std::ostringstream csv;
    csv << kAttackHeader << "\n" << std::setprecision(10);
    for (const auto& text : config.attack_devices) {
        const auto device = parse_device(text, config.noise);
        const auto eve_kind = parse_eve(config.eve);
        const auto model = trained_model(device, params, config);
        const auto report =
            eve::evaluate_security(make_scenario(device, eve_kind, model), params, config.trials, config.seed, config.threads);
        const bool covert = device.kind == DeviceKind::Covert && eve_kind != EveKind::Transcript;
        csv << device.name() << "," << (covert ? "covert" : (eve_kind == EveKind::None ? "none" : "transcript")) << ","
            << report.sessions << "," << report.abort_rate << "," << report.mean_key_len << "," << report.per_bit_guess_rate
            << "," << report.exact_guess_rate << "," << report.final_key_guess_advantage << "," << report.decoded_accuracy
            << "," << report.decoded_accuracy_kept << "\n";
    }
    emit(config, csv.str(), out);
    out << "attack rows=" << config.attack_devices.size() << " trials=" << config.trials << "\n";
    return kExitOk;
}

int cmd_extract(const RunConfig& config, std::ostream& out) {
    if (config.in.empty()) throw std::invalid_argument("extract needs --in");
    if (config.out.empty()) throw std::invalid_argument("extract needs --out");
    if (config.out_len == 0) throw std::invalid_argument("--out-len must be positive");
    const auto bytes = read_file(config.in);
    const std::size_t n = config.in_bits.value_or(bytes.size() * 8);
    if (n == 0 || n > bytes.size() * 8) throw std::invalid_argument("--bits exceeds the input size or is zero");
    const BitVector x = unpack_bits(bytes, n);
    const auto pa = protocol::parse_pa_backend(config.pa);
    if (!pa) throw std::invalid_argument("unknown privacy amplification backend '" + config.pa + "'");

    auto seed_bits = [&](std::size_t count) {
        if (!config.seed_in.empty() && !config.seed_hex.empty())
            throw std::invalid_argument("give at most one of --seed-in and --seed-hex");
        if (config.seed_in.empty() && config.seed_hex.empty()) {
            Rng rng(config.seed);
            return rng.bits(count);
        }
        const auto seed_bytes = config.seed_hex.empty() ? read_file(config.seed_in) : from_hex(config.seed_hex);
        if (seed_bytes.size() * 8 < count) throw std::invalid_argument("seed file holds fewer than " + std::to_string(count) + " bits");
        return unpack_bits(seed_bytes, count);
    };

    BitVector y;
    if (*pa == protocol::PaBackend::Toeplitz) {
        if (config.out_len > n) throw std::invalid_argument("--out-len exceeds the input length");
        y = extract::toeplitz_hash(x, seed_bits(n + config.out_len - 1), config.out_len);
    } else {
        const auto spec = config.code_k
                              ? extract::ExtractorSpec::with_code(
                                    extract::CodeParams{n, *config.code_k, (n + *config.code_k - 1) / *config.code_k - 1},
                                    config.out_len)
                              : extract::ExtractorSpec::for_key(n, config.out_len, config.params.eps);
        if (!config.spec_out.empty()) {
            std::ofstream file(config.spec_out);
            if (!file) throw std::runtime_error("cannot open spec output '" + config.spec_out + "'");
            file << spec.to_json() << "\n";
        }
        y = extract::trevisan_extract(x, seed_bits(spec.seed_length()), spec);
    }
    const auto packed = pack_bits(y);
    emit(config, std::string(packed.begin(), packed.end()), out);
    out << "extract pa=" << config.pa << " n=" << n << " out_bits=" << y.size() << " out_hex=" << bits_to_hex(y) << "\n";
    return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    auto& p = config.params;
    CLI::App app{"Device-independent QKD simulator: sessions, sweeps, key rates, attacks and extractors", "diqkd"};
    app.fallthrough();
    app.require_subcommand(1, 1);
    app.set_config("--config", "", "INI file: top-level keys for shared flags, [command] sections for the rest");

    app.add_option("--m", p.m, "Number of rounds")->check(CLI::PositiveNumber);
    app.add_option("--eps", p.eps, "Security parameter in (0,1)");
    app.add_option("--eta", p.eta, "Tolerated CHSH deficit");
    app.add_option("--c-gamma", p.c_gamma, "Bell-set constant; gamma = (c_gamma/eta^2) ln(1/eps) / m");
    app.add_option("--bell-size", config.bell_size, "Target Bell-set size; overrides --c-gamma");
    app.add_option("--kappa", p.kappa, "Min-entropy rate for the key length (default: the bound at eta)");
    app.add_option("--recon-cost", config.recon_cost, "H(2eta) | H(1.1eta) | empirical");
    app.add_option("--o-term", p.rate_model.o_term_constant, "Constant c in c log2(1/eps) / m");
    app.add_option("--basis", config.basis, "Key-length basis: C | C-B");
    app.add_option("--recon-q", p.recon_q_est, "Error rate assumed by reconciliation (default 1.1 eta)");
    app.add_option("--recon-passes", p.recon.passes, "Reconciliation passes");
    app.add_option("--noise", config.noise, "Depolarizing probability of honest devices");
    app.add_option("--device", config.device, "honest | deterministic[:AAA:BB] | memory | memory-parity | covert:RATE");
    app.add_option("--eve", config.eve, "auto | none | transcript | covert");
    app.add_option("--trials", config.trials, "Sessions per configuration")->check(CLI::PositiveNumber);
    app.add_option("--train", config.train, "Training sessions for the transcript eavesdropper");
    app.add_option("--seed", config.seed, "Master seed");
    app.add_option("--threads", config.threads, "Worker threads (0 = hardware concurrency)");
    app.add_option("--pa", config.pa, "Privacy amplification: toeplitz | trevisan");
    app.add_option("--out", config.out, "Output file");

    auto* simulate = app.add_subcommand("simulate", "Run one Protocol A session and write its transcript JSON");
    auto* sweep = app.add_subcommand("sweep", "Abort rate, key length and Eve's guess rate over noise/eta grids (CSV)");
    std::string noise_grid, eta_grid;
    sweep->add_option("--noise-grid", noise_grid, "Comma-separated noise values")->required();
    sweep->add_option("--eta-grid", eta_grid, "Comma-separated eta values (default: --eta)");
    auto* rates = app.add_subcommand("rates", "Key-rate curve over an eta grid (CSV)");
    rates->add_option("--eta-grid", eta_grid, "Comma-separated eta values");
    rates->add_option("--eta-min", config.eta_min, "Grid start");
    rates->add_option("--eta-max", config.eta_max, "Grid end");
    rates->add_option("--eta-steps", config.eta_steps, "Grid points");
    auto* attack = app.add_subcommand("attack", "Attack battery, one CSV row per device");
    attack->add_option("--devices", config.attack_devices, "Device specs")->delimiter(',');
    auto* extract_cmd = app.add_subcommand("extract", "Apply Toeplitz or Trevisan extraction to a packed bit file");
    extract_cmd->add_option("--in", config.in, "Packed input bits (LSB first)")->required();
    extract_cmd->add_option("--bits", config.in_bits, "Number of input bits (default: whole file)");
    extract_cmd->add_option("--out-len", config.out_len, "Output bits");
    extract_cmd->add_option("--k", config.code_k, "Trevisan field exponent (default: sized from --eps)");
    extract_cmd->add_option("--seed-in", config.seed_in, "Packed seed bits (default: drawn from --seed)");
    extract_cmd->add_option("--seed-hex", config.seed_hex, "Seed bits as hex of the LSB-first packing");
    extract_cmd->add_option("--spec-out", config.spec_out, "Write the Trevisan spec JSON here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "diqkd: " << e.what() << "\n";
        return kExitError;
    }

    try {
        if (!noise_grid.empty() || sweep->count("--noise-grid") > 0) config.noise_grid = parse_grid(noise_grid, "--noise-grid");
        if (!eta_grid.empty()) config.eta_grid = parse_grid(eta_grid, "--eta-grid");
        if (*simulate) return cmd_simulate(config, out);
        if (*sweep) return cmd_sweep(config, out);
        if (*rates) return cmd_rates(config, out);
        if (*attack) return cmd_attack(config, out);
        if (*extract_cmd) return cmd_extract(config, out);
    } catch (const std::exception& e) {
        err << "diqkd: " << e.what() << "\n";
        return kExitError;
    }
    err << "diqkd: no command\n";
    return kExitError;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace diqkd::cli
