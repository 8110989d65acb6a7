#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "diqkd/analysis/key_rate.hpp"
#include "diqkd/extract/trevisan.hpp"
#include "diqkd/protocol/transcript_json.hpp"

using namespace diqkd;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("diqkd_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), {}};
    }
    static void write(const std::string& p, const std::string& content) {
        std::ofstream(p, std::ios::binary) << content;
    }

    fs::path dir_;
};

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::size_t columns(const char* header) { return csv(header)[0].size(); }

const std::vector<std::string> kSmall{"--m", "12000", "--bell-size", "1000", "--kappa", "0.3"};

std::vector<std::string> with_small(std::vector<std::string> args) {
    args.insert(args.end(), kSmall.begin(), kSmall.end());
    return args;
}

}  // namespace

TEST_F(CliTest, SimulateHonestWritesTranscript) {
    const auto r = run(with_small({"simulate", "--noise", "0", "--seed", "4", "--out", path("t.json")}));
    ASSERT_TRUE(r.code == cli::kExitOk || r.code == cli::kExitAbort) << r.err;
    EXPECT_EQ(r.out.rfind("simulate ", 0), 0u);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);
    const auto t = protocol::transcript_from_json(slurp(path("t.json")));
    EXPECT_EQ(t.m, 12000u);
    EXPECT_EQ(t.aborted(), r.code == cli::kExitAbort);
    if (!t.aborted()) EXPECT_EQ(t.alice_key, t.bob_key);
}

TEST_F(CliTest, SeedGivesBitExactOutput) {
    for (int i = 0; i < 2; ++i)
        run(with_small({"simulate", "--seed", "9", "--out", path("s" + std::to_string(i) + ".json")}));
    EXPECT_EQ(slurp(path("s0.json")), slurp(path("s1.json")));
    run(with_small({"simulate", "--seed", "10", "--out", path("s2.json")}));
    EXPECT_NE(slurp(path("s0.json")), slurp(path("s2.json")));
    const auto a = run(with_small({"sweep", "--noise-grid", "0,0.01", "--trials", "4", "--seed", "3", "--threads", "1"}));
    const auto b = run(with_small({"sweep", "--noise-grid", "0,0.01", "--trials", "4", "--seed", "3", "--threads", "2"}));
    EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(run(with_small({"simulate", "--device", "deterministic"})).code, cli::kExitAbort);
    EXPECT_EQ(run({"simulate", "--eps", "2"}).code, cli::kExitError);
    EXPECT_EQ(run({"simulate", "--device", "quantum-magic"}).code, cli::kExitError);
    EXPECT_EQ(run({"simulate", "--no-such-flag"}).code, cli::kExitError);
    EXPECT_EQ(run({}).code, cli::kExitError);
    EXPECT_EQ(run({"simulate", "--m", "abc"}).code, cli::kExitError);
    EXPECT_EQ(run({"rates", "--eta-steps", "2"}).code, cli::kExitOk);
    const auto bad = run({"simulate", "--eps", "2"});
    EXPECT_NE(bad.err.find("eps"), std::string::npos);
}

TEST_F(CliTest, MalformedConfigFails) {
    EXPECT_EQ(run({"--config", path("missing.ini"), "rates"}).code, cli::kExitError);
    write(path("bad.ini"), "m = not-a-number\n");
    EXPECT_EQ(run({"--config", path("bad.ini"), "simulate"}).code, cli::kExitError);
}

TEST_F(CliTest, ConfigFileAndFlagOverride) {
    write(path("run.ini"), "m = 12000\nbell-size = 1000\nkappa = 0.3\nseed = 5\n\n[rates]\neta-steps = 4\n");
    const auto from_file = run({"--config", path("run.ini"), "simulate", "--out", path("a.json")});
    ASSERT_NE(from_file.code, cli::kExitError) << from_file.err;
    EXPECT_EQ(protocol::transcript_from_json(slurp(path("a.json"))).m, 12000u);
    const auto flags = run(with_small({"simulate", "--seed", "5", "--out", path("b.json")}));
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    const auto overridden = run({"--config", path("run.ini"), "simulate", "--m", "13000", "--out", path("c.json")});
    EXPECT_EQ(protocol::transcript_from_json(slurp(path("c.json"))).m, 13000u);
    const auto rates = run({"--config", path("run.ini"), "rates"});
    EXPECT_EQ(csv(rates.out).size(), 1u + 4u + 1u);  // header, rows, summary
}

TEST_F(CliTest, SweepAbortRateMonotoneInNoise) {
    const auto r = run(with_small({"sweep", "--noise-grid", "0,0.05,0.2", "--trials", "20", "--out", path("sweep.csv")}));
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto rows = csv(slurp(path("sweep.csv")));
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], csv(cli::kSweepHeader)[0]);
    double prev = -1;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ASSERT_EQ(rows[i].size(), columns(cli::kSweepHeader));
        const double abort = std::stod(rows[i][2]);
        EXPECT_GE(abort, prev);
        prev = abort;
    }
    EXPECT_EQ(std::stod(rows.back()[2]), 1.0);
}

TEST_F(CliTest, SweepRejectsEmptyGrid) {
    EXPECT_EQ(run(with_small({"sweep", "--noise-grid", ""})).code, cli::kExitError);
    EXPECT_EQ(run(with_small({"sweep"})).code, cli::kExitError);
}

TEST_F(CliTest, RatesTableMatchesCalculator) {
    const auto r = run({"rates", "--eta-min", "0", "--eta-max", "0.03", "--eta-steps", "7", "--out", path("rates.csv")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto rows = csv(slurp(path("rates.csv")));
    ASSERT_EQ(rows.size(), 8u);
    EXPECT_EQ(rows[0], csv(cli::kRatesHeader)[0]);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ASSERT_EQ(rows[i].size(), columns(cli::kRatesHeader));
        const double eta = std::stod(rows[i][0]);
        EXPECT_NEAR(eta, 0.005 * (i - 1), 1e-12);
        EXPECT_NEAR(std::stod(rows[i][1]), analysis::kappa_bound(eta), 1e-9);
        EXPECT_EQ(rows[i][3], "H(2eta)");
    }
    const auto grid = run({"rates", "--eta-grid", "0.001,0.002", "--recon-cost", "H(1.1eta)"});
    const auto g = csv(grid.out);
    ASSERT_EQ(g.size(), 4u);
    EXPECT_EQ(g[1][3], "H(1.1eta)");
    EXPECT_EQ(run({"rates", "--recon-cost", "H(9eta)"}).code, cli::kExitError);
}

TEST_F(CliTest, AttackBatteryHasFourRows) {
    const auto r = run(with_small({"attack", "--trials", "3", "--train", "2", "--out", path("attack.csv")}));
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto rows = csv(slurp(path("attack.csv")));
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0], csv(cli::kAttackHeader)[0]);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ASSERT_EQ(rows[i].size(), columns(cli::kAttackHeader));
        EXPECT_EQ(rows[i][2], "3");
    }
    EXPECT_EQ(rows[1][0].rfind("deterministic", 0), 0u);
    EXPECT_EQ(std::stod(rows[1][3]), 1.0);
    EXPECT_EQ(rows[3][1], "covert");
}

TEST_F(CliTest, ExtractToeplitzOnZeroFileIsZero) {
    write(path("zero.bin"), std::string(64, '\0'));
    const auto r = run({"extract", "--in", path("zero.bin"), "--out-len", "100", "--seed", "7", "--out", path("z.out")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto out = slurp(path("z.out"));
    EXPECT_EQ(out, std::string(13, '\0'));
}

TEST_F(CliTest, ExtractRequiresInputAndOutput) {
    EXPECT_EQ(run({"extract", "--out", path("x")}).code, cli::kExitError);
    write(path("in.bin"), "abc");
    EXPECT_EQ(run({"extract", "--in", path("in.bin")}).code, cli::kExitError);
    EXPECT_EQ(run({"extract", "--in", path("in.bin"), "--out", path("x"), "--out-len", "25"}).code, cli::kExitError);
    EXPECT_EQ(run({"extract", "--in", path("in.bin"), "--out", path("x"), "--bits", "100"}).code, cli::kExitError);
}

TEST_F(CliTest, ExtractTrevisanMatchesFixture) {
    const std::string fixtures = DIQKD_FIXTURE_DIR;
    write(path("in.bin"), std::string("\x3c\xa5\x0f\x96", 4));
    const auto r = run({"extract", "--pa", "trevisan", "--in", path("in.bin"), "--k", "4", "--out-len", "16", "--seed-hex",
                        "0123456789abcdeffedcba", "--spec-out", path("spec.json"), "--out", path("t.out")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto out = slurp(path("t.out"));
    EXPECT_EQ(to_hex(std::vector<std::uint8_t>(out.begin(), out.end())), "d9ad");
    EXPECT_NE(r.out.find("out_hex=d9ad"), std::string::npos);
    const auto spec = extract::ExtractorSpec::from_json(slurp(path("spec.json")));
    EXPECT_EQ(spec, extract::ExtractorSpec::from_json(slurp(fixtures + "/trevisan_n32_k4_spec.json")));
}

TEST_F(CliTest, ExtractSeedFileAndHexAgree) {
    write(path("in.bin"), "0123456789");
    write(path("seed.bin"), std::string("\x01\x23\x45\x67\x89\xab\xcd\xef\xfe\xdc\xba\x98\x76\x54\x32\x10", 16));
    const auto a = run({"extract", "--in", path("in.bin"), "--out-len", "40", "--seed-in", path("seed.bin"), "--out", path("a")});
    const auto b = run({"extract", "--in", path("in.bin"), "--out-len", "40", "--seed-hex",
                        "0123456789abcdeffedcba9876543210", "--out", path("b")});
    ASSERT_EQ(a.code, cli::kExitOk) << a.err;
    ASSERT_EQ(b.code, cli::kExitOk) << b.err;
    EXPECT_EQ(slurp(path("a")), slurp(path("b")));
    EXPECT_EQ(run({"extract", "--in", path("in.bin"), "--out-len", "40", "--seed-hex", "00", "--out", path("c")}).code,
              cli::kExitError);
}
