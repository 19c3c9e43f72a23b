#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lfsrng/bit_stream.hpp"
#include "lfsrng/manifest.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("lfsrng_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  CliRun run(const std::string& args) const {
    const std::string capture = path("capture.txt");
    const std::string cmd = std::string(LFSRNG_CLI) + " " + args + " > " + capture + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(capture);
    std::stringstream text;
    text << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text.str()};
  }

  std::string slurp(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    std::stringstream text;
    text << in.rdbuf();
    return text.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenerateGolden) {
  const CliRun r = run("generate --variant 'kind=single;widths=4;seeds=reg:0x1' --bits 15 --format ascii --out " +
                    path("g.txt"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(slurp("g.txt").substr(0, 15), "000100110101111");
  const auto m = lfsrng::read_manifest(path("g.txt.manifest.json"));
  EXPECT_EQ(m.command, "generate");
  EXPECT_EQ(*m.bits, 15u);
}

TEST_F(Cli, GenerateIsReproducible) {
  ASSERT_EQ(run("generate --variant 'kind=xor2;widths=128,129' --bits 100000 --out " + path("a.bin")).code, 0);
  ASSERT_EQ(run("generate --variant 'kind=xor2;widths=128,129' --bits 100000 --out " + path("b.bin")).code, 0);
  EXPECT_EQ(slurp("a.bin"), slurp("b.bin"));
  const auto m = lfsrng::read_manifest(path("a.bin.manifest.json"));
  EXPECT_EQ(m.seeds, (std::vector<std::uint64_t>{1, 2}));
  ASSERT_EQ(run("generate --variant '" + *m.variant + "' --bits 100000 --out " + path("c.bin")).code, 0);
  EXPECT_EQ(slurp("a.bin"), slurp("c.bin"));
  ASSERT_EQ(run("generate --variant 'kind=xor2;widths=128,129' --seed ff --bits 1000 --out " + path("d.bin")).code, 0);
  EXPECT_EQ(lfsrng::read_manifest(path("d.bin.manifest.json")).seeds,
            (std::vector<std::uint64_t>{255, 256}));
}

TEST_F(Cli, GenerateUnknownWidth) {
  const CliRun r = run("generate --variant 'kind=single;widths=1000' --bits 10 --out " + path("x.bin"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("no tap entry"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("generate --bits 10").code, 2);
  EXPECT_EQ(run("test --in " + path("missing.bin")).code, 3);
}

TEST_F(Cli, TestSingleLfsr128) {
  ASSERT_EQ(run("generate --variant 'kind=single;widths=128' --bits 1000000 --out " + path("l.bin")).code, 0);
  const CliRun r = run("test --in " + path("l.bin") + " --out " + path("report"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("NIST-subset: PASS (9/9), LCT: FAIL"), std::string::npos) << r.out;
  EXPECT_NE(slurp("report.csv").find("test_id,seq_index,p_value,verdict"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("report.manifest.json")));
  EXPECT_EQ(run("test --strict --in " + path("l.bin")).code, 1);
}

TEST_F(Cli, TestPrimeXorPasses) {
  ASSERT_EQ(run("generate --variant 'kind=xor2;widths=127,131' --bits 1000000 --out " + path("p.bin")).code, 0);
  const CliRun r = run("test --strict --in " + path("p.bin"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("NIST-subset: PASS (9/9), LCT: PASS"), std::string::npos);
}

TEST_F(Cli, TestShortInput) {
  ASSERT_EQ(run("generate --variant 'kind=xor2;widths=127,131' --bits 300 --out " + path("s.bin")).code, 0);
  const CliRun r = run("test --tests linear_complexity --lct-block 500 --in " + path("s.bin"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("500"), std::string::npos);
}

TEST_F(Cli, TestNeedsExplicitMode) {
  ASSERT_EQ(run("generate --variant 'kind=xor2;widths=127,131' --bits 200000 --out " + path("m.bin")).code, 0);
  EXPECT_EQ(run("test --sequences 2 --in " + path("m.bin")).code, 2);
  EXPECT_EQ(run("test --sequences 2 --mode proportion --in " + path("m.bin")).code, 0);
}

TEST_F(Cli, TimetagRoundTrip) {
  ASSERT_EQ(run("generate --variant 'kind=xor2;widths=128,129' --bits 1000000 --out " + path("t.bin")).code, 0);
  ASSERT_EQ(run("timetag encode --in " + path("t.bin") + " --out " + path("t.csv")).code, 0);
  const CliRun r = run("timetag decode --in " + path("t.csv") + " --out " + path("t2.bin"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("orphans: 0"), std::string::npos);
  EXPECT_EQ(slurp("t.bin"), slurp("t2.bin"));
}

TEST_F(Cli, TimetagDecodeOrphan) {
  std::ofstream(path("o.csv")) << "channel,timestamp_ps\nclock,0\nrandom,500000\nclock,1000000\n";
  const CliRun r = run("timetag decode --format ascii --in " + path("o.csv") + " --out " + path("o.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("orphans: 1"), std::string::npos);
  EXPECT_EQ(slurp("o.txt").substr(0, 2), "00");
  std::ofstream(path("bad.csv")) << "channel,timestamp_ps\nclock,zero\n";
  EXPECT_EQ(run("timetag decode --in " + path("bad.csv") + " --out " + path("bad.bin")).code, 3);
}

TEST_F(Cli, Demux) {
  ASSERT_EQ(run("generate --variant 'kind=xor2;widths=127,131' --bits 2000000 --out " + path("d.bin")).code, 0);
  ASSERT_EQ(run("timetag demux --in " + path("d.bin") + " --out " + path("d.txt")).code, 0);
  const std::string symbols = slurp("d.txt");
  EXPECT_EQ(symbols.size(), 1'000'001u);
  EXPECT_EQ(symbols.find_first_not_of("HVDA\n"), std::string::npos);
}

TEST_F(Cli, Taps) {
  const CliRun r = run("taps --width 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "4,3\n");
}
