#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "debate/config.hpp"
#include "debate/error.hpp"
#include "debate/machine_io.hpp"

using namespace debate;

namespace {

const std::string kData = DEBATE_DATA_DIR;

std::string error_of(const std::string& text)
{
    try {
        parse_config(text, kData + "/configs");
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

struct CliResult {
    int status = -1;
    std::string output;
};

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("debate_cli_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

CliResult cli(const std::string& args, const std::filesystem::path& dir)
{
    const std::string log = (dir / "stdout.txt").string();
    const std::string cmd = std::string(DEBATE_CLI) + " " + args + " > " + log + " 2>&1";
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.output = read_file(log);
    return r;
}

std::string write(const std::filesystem::path& dir, const std::string& name, const std::string& body)
{
    const auto path = dir / name;
    std::ofstream(path) << body;
    return path.string();
}

} // namespace

TEST(Config, ParsesTheShippedExamples)
{
    for (const auto& entry : std::filesystem::directory_iterator(kData + "/configs")) {
        EXPECT_NO_THROW(load_config(entry.path().string())) << entry.path();
    }
    const LoadedConfig lc = load_config(kData + "/configs/stochastic_soundness_sweep.cfg");
    EXPECT_EQ(lc.experiment.family.size(), 7u);
    EXPECT_EQ(lc.experiment.family_side, Party::A);
    EXPECT_EQ(lc.experiment.trials, 400u);
    EXPECT_EQ(lc.experiment.seed, std::optional<std::uint64_t>(12));
    EXPECT_EQ(lc.expect_max, std::optional<UnitRational>(UnitRational(2, 5)));
    EXPECT_EQ(lc.experiment.subject.program->name(), "majority3_file");
}

TEST(Config, ErrorsNameTheLine)
{
    EXPECT_NE(error_of("protocol = crossexam\nprogram = catalogue:majority3\nbogus = 1\n").find("line 3"), std::string::npos);
    EXPECT_NE(error_of("protocol = crossexam\n\nseed = 1\nseed = 2\n").find("line 4"), std::string::npos);
    EXPECT_NE(error_of("protocol = crossexam\nprogram = catalogue:majority3\ntrials = -4\n").find("line 3"),
              std::string::npos);
    EXPECT_NE(error_of("protocol = stochastic\nprogram = catalogue:nope\n").find("line 2"), std::string::npos);
    EXPECT_NE(error_of("protocol = stochastic\nprogram = catalogue:majority3\nA = Sneaky\n").find("line 3"),
              std::string::npos);
    EXPECT_NE(error_of("protocol = stochastic\njust words\n").find("line 2"), std::string::npos);
    EXPECT_FALSE(error_of("protocol = bisection\n").empty());
}

TEST(Config, OverridesTakePrecedence)
{
    ConfigOverrides o;
    o.seed = 99;
    o.trials = 5;
    o.mode = ParamMode::Scaled;
    o.out_dir = "/tmp/x";
    o.trace = true;
    const LoadedConfig lc = load_config(kData + "/configs/stochastic_completeness.cfg", o);
    EXPECT_EQ(lc.experiment.seed, std::optional<std::uint64_t>(99));
    EXPECT_EQ(lc.experiment.trials, 5u);
    EXPECT_EQ(lc.experiment.subject.params.mode, ParamMode::Scaled);
    EXPECT_EQ(lc.experiment.subject.params.c_d, 5u);
    EXPECT_EQ(lc.experiment.out_dir, "/tmp/x");
    EXPECT_TRUE(lc.experiment.trace);
}

TEST(Config, PaperModeRejectsTunedConstants)
{
    EXPECT_FALSE(error_of("protocol = stochastic\nprogram = catalogue:majority3\nmode = paper\nc_d = 5\n").empty());
    EXPECT_TRUE(error_of("protocol = stochastic\nprogram = catalogue:majority3\nmode = scaled\nc_d = 5\n").empty());
}

TEST(Cli, RunDebatePrintsTheVerdict)
{
    const auto dir = scratch("run");
    const CliResult r = cli("run-debate --config " + kData + "/configs/bisection_or2.cfg --out " + dir.string(), dir);
    EXPECT_EQ(r.status, 0) << r.output;
    EXPECT_NE(r.output.find("verdict 1"), std::string::npos) << r.output;
    EXPECT_TRUE(std::filesystem::exists(dir / "run-debate.txt"));
}

TEST(Cli, MissingSeedIsAUsageError)
{
    const auto dir = scratch("noseed");
    const std::string cfg = write(dir, "c.cfg", "protocol = crossexam\nprogram = catalogue:majority3\noracle = constant 1 1\ninput = 1\n");
    const CliResult r = cli("run-debate --config " + cfg + " --out " + dir.string(), dir);
    EXPECT_EQ(r.status, 2) << r.output;
    EXPECT_NE(r.output.find("seed"), std::string::npos) << r.output;
    EXPECT_EQ(cli("run-debate --config " + cfg + " --seed 4 --out " + dir.string(), dir).status, 0);
}

TEST(Cli, UsageAndConfigErrorsExitTwo)
{
    const auto dir = scratch("usage");
    EXPECT_EQ(cli("", dir).status, 2);
    EXPECT_EQ(cli("run-debate --config " + kData + "/configs/bisection_or2.cfg --frobnicate", dir).status, 2);
    EXPECT_EQ(cli("experiment --config " + kData + "/configs/bisection_or2.cfg --mode turbo", dir).status, 2);
    const std::string bad = write(dir, "bad.cfg", "protocol = crossexam\nprogram = catalogue:majority3\ncolour = red\n");
    const CliResult r = cli("experiment --seed 1 --config " + bad, dir);
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.output.find("line 3"), std::string::npos) << r.output;
}

TEST(Cli, FailedExpectationExitsOne)
{
    const auto dir = scratch("expect");
    const std::string cfg = write(dir, "c.cfg",
                                  "protocol = stochastic\nprogram = catalogue:majority3\noracle = constant 1 1/10\n"
                                  "input = 1\nmode = scaled\ntrials = 50\nseed = 1\nexpect_min = 1/2\n");
    EXPECT_EQ(cli("experiment --config " + cfg + " --out " + dir.string(), dir).status, 1);
}

TEST(Cli, ReportsAreByteIdenticalForTheSameSeed)
{
    const auto d1 = scratch("rep1");
    const auto d2 = scratch("rep2");
    const std::string cfg = kData + "/configs/matrix_majority.cfg";
    ASSERT_EQ(cli("matrix --config " + cfg + " --trials 40 --out " + d1.string(), d1).status, 0);
    ASSERT_EQ(cli("matrix --config " + cfg + " --trials 40 --out " + d2.string(), d2).status, 0);
    EXPECT_EQ(read_file((d1 / "matrix.json").string()), read_file((d2 / "matrix.json").string()));
    EXPECT_EQ(read_file((d1 / "matrix.csv").string()), read_file((d2 / "matrix.csv").string()));
    const std::string csv = read_file((d1 / "matrix.csv").string());
    EXPECT_NE(csv.find("estimate,ci_lo,ci_hi"), std::string::npos);
}

TEST(Cli, CheckExhaustivePasses)
{
    const auto dir = scratch("exhaustive");
    const CliResult r = cli("check-exhaustive --out " + dir.string(), dir);
    EXPECT_EQ(r.status, 0) << r.output;
    EXPECT_NE(r.output.find("counterexamples=0"), std::string::npos) << r.output;
    EXPECT_EQ(cli("check-exhaustive --fault skip-final-check --out " + dir.string(), dir).status, 1);
}
