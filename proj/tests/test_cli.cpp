#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "ncsym/cli.hpp"
#include "ncsym/json_io.hpp"

using namespace ncsym;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "ncsym_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct RunResult {
    int code = -1;
    std::string out;
};

// Runs the installed binary through the shell, capturing stdout.
RunResult run_binary(const std::string& args, const std::string& tag) {
    const fs::path out = scratch_dir() / (tag + ".out");
    const std::string cmd = std::string("env -u NCSYM_SEED ") + NCSYM_CLI_PATH + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    return r;
}

int run_inprocess(const std::vector<std::string>& args, std::string* out_text = nullptr) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    if (out_text) *out_text = out.str();
    return code;
}

}  // namespace

TEST(Cli, ExpressExitCodes) {
    EXPECT_EQ(run_binary("express 'z*w*z + w*z*w' --generators 'z + w;z*w + w*z' --degree-bound 3", "wolf").code,
              kExitInfeasible);
    EXPECT_EQ(run_binary("express 'z*w + w*z' --generators 'z + w;z*w + w*z'", "sym").code, kExitPass);
    EXPECT_EQ(run_binary("express 'z**w' --generators 'z + w'", "parse").code, kExitUsage);
    EXPECT_EQ(run_binary("express 'z' --degree-bound 2", "nogens").code, kExitUsage);
}

TEST(Cli, ExpressJsonReport) {
    const RunResult r = run_binary("express 'z*w*z + w*z*w' --generators 'z + w' --generators 'z*w + w*z' --json", "wolfjson");
    EXPECT_EQ(r.code, kExitInfeasible);
    const Json j = parse_json_text(r.out);
    EXPECT_EQ(j["expressible"], false);
    EXPECT_NEAR(j["residual"].get<double>(), 0.7071067811865476, 1e-12);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_binary("", "empty").code, kExitUsage);
    EXPECT_EQ(run_binary("frobnicate", "unknown").code, kExitUsage);
    EXPECT_EQ(run_binary("pipeline --k-half abc", "badint").code, kExitUsage);
    EXPECT_EQ(run_binary("pipeline --seed -3", "badseed").code, kExitUsage);
    EXPECT_EQ(run_binary("suite --only ''", "emptyonly").code, kExitUsage);
    EXPECT_EQ(run_binary("--help", "help").code, kExitPass);
}

TEST(Cli, PipelinePassesAndIsDeterministic) {
    const RunResult a = run_binary("pipeline --seed 7 --json", "pipe_a");
    const RunResult b = run_binary("pipeline --seed 7 --json", "pipe_b");
    EXPECT_EQ(a.code, kExitPass);
    EXPECT_EQ(a.out, b.out);
    const Json j = parse_json_text(a.out);
    EXPECT_EQ(j["seed"], 7);
    EXPECT_EQ(j["pass"], true);
}

TEST(Cli, SeedFallsBackToEnvironment) {
    const fs::path out = scratch_dir() / "env_seed.out";
    const std::string cmd = std::string("NCSYM_SEED=7 ") + NCSYM_CLI_PATH + " pipeline --json > " + out.string();
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    EXPECT_EQ(slurp(out), run_binary("pipeline --seed 7 --json", "pipe_c").out);
}

TEST(Cli, PipelineStageFailure) {
    const RunResult r = run_binary("pipeline --tol.verify_fit 1e-300 --json", "tight");
    EXPECT_EQ(r.code, kExitStageFailure);
    const Json j = parse_json_text(r.out);
    EXPECT_EQ(j["pass"], false);
}

TEST(Cli, OutFileMatchesJson) {
    const fs::path file = scratch_dir() / "report.json";
    fs::remove(file);
    std::string printed;
    ASSERT_EQ(run_inprocess({"pipeline", "--k-half", "1", "--levels", "1,2", "--json", "--out", file.string()}, &printed),
              kExitPass);
    EXPECT_EQ(slurp(file), printed);
}

TEST(Cli, SmapReadsPointFile) {
    const fs::path file = scratch_dir() / "point.json";
    {
        std::ofstream f(file);
        f << R"({"components": [{"rows": 1, "cols": 1, "data": [0.5]}, {"rows": 1, "cols": 1, "data": [0.1]}]})";
    }
    std::string printed;
    ASSERT_EQ(run_inprocess({"smap", file.string(), "--truncation", "4", "--json"}, &printed), kExitPass);
    const Json j = parse_json_text(printed);
    const auto& c = j["series"]["coeffs"];
    ASSERT_EQ(c.size(), 4u);
    EXPECT_NEAR(c[1]["data"][0][0].get<double>(), 0.04, 1e-15);

    {
        std::ofstream f(file);
        f << "{\"components\": [";
    }
    EXPECT_EQ(run_inprocess({"smap", file.string()}), kExitUsage);
}

TEST(Cli, SuiteSubsetSummary) {
    std::string printed;
    EXPECT_EQ(run_inprocess({"suite", "--only", "1,2,10"}, &printed), kExitPass);
    EXPECT_NE(printed.find("PASS 1 wolf_inexpressibility"), std::string::npos) << printed;
    EXPECT_NE(printed.find("PASS 10 cayley_identity"), std::string::npos) << printed;
    EXPECT_EQ(run_inprocess({"suite", "--only", "13"}), kExitUsage);
}
