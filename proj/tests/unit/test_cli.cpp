#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(CCNORM_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return {-1, {}};
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

} // namespace

TEST(Cli, eval_prints_json)
{
    const auto r = run("eval --params '{\"eta\":[1,2,3,4]}' --method closed64");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"value", "log_abs", "sign", "method", "precision_bits", "digits_lost"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_NEAR(j["value"].get<double>(), 0.3632171508392203, 1e-15);
    EXPECT_EQ(j["method"], "closed64");
    EXPECT_EQ(j["sign"], 1);
}

TEST(Cli, eval_reads_params_file)
{
    const auto path = std::filesystem::temp_directory_path() / "ccnorm_cli_params.json";
    std::ofstream(path) << R"({"eta_full": [1, 1, 0]})";
    const auto r = run("eval --params " + path.string() + " --method repeated");
    std::filesystem::remove(path);
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(nlohmann::json::parse(r.out)["value"].get<double>(), 1.0, 1e-12);
}

TEST(Cli, compute_errors_exit_one)
{
    EXPECT_EQ(run("eval --params '{\"eta_full\":[1,1,0]}' --method closed64").code, 1);
}

TEST(Cli, usage_errors_exit_two)
{
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("eval --params /nonexistent/params.json").code, 2);
    EXPECT_EQ(run("eval").code, 2);
    EXPECT_EQ(run("eval --params '{\"eta\":[1]}' --method simpson").code, 2);
    EXPECT_EQ(run("eval --params '{\"eta\":[1]}' --method closed64 --tie-tol 0.1").code, 2);
    EXPECT_EQ(run("eval --params '{\"eta\":[1],\"lambda\":[0.5]}'").code, 2);
    EXPECT_EQ(run("bench milestones --seed 1 --out /tmp/x --k-max 10").code, 2);
}

TEST(Cli, convert_round_trip)
{
    const auto r = run("convert --from lambda --params '{\"lambda\":[0.2,0.3,0.5]}'");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["eta"].size(), 2u);
    EXPECT_NEAR(j["eta"][0].get<double>(), std::log(0.4), 1e-15);
    EXPECT_NEAR(j["eta"][1].get<double>(), std::log(0.6), 1e-15);

    const auto back = run("convert --from eta --params '{\"eta\":[" + std::to_string(std::log(0.4)) + "," +
                          std::to_string(std::log(0.6)) + "]}'");
    ASSERT_EQ(back.code, 0);
    EXPECT_NEAR(nlohmann::json::parse(back.out)["lambda"][2].get<double>(), 0.5, 1e-6);
}

TEST(Cli, convert_near_uniform)
{
    const auto r = run("convert --from lambda --params '{\"lambda\":[0.333333,0.333333,0.333334]}'");
    ASSERT_EQ(r.code, 0);
    const auto eta = nlohmann::json::parse(r.out)["eta"];
    ASSERT_EQ(eta.size(), 2u);
    for (const auto& e : eta)
        EXPECT_NEAR(e.get<double>(), -3e-6, 1e-8);
}

TEST(Cli, diag_and_moments)
{
    const auto d = run("diag --params '{\"eta\":[1,2,3,4,5,6,7,8,9]}'");
    ASSERT_EQ(d.code, 0);
    EXPECT_EQ(nlohmann::json::parse(d.out)["region"], "green");

    const auto m = run("moments --values 1,0 --orders 1,0 --backend ad");
    ASSERT_EQ(m.code, 0);
    EXPECT_NEAR(nlohmann::json::parse(m.out)["value"].get<double>(), 1.0 / (std::exp(1.0) - 1.0), 1e-14);
}

TEST(Cli, bench_writes_csv)
{
    const auto dir = std::filesystem::temp_directory_path() / "ccnorm_cli_bench";
    std::filesystem::remove_all(dir);
    const auto r = run("bench fig2 --seed 3 --out " + dir.string() + " --k-max 6 --draws 1 --sigmas 1");
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(std::filesystem::exists(dir / "fig2.csv"));
    std::filesystem::remove_all(dir);
}
