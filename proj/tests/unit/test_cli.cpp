#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include <json.hpp>

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args) {
    const std::string cmd = std::string(CIRCREG_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) {
        r.out.append(buf.data(), got);
    }
    const int status = pclose(pipe.release());
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST(Cli, DatasetsList) {
    const CliRun r = run("datasets list --format csv");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("# manifest "), std::string::npos);
    EXPECT_NE(r.out.find("blood-pressure,10,deg"), std::string::npos);
}

TEST(Cli, FitJson) {
    const CliRun r = run("fit --dataset wind-milwaukee --format json");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("manifest").at("command"), "fit");
    EXPECT_EQ(j.at("manifest").at("config_hash").get<std::string>().size(), 16u);
    EXPECT_NEAR(j.at("result").at("delta").get<double>(), 0.55, 0.02);
}

TEST(Cli, FitCsvFromFile) {
    const auto path = write_temp("circreg_cli_bp.csv",
                                 "theta,phi\n30,25\n15,5\n11,349\n4,358\n348,340\n347,347\n341,345\n333,331\n"
                                 "332,329\n285,287\n");
    const CliRun r = run("fit --data " + path.string() + " --unit deg --x theta --y phi --format csv");
    std::filesystem::remove(path);
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("n,theta0,theta1,r,delta,mu_pi_4,mu_3pi_4,loglik"), std::string::npos);
    EXPECT_NE(r.out.find("\n10,"), std::string::npos);
}

TEST(Cli, GofSmallB) {
    const CliRun r = run("gof --dataset blood-pressure --B 4 --seed 3 --lambda 0.5 --format csv");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("statistic,observed,p_value"), std::string::npos);
    EXPECT_NE(r.out.find("Tn(0.5),"), std::string::npos);
    EXPECT_NE(r.out.find("Kn,"), std::string::npos);
    EXPECT_EQ(r.out.find("Tn(0.3),"), std::string::npos);
}

TEST(Cli, PowerSmall) {
    const CliRun r = run("power --preset size-109 --n 10 --B 4 --innovation 'WC(0.5)' --alpha 0.05 --alpha 0.1 --format csv");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("alpha,innovation,n10:Tn(0.3)"), std::string::npos);
    EXPECT_NE(r.out.find("\n0.05,WC(0.5),"), std::string::npos);
}

TEST(Cli, AutocorrAndStackplot) {
    const CliRun a = run("autocorr --dataset gene-peaks --column y --max-lag 2 --format csv");
    ASSERT_EQ(a.code, 0);
    EXPECT_NE(a.out.find("lag,n_pairs,correlation,z,p_value"), std::string::npos);
    EXPECT_NE(a.out.find("\n0,38,1"), std::string::npos);
    const CliRun s = run("stackplot-data --dataset blood-pressure --column x");
    ASSERT_EQ(s.code, 0);
    EXPECT_NE(s.out.find("angle,stack\n30,1\n"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("fit --dataset wind-milwaukee --unit furlongs").code, 1);
    EXPECT_EQ(run("fit --dataset no-such-data").code, 2);
    EXPECT_EQ(run("fit --data /nonexistent/file.csv").code, 2);
    const auto empty = write_temp("circreg_cli_empty.csv", "");
    EXPECT_EQ(run("fit --data " + empty.string()).code, 2);
    const auto three = write_temp("circreg_cli_three.csv", "x,y\n1,2\n3,4\n5,6\n");
    EXPECT_EQ(run("fit --data " + three.string()).code, 2);
    const auto constant = write_temp("circreg_cli_const.csv", "x\n10\n10\n10\n10\n10\n");
    EXPECT_EQ(run("autocorr --data " + constant.string() + " --column x").code, 2);
    std::filesystem::remove(empty);
    std::filesystem::remove(three);
    std::filesystem::remove(constant);
}
