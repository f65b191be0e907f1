#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using namespace concentration::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "concentrate");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-0.0) == "0");
    CHECK(make_grid(0.0, 1.0, 0.25).size() == 5);
    CHECK(make_grid(0.0, 1.0, 0.001).back() == 1.0);
}

TEST_CASE("every command succeeds and repeats byte for byte") {
    const std::vector<std::vector<std::string>> commands = {
        {"sweep-coupling", "--t-step", "0.01"},
        {"protocol", "--t-step", "0.1", "--p", "0.85", "--raw-filter", "0.12,0.30"},
        {"cascade", "--t", "0.1", "--n-max", "4"},
        {"hom"},
        {"tomo", "--state", "sigma_III", "--shots", "10000"},
    };
    for (const auto& cmd : commands) {
        for (const char* fmt : {"csv", "json"}) {
            auto args = cmd;
            args.insert(args.begin(), {"--seed", "5", "--format", fmt});
            const auto a = run_cli(args);
            const auto b = run_cli(args);
            CHECK_MESSAGE(a.code == 0, cmd.front() << ": " << a.err);
            CHECK(a.out == b.out);
            CHECK(!a.out.empty());
        }
    }
}

TEST_CASE("output file and config file") {
    const auto dir = std::filesystem::temp_directory_path() / "concentrate_cli_test";
    std::filesystem::create_directories(dir);
    const auto cfg = dir / "run.toml";
    {
        std::ofstream f(cfg);
        f << "seed = 3\nformat = \"json\"\n[tomo]\nstate = \"sigma_II\"\nshots = 10000\n";
    }
    const auto o1 = dir / "a.json", o2 = dir / "b.json";
    CHECK(run_cli({"--config", cfg.string(), "--out", o1.string(), "tomo"}).code == 0);
    CHECK(run_cli({"--config", cfg.string(), "--out", o2.string(), "tomo"}).code == 0);
    const auto text = slurp(o1);
    CHECK(text == slurp(o2));
    CHECK(text.find("\"sigma_II\"") != std::string::npos);
    CHECK(text.find("\"seed\": 3") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("exit codes") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"no-such-command"}).code == 2);
    CHECK(run_cli({"sweep-coupling", "--p", "1.5"}).code == 2);
    CHECK(run_cli({"cascade", "--eps", "0"}).code == 2);
    CHECK(run_cli({"--format", "xml", "hom"}).code == 2);
    CHECK(run_cli({"hom", "--t", "1.0"}).code == 3);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("protocol rows") {
    const auto r = run_cli({"protocol", "--t-grid", "0.4,1.0", "--p", "1"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string header, row04, row1;
    std::getline(in, header);
    std::getline(in, row04);
    std::getline(in, row1);
    CHECK(header.rfind("T,C_coupled,P_coupled,C_measured,P_measured,C_filtered_eps0.05", 0) == 0);
    CHECK(row04.rfind("0.4,0,", 0) == 0);
    CHECK(row1 == "1,1,1,1,0.5,1,0.025,1,0.125");
}
