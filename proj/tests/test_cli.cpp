// End-to-end checks of the command-line front end: spawns the installed
// binary, captures its streams, and inspects exit codes and artifacts.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir() {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() /
                         ("ergolab-cli-" + std::to_string(::getpid()) + "-" +
                          std::to_string(counter++));
    fs::create_directories(dir);
    return dir;
}

RunResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path out_file = dir / "stdout.txt";
    const fs::path err_file = dir / "stderr.txt";
    const std::string command = std::string("\"") + ERGOLAB_CLI_PATH + "\" " + args + " > \"" +
                                out_file.string() + "\" 2> \"" + err_file.string() + "\"";
    const int status = std::system(command.c_str());
    RunResult result;
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
}

void write_manifest(const fs::path& path, const nlohmann::json& manifest) {
    std::ofstream os(path, std::ios::binary);
    os << manifest.dump(2) << "\n";
    REQUIRE(os.good());
}

}  // namespace

TEST_CASE("cli: --help names every subcommand and the environment knob") {
    const fs::path dir = fresh_dir();
    const RunResult r = run_cli("--help", dir);
    CHECK(r.code == 0);
    for (const char* word : {"simulate", "density", "hjb", "sweep", "diagnose",
                             "ERGOLAB_THREADS"}) {
        CHECK(r.out.find(word) != std::string::npos);
    }
}

TEST_CASE("cli: usage errors exit 2 with one-line JSON on stderr") {
    const fs::path dir = fresh_dir();

    const RunResult bad_flag = run_cli("simulate --no-such-flag", dir);
    CHECK(bad_flag.code == 2);
    const auto j = nlohmann::json::parse(bad_flag.err);
    CHECK(j.at("error") == "usage");
    CHECK(j.at("exit_code") == 2);

    const RunResult no_command = run_cli("", dir);
    CHECK(no_command.code == 2);

    const RunResult bad_model = run_cli("simulate --mu -1 --horizon 1", dir);
    CHECK(bad_model.code == 2);
}

TEST_CASE("cli: manifest problems are parse errors") {
    const fs::path dir = fresh_dir();

    const fs::path broken = dir / "broken.json";
    {
        std::ofstream os(broken);
        os << "{ not json";
    }
    const RunResult parse = run_cli("simulate --config \"" + broken.string() + "\"", dir);
    CHECK(parse.code == 2);
    CHECK(parse.err.find("config parse error") != std::string::npos);

    const fs::path typo = dir / "typo.json";
    write_manifest(typo, {{"modle", nlohmann::json::object()}});
    const RunResult unknown = run_cli("simulate --config \"" + typo.string() + "\"", dir);
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("unknown key") != std::string::npos);

    const RunResult missing = run_cli("simulate --config \"" + (dir / "absent.json").string() +
                                          "\"",
                                      dir);
    CHECK(missing.code == 2);
}

TEST_CASE("cli: a small run writes the summary it prints") {
    const fs::path dir = fresh_dir();
    const fs::path man = dir / "man.json";
    write_manifest(man, {{"model", {{"mu", 1.0}, {"cap", 3.0}}},
                         {"sim", {{"dt", 1e-3}, {"horizon", 2.0}, {"paths", 3}, {"seed", 7}}},
                         {"out", (dir / "A").string()}});
    const RunResult r = run_cli("simulate --config \"" + man.string() + "\"", dir);
    REQUIRE(r.code == 0);

    const std::string file_text = slurp(dir / "A" / "summary.json");
    CHECK(r.out == file_text);

    const auto summary = nlohmann::json::parse(file_text);
    CHECK(summary.at("config").at("command") == "simulate");
    CHECK(summary.at("config").at("sim").at("seed") == 7);
    CHECK(summary.at("config").at("sim").at("paths") == 3);
    CHECK(summary.at("config").at("strategy").at("type") == "piecewise");
    CHECK(summary.at("ensemble").at("n_paths") == 3);

    // A flag beats the manifest for the same knob.
    const RunResult over = run_cli(
        "simulate --config \"" + man.string() + "\" --seed 9 --out \"" + (dir / "B").string() +
            "\"",
        dir);
    REQUIRE(over.code == 0);
    const auto summary_b = nlohmann::json::parse(slurp(dir / "B" / "summary.json"));
    CHECK(summary_b.at("config").at("sim").at("seed") == 9);
}

TEST_CASE("cli: same manifest, byte-identical artifacts") {
    const fs::path dir = fresh_dir();
    const fs::path man = dir / "man.json";
    write_manifest(man,
                   {{"sim", {{"dt", 1e-3}, {"horizon", 2.0}, {"paths", 1}, {"seed", 11},
                             {"record_stride", 100}}},
                    {"simulate", {{"trajectory", true}}}});
    const std::string base = "simulate --config \"" + man.string() + "\" --out \"";
    REQUIRE(run_cli(base + (dir / "R1").string() + "\"", dir).code == 0);
    REQUIRE(run_cli(base + (dir / "R2").string() + "\"", dir).code == 0);

    CHECK(slurp(dir / "R1" / "summary.json") == slurp(dir / "R2" / "summary.json"));
    const std::string csv = slurp(dir / "R1" / "trajectory.csv");
    CHECK(csv == slurp(dir / "R2" / "trajectory.csv"));
    CHECK(csv.rfind("t,x,reward_integral\n", 0) == 0);
}

TEST_CASE("cli: trajectory output demands a single path") {
    const fs::path dir = fresh_dir();
    const RunResult r =
        run_cli("simulate --trajectory --paths 2 --horizon 1 --out \"" + (dir / "T").string() +
                    "\"",
                dir);
    CHECK(r.code == 2);
    CHECK(r.err.find("paths = 1") != std::string::npos);
}

TEST_CASE("cli: a blown-up simulation is a numerical failure, exit 1") {
    const fs::path dir = fresh_dir();
    // Withdraw nothing and start near the guard: the drift walks the path out.
    const RunResult r = run_cli(
        "simulate --mu 2 --rate 0 --x-init 999990 --horizon 20 --paths 2 --out \"" +
            (dir / "F").string() + "\"",
        dir);
    CHECK(r.code == 1);
    const auto j = nlohmann::json::parse(r.err);
    CHECK(j.at("error") == "numerical");
    CHECK(j.at("exit_code") == 1);
    CHECK(j.at("message").get<std::string>().find("paths failed") != std::string::npos);
}

TEST_CASE("cli: closed-form density summary carries the split") {
    const fs::path dir = fresh_dir();
    const RunResult r =
        run_cli("density --mode closed --c 3 --out \"" + (dir / "D").string() + "\"", dir);
    REQUIRE(r.code == 0);
    const auto summary = nlohmann::json::parse(slurp(dir / "D" / "summary.json"));
    CHECK(summary.at("closed").at("p_plus").get<double>() == 1.0 / 3.0);
    CHECK(summary.at("closed").at("stationary_reward").get<double>() == 1.0);
    CHECK(slurp(dir / "D" / "density_closed.csv").rfind("x,p\n", 0) == 0);
}
