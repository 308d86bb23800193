#include "doctest.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(ALPHAGAN_CLI) + " " + args + " 2>&1";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("alphagan_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

const char* kSmallRun = " --epochs 2 --n-train 512 --batch 128 --n-eval 500 --n-val 100 --runs 1 --seed 3";

}  // namespace

TEST_CASE("train writes schema-stable outputs") {
    const fs::path dir = scratch("train");
    const Result r = run("train --alpha 2 --noise-pct 10" + std::string(kSmallRun) + " --out " + dir.string());
    CHECK(r.code == 0);
    const std::string results = slurp(dir / "results.csv");
    CHECK(results.rfind("alpha,noise_pct,run,modes,pct_odd,tvd,jsd\n2,10,0,", 0) == 0);
    CHECK(slurp(dir / "trace_run0.csv").rfind("epoch,mean_D_real,mean_D_gen,mean_D_val\n1,", 0) == 0);
    CHECK(fs::exists(dir / "generator_run0.txt"));
    CHECK(fs::exists(dir / "discriminator_run0.txt"));
    const std::string hist = slurp(dir / "histogram_alpha2_noise10.csv");
    CHECK(std::count(hist.begin(), hist.end(), '\n') == 128);
}

TEST_CASE("train is deterministic under a seed") {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    CHECK(run("train --alpha inf" + std::string(kSmallRun) + " --out " + a.string()).code == 0);
    CHECK(run("train --alpha inf" + std::string(kSmallRun) + " --out " + b.string()).code == 0);
    CHECK(slurp(a / "results.csv") == slurp(b / "results.csv"));
    CHECK(slurp(a / "trace_run0.csv") == slurp(b / "trace_run0.csv"));
}

TEST_CASE("json format mirrors csv fields") {
    const fs::path dir = scratch("json");
    CHECK(run("train --alpha 1 --format json" + std::string(kSmallRun) + " --out " + dir.string()).code == 0);
    const std::string json = slurp(dir / "results.json");
    for (const char* key : {"\"alpha\"", "\"noise_pct\"", "\"run\"", "\"modes\"", "\"pct_odd\"", "\"tvd\"", "\"jsd\""}) {
        CHECK(json.find(key) != std::string::npos);
    }
    CHECK(fs::exists(dir / "trace_run0.json"));
}

TEST_CASE("invalid arguments are usage errors") {
    CHECK(run("train --alpha -1").code != 0);
    CHECK(run("train --alpha 0").code != 0);
    CHECK(run("train --noise-pct 150").code != 0);
    CHECK(run("train --format xml").code != 0);
    CHECK(run("nosuchcommand").code != 0);
    CHECK(run("verify --suite nosuchsuite").code != 0);
}

TEST_CASE("sweep writes one row per run") {
    const fs::path dir = scratch("sweep");
    const Result r = run("sweep --alpha 1,inf --noise-pct 0,20" + std::string(kSmallRun) + " --workers 2 --out " +
                         dir.string());
    CHECK(r.code == 0);
    const std::string results = slurp(dir / "results.csv");
    CHECK(std::count(results.begin(), results.end(), '\n') == 5);
    CHECK(fs::exists(dir / "cells.csv"));
}

TEST_CASE("divergence subcommand") {
    const fs::path dir = scratch("div");
    std::ofstream(dir / "p.txt") << "0,0.7\n1,0.3\n";
    std::ofstream(dir / "q.txt") << "0,0.3\n1,0.7\n";
    std::ofstream(dir / "bad.txt") << "0,0.7\n1,0.7\n";
    const Result r = run("divergence --p " + (dir / "p.txt").string() + " --q " + (dir / "q.txt").string());
    CHECK(r.code == 0);
    CHECK(r.out.find("tvd,,0.4") != std::string::npos);
    CHECK(r.out.find("arimoto,inf,0.4") != std::string::npos);
    CHECK(r.out.find("jsd,,0.0822828785") != std::string::npos);
    const Result bad = run("divergence --p " + (dir / "bad.txt").string() + " --q " + (dir / "q.txt").string());
    CHECK(bad.code == 1);
    CHECK(bad.out.find("error:") != std::string::npos);
    CHECK(run("divergence --p " + (dir / "missing.txt").string() + " --q " + (dir / "q.txt").string()).code != 0);
}

TEST_CASE("bounds subcommand") {
    const Result r = run("bounds --alpha 2 --n 100,400 --m 100");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("alpha,n,m,C_Qx,C_Qz,bound\n", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
    CHECK(run("bounds --delta 1.5").code != 0);
}

TEST_CASE("verify subcommand") {
    const Result r = run("verify --suite sandwich --iters 50");
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS sandwich") != std::string::npos);
    CHECK(r.out.find("identities") == std::string::npos);
    CHECK(run("verify --suite equilibrium --suite bounds").code == 0);
}
