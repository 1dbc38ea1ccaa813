#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// Exercises the installed binary end to end through a shell, checking exit
// codes, schemas, and byte-level reproducibility.

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
    const char* env = std::getenv("QECLAB_CLI");
    REQUIRE_MESSAGE(env != nullptr, "QECLAB_CLI must point at the built binary");
    return env;
}

fs::path tmp_dir() {
    const char* env = std::getenv("QECLAB_TMP");
    fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "qeclab_cli_test";
    fs::create_directories(dir);
    return dir;
}

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    const fs::path out_file = tmp_dir() / "stdout.txt";
    const std::string command =
        cli_path() + " " + args + " > " + out_file.string() + " 2>/dev/null";
    const int status = std::system(command.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.stdout_text = ss.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("code-info reports the catalog codes") {
    const RunResult shor = run_cli("code-info shor9");
    CHECK(shor.exit_code == 0);
    CHECK(shor.stdout_text.find("n: 9") != std::string::npos);
    CHECK(shor.stdout_text.find("k: 1") != std::string::npos);
    CHECK(shor.stdout_text.find("distance: 3") != std::string::npos);

    const RunResult steane = run_cli("code-info css-hamming");
    CHECK(steane.exit_code == 0);
    CHECK(steane.stdout_text.find("n: 7") != std::string::npos);
    CHECK(steane.stdout_text.find("distance: 3") != std::string::npos);

    const RunResult bitflip = run_cli("code-info bitflip");
    CHECK(bitflip.exit_code == 0);
    CHECK(bitflip.stdout_text.find("distance: 1") != std::string::npos);
    CHECK(bitflip.stdout_text.find("x-only-distance: 3") != std::string::npos);
}

TEST_CASE("unknown ids exit with the usage code") {
    CHECK(run_cli("code-info not-a-code").exit_code == 2);
    CHECK(run_cli("run nonsense").exit_code == 2);
    CHECK(run_cli("gadget nonsense").exit_code == 2);
    CHECK(run_cli("run factor --n 16").exit_code == 2); // even modulus
}

TEST_CASE("unwritable output paths exit with the i/o code") {
    const RunResult r = run_cli(
        "sweep --code bitflip --trials 100 --seed 1 --out /nonexistent-dir/out.csv");
    CHECK(r.exit_code == 3);
}

TEST_CASE("sweep output is byte-identical across reruns and zero at zero noise") {
    const fs::path a = tmp_dir() / "sweep_a.csv";
    const fs::path b = tmp_dir() / "sweep_b.csv";
    const std::string args =
        "sweep --code bitflip --noise-px 0,0.05 --rounds 1 --trials 400 --seed 99 --out ";
    CHECK(run_cli(args + a.string()).exit_code == 0);
    CHECK(run_cli(args + b.string()).exit_code == 0);
    const std::string bytes = slurp(a);
    CHECK(bytes == slurp(b));
    CHECK(bytes.find("# qeclab") == 0);
    CHECK(bytes.find("code,p_x,p_z,p_depol,rounds,trials,logical_rate,ci_low,ci_high,seed") !=
          std::string::npos);
    // the zero-noise grid point reports a zero logical rate
    CHECK(bytes.find("bitflip,0,0,0,1,400,0,") != std::string::npos);
}

TEST_CASE("an x-basis sweep of the bit-flip code tracks the 3p phase-error rate") {
    const RunResult r = run_cli(
        "sweep --code bitflip --noise-pz 0.01 --basis x --trials 20000 --seed 13 --format json");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.stdout_text);
    const double rate = doc["results"][0]["logical_rate"].get<double>();
    // 3p - 6p^2 + 4p^3 = 0.029404 at p = 0.01
    CHECK(std::abs(rate - 0.029404) < 0.005);
}

TEST_CASE("sweep writes json when asked") {
    const RunResult r =
        run_cli("sweep --code phaseflip --noise-pz 0.01 --trials 200 --seed 3 --format json");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.stdout_text);
    CHECK(doc["tool"] == "qeclab");
    CHECK(doc["results"].size() == 1);
    CHECK(doc["results"][0]["code"] == "phaseflip");
    CHECK(doc["results"][0]["trials"] == 200);
}

TEST_CASE("run emits verified answers in the documented schema") {
    const RunResult factor = run_cli("run factor --n 15 --seed 5");
    CHECK(factor.exit_code == 0);
    auto doc = nlohmann::json::parse(factor.stdout_text);
    CHECK(doc["verified"] == true);
    CHECK(doc["answer"][0] == 3);
    CHECK(doc["answer"][1] == 5);
    CHECK(doc["seed"] == 5);

    const RunResult f21 = run_cli("run factor --n 21 --seed 5");
    auto doc21 = nlohmann::json::parse(f21.stdout_text);
    CHECK(doc21["answer"][0] == 3);
    CHECK(doc21["answer"][1] == 7);

    const RunResult simon = run_cli("run simon --n 3 --period 110 --seed 5");
    CHECK(simon.exit_code == 0);
    auto sdoc = nlohmann::json::parse(simon.stdout_text);
    CHECK(sdoc["answer"] == "110");
    CHECK(sdoc["verified"] == true);

    const RunResult dlog = run_cli("run dlog --p 7 --g 3 --y 4 --seed 5");
    CHECK(dlog.exit_code == 0);
    auto ddoc = nlohmann::json::parse(dlog.stdout_text);
    CHECK(ddoc["answer"] == 4);

    const RunResult order = run_cli("run order --n 15 --a 7 --seed 5");
    auto odoc = nlohmann::json::parse(order.stdout_text);
    CHECK(odoc["answer"] == 4);
}

TEST_CASE("gadget demos report their statistics") {
    const RunResult rus = run_cli("gadget rus-rotation --trials 2000 --seed 8");
    CHECK(rus.exit_code == 0);
    auto rdoc = nlohmann::json::parse(rus.stdout_text);
    CHECK(std::abs(rdoc["mean_rounds"].get<double>() - 2.0) < 0.15);
    CHECK(rdoc["min_fidelity"].get<double>() > 1.0 - 1e-10);

    const RunResult toffoli = run_cli("gadget toffoli --seed 2");
    auto tdoc = nlohmann::json::parse(toffoli.stdout_text);
    CHECK(tdoc["min_fidelity"].get<double>() > 1.0 - 1e-10);

    const RunResult cat = run_cli("gadget cat --n 4 --seed 2");
    auto cdoc = nlohmann::json::parse(cat.stdout_text);
    CHECK(cdoc["fidelity"].get<double>() == doctest::Approx(1.0));
    CHECK(cdoc["checks_passed"] == true);
}

TEST_CASE("custom CSS codes load from classical matrix files") {
    const fs::path rep3 = tmp_dir() / "rep3.txt";
    const fs::path full3 = tmp_dir() / "full3.txt";
    std::ofstream(rep3) << "3 1\n111\n";
    std::ofstream(full3) << "3 3\n100\n010\n001\n";
    const RunResult r = run_cli("code-info --css " + rep3.string() + " " + full3.string());
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("n: 3") != std::string::npos);
    CHECK(r.stdout_text.find("x-only-distance: 3") != std::string::npos);

    // a weak-duality violation is a validation error
    const RunResult bad = run_cli("code-info --css " + rep3.string() + " " + rep3.string());
    CHECK(bad.exit_code == 2);
}

TEST_CASE("search finds and serializes a five-qubit distance-3 code") {
    const RunResult r = run_cli("search --n 5 --k 1 --d 3 --budget 200000 --seed 12");
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.stdout_text);
    CHECK(doc["found"] == true);
    CHECK(doc["distance"] == 3);
    const std::string stab_text = doc["stabilizer"];
    CHECK(stab_text.rfind("5 1\n", 0) == 0);

    // the emitted stabilizer file loads back through code-info
    const fs::path stab_file = tmp_dir() / "found.stab";
    std::ofstream out(stab_file);
    out << stab_text;
    out.close();
    const RunResult info = run_cli("code-info " + stab_file.string());
    CHECK(info.exit_code == 0);
    CHECK(info.stdout_text.find("distance: 3") != std::string::npos);

    // and the loaded code can run a memory sweep
    const RunResult sweep = run_cli("sweep --code " + stab_file.string() +
                                    " --noise-depol 0.005 --trials 500 --seed 77");
    CHECK(sweep.exit_code == 0);
    CHECK(sweep.stdout_text.find("file:") != std::string::npos);
}
