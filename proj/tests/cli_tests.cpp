// Integration tests driving the cheqlab binary; the path arrives as argv[1].

#define DOCTEST_CONFIG_IMPLEMENT
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <string>

#include "doctest.h"

namespace {

std::string g_binary;
std::filesystem::path g_dir;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + g_binary + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string path_of(const std::string& name) { return (g_dir / name).string(); }

std::string strip_timings(std::string json) {
  static const std::regex elapsed(R"("elapsed_ms":\s*[0-9.eE+-]+,?)");
  return std::regex_replace(json, elapsed, "");
}

}  // namespace

TEST_CASE("build writes frames and reports counts") {
  RunResult fork = run("build fork 1 --out " + path_of("f1.json"));
  CHECK(fork.exit_code == 0);
  CHECK(fork.output.find("points=3 covers=2") != std::string::npos);
  CHECK(run("build cheq 2 --out " + path_of("f2.json")).output.find(
            "points=9 covers=12") != std::string::npos);
  CHECK(run("build cheq 3 --out " + path_of("f3.json")).exit_code == 0);
  CHECK(run("build medvedev 1 --out " + path_of("m1.json")).exit_code == 0);
  CHECK(run("build medvedev 2 --out " + path_of("m2.json")).output.find(
            "points=7") != std::string::npos);
  CHECK(run("build medvedev 4 --out " + path_of("m4.json")).exit_code == 0);
  RunResult h = run("build h 0 --out " + path_of("h.json"));
  CHECK(h.exit_code == 0);
  CHECK(h.output.find("points=7 covers=10") != std::string::npos);
}

TEST_CASE("build usage and budget errors") {
  CHECK(run("build nosuch 1").exit_code == 2);
  CHECK(run("build").exit_code == 2);
  CHECK(run("build cheq 0").exit_code == 2);
  CHECK(run("build cheq 99").exit_code == 3);
}

TEST_CASE("check: validity, countermodels, errors") {
  RunResult kp = run("check " + path_of("f2.json") + " kp");
  CHECK(kp.exit_code == 1);
  CHECK(kp.output.find("countermodel") != std::string::npos);
  CHECK(kp.output.find("point: 00") != std::string::npos);

  CHECK(run("check " + path_of("f1.json") + " sa").exit_code == 0);
  CHECK(run("check " + path_of("f1.json") + " \"p -> p\"").exit_code == 0);
  CHECK(run("check " + path_of("f1.json") + " \"p ->\"").exit_code == 2);
  CHECK(run("check " + path_of("missing.json") + " p").exit_code == 2);
  CHECK(run("check " + path_of("f2.json") + " kp --budget 100").exit_code == 3);
}

TEST_CASE("morphism: search, verify, exit codes") {
  RunResult hit = run("morphism " + path_of("f2.json") + " " + path_of("h.json") +
                      " --onto --deterministic --out " + path_of("f2h.map"));
  CHECK(hit.exit_code == 0);
  CHECK(hit.output.find("p-morphism found") != std::string::npos);

  RunResult verify = run("morphism " + path_of("f2.json") + " " +
                         path_of("h.json") + " --onto --map " + path_of("f2h.map"));
  CHECK(verify.exit_code == 0);
  CHECK(verify.output.find("verified") != std::string::npos);

  RunResult miss = run("morphism " + path_of("m4.json") + " " + path_of("h.json") +
                       " --onto --deterministic");
  CHECK(miss.exit_code == 1);
  CHECK(miss.output.find("definitive") != std::string::npos);

  CHECK(run("morphism " + path_of("f1.json") + " " + path_of("m1.json") +
            " --onto").exit_code == 0);

  // corrupt the stored map: swap the images of a top point (id 0) and the
  // root (id 8), which must break monotonicity
  {
    std::ifstream in(path_of("f2h.map"));
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    in.close();
    std::smatch m0, m8;
    std::regex p0(R"(\[0,(\d+)\])"), p8(R"(\[8,(\d+)\])");
    REQUIRE(std::regex_search(text, m0, p0));
    REQUIRE(std::regex_search(text, m8, p8));
    const std::string img0 = m0[1].str(), img8 = m8[1].str();
    text = std::regex_replace(text, p0, "[0," + img8 + "]");
    text = std::regex_replace(text, p8, "[8," + img0 + "]");
    std::ofstream out(path_of("f2h_bad.map"));
    out << text;
  }
  RunResult bad = run("morphism " + path_of("f2.json") + " " + path_of("h.json") +
                      " --onto --map " + path_of("f2h_bad.map"));
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("violation") != std::string::npos);
}

TEST_CASE("the CHEQLAB_BUDGET variable caps the search") {
  RunResult r = run("morphism " + path_of("m4.json") + " " + path_of("h.json") +
                        " --onto --deterministic",
                    "CHEQLAB_BUDGET=10");
  CHECK(r.exit_code == 3);
  // an explicit flag overrides the environment
  RunResult ok = run("morphism " + path_of("m2.json") + " " + path_of("h.json") +
                         " --onto --deterministic --budget 100000",
                     "CHEQLAB_BUDGET=1");
  CHECK(ok.exit_code == 1);
}

TEST_CASE("export-dot renders the Hasse diagram") {
  RunResult dot = run("export-dot " + path_of("f1.json"));
  CHECK(dot.exit_code == 0);
  CHECK(dot.output.find("digraph") != std::string::npos);
  CHECK(dot.output.find("\"0\" -> \"-\"") != std::string::npos);
  CHECK(run("export-dot " + path_of("missing.json")).exit_code == 2);
}

TEST_CASE("verify-paper quick profile is deterministic") {
  RunResult a = run("verify-paper --profile quick --deterministic --json");
  RunResult b = run("verify-paper --profile quick --deterministic --json");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(strip_timings(a.output) == strip_timings(b.output));
  CHECK(a.output.find("\"all_pass\": true") != std::string::npos);
  CHECK(run("verify-paper --profile nosuch").exit_code == 2);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <path-to-cheqlab-binary>\n");
    return 2;
  }
  g_binary = argv[1];
  g_dir = std::filesystem::temp_directory_path() / "cheqlab_cli_tests";
  std::filesystem::create_directories(g_dir);
  doctest::Context ctx;
  int rc = ctx.run();
  std::filesystem::remove_all(g_dir);
  return rc;
}
