#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the installed command-line surface. The binary path
// and golden directory come from the build system.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(ACHSET_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer;
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

nlohmann::json run_json(const std::string& args) {
  const RunResult result = run_cli(args);
  REQUIRE(result.exit_code == 0);
  return nlohmann::json::parse(result.output);
}

// Drops the "# achset <version>" header line so goldens survive releases.
std::string strip_version_header(const std::string& text) {
  if (text.rfind("# achset ", 0) == 0) {
    const auto nl = text.find('\n');
    return nl == std::string::npos ? std::string() : text.substr(nl + 1);
  }
  return text;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("cli thresholds") {
  const nlohmann::json doc = run_json("thresholds --function identity --coeffs 4,3,2,2");
  CHECK(doc["schema"] == "achset.thresholds/1");
  CHECK(doc["config"]["command"] == "thresholds");
  CHECK(doc["config"]["function"] == "identity");
  CHECK(doc["config"]["coefficients"].size() == 4);
  const auto& result = doc["result"];
  CHECK(result["d_CI"].get<double>() == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(result["d_NI"].get<double>() == doctest::Approx(2.0 / 13.0).epsilon(1e-12));
  CHECK(result["ap"]["s"] == 7);
  CHECK(result["cantorval_window"]["lower"].get<double>() == doctest::Approx(0.125));

  const nlohmann::json one = run_json("thresholds --function identity --coeffs 1");
  for (const char* key : {"d_I", "d_IM", "d_NI", "d_C"})
    CHECK(one["result"][key].get<double>() == doctest::Approx(0.5).epsilon(1e-15));

  const nlohmann::json env =
      run_json("thresholds --envelope a=0.5403,b=1,r=1,eps=1 --coeffs 1");
  CHECK(env["result"]["d_IM"].get<double>() ==
        doctest::Approx(1.0 / (1.0 + 0.5403)).epsilon(1e-12));

  const nlohmann::json exact =
      run_json("thresholds --function identity --coeffs 3,2 --mode exact");
  CHECK(exact["result"]["radicands"]["d_I"] == "2/7");
  CHECK(exact["result"]["radicands"]["d_C"] == "1/6");
  CHECK(exact["result"]["radicands"]["d_IM"] == "1/2");
}

TEST_CASE("cli classify") {
  CHECK(run_json("classify --function identity --coeffs 4,3,2,2 --x 0.13")["result"]["verdict"]
            ["label"] == "Cantorval");
  CHECK(run_json("classify --function identity --coeffs 1 --x 0.75")["result"]["verdict"]["label"] ==
        "Interval");
  const nlohmann::json exact =
      run_json("classify --function identity --coeffs 4,3,2,2 --x 13/100 --mode exact");
  CHECK(exact["result"]["verdict"]["label"] == "Cantorval");
  CHECK(exact["config"]["x"] == "13/100");

  // x beyond the declared envelope radius is a config validation error.
  CHECK(run_cli("classify --envelope a=1,b=1,r=1,eps=0.5 --coeffs 2,1 --x 0.99").exit_code == 2);
}

TEST_CASE("cli validation failures exit with code 2") {
  CHECK(run_cli("thresholds --function nope --coeffs 1").exit_code == 2);
  CHECK(run_cli("thresholds --coeffs 1").exit_code == 2);  // no function or envelope
  CHECK(run_cli("thresholds --function identity --envelope a=1,b=1,r=1,eps=1 --coeffs 1")
            .exit_code == 2);
  CHECK(run_cli("thresholds --function identity --coeffs 2,3").exit_code == 2);
  CHECK(run_cli("classify --function identity --coeffs 1 --x 1.5").exit_code == 2);
  CHECK(run_cli("enumerate --function identity --coeffs 1 --x 0.5 --depth 30").exit_code == 2);
  CHECK(run_cli("enumerate --function sin --coeffs 1 --x 0.5 --mode exact").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("cli enumerate") {
  const nlohmann::json doc = run_json(
      "enumerate --function identity --coeffs 3,2 --x 1/4 --depth 2 --mode exact");
  CHECK(doc["result"]["points"] ==
        nlohmann::json::array({"0", "1/2", "3/4", "5/4"}));
  CHECK(doc["result"]["tail_radius"] == "5/12");
  CHECK(doc["result"]["point_count"] == 4);

  const nlohmann::json mid = run_json(
      "enumerate --function identity --coeffs 2 --x 1/3 --depth 1 --mode exact");
  CHECK(mid["result"]["gaps"]["list"].size() == 1);
  CHECK(mid["result"]["gaps"]["largest"][0] == "1/3");
  CHECK(mid["result"]["gaps"]["largest"][1] == "1/3");

  const RunResult csv = run_cli(
      "enumerate --function identity --coeffs 3,2 --x 1/4 --depth 2 --mode exact --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(strip_version_header(csv.output) == "point\n0\n1/2\n3/4\n5/4\n");

  // The environment variable overrides the depth cap in both directions.
  const std::string deep = "enumerate --function identity --coeffs 1 --x 0.4 --depth 10";
  auto with_cap = [&](int cap) {
    const std::string command = "ACHSET_DEPTH_CAP=" + std::to_string(cap) + " " +
                                std::string(ACHSET_CLI_PATH) + " " + deep + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  CHECK(run_cli(deep).exit_code == 0);
  CHECK(with_cap(8) == 2);
  CHECK(with_cap(12) == 0);
}

TEST_CASE("cli kakeya and ap-search") {
  const nlohmann::json cantor =
      run_json("kakeya --function identity --coeffs 2 --x 0.333333333333333315 --n-max 32");
  CHECK(cantor["result"]["certified"] == "cantor");
  const nlohmann::json interval =
      run_json("kakeya --function identity --coeffs 1 --x 0.6 --n-max 32");
  CHECK(interval["result"]["certified"] == "compact-interval");
  CHECK(interval["result"]["residue"]["all_le"] == true);

  const nlohmann::json ap = run_json("ap-search --coeffs 4,3,2,2");
  CHECK(ap["result"]["s"] == 7);
  CHECK(ap["result"]["mu"].get<double>() == doctest::Approx(2.0));
  CHECK(ap["result"]["lambda"].get<double>() == doctest::Approx(1.0));
  const nlohmann::json ap_exact = run_json("ap-search --coeffs 4,3,2,2 --mode exact");
  CHECK(ap_exact["result"]["mu"] == "2");
  CHECK(ap_exact["result"]["alphabet_size"] == 10);
}

TEST_CASE("cli minkowski-check") {
  const nlohmann::json doc = run_json("minkowski-check --coeffs 3,2 --x 1/4 --blocks 6");
  CHECK(doc["result"]["all_equal"] == true);
  CHECK(doc["result"]["partitions"].size() == 1);
  CHECK(doc["result"]["partitions"][0]["equal"] == true);
}

TEST_CASE("cli output is deterministic") {
  const std::string args = "thresholds --function sin --coeffs 3,2,1";
  CHECK(run_cli(args).output == run_cli(args).output);
  const std::string sweep_args =
      "sweep --function identity --coeffs 3,2 --x-min 0.05 --x-max 0.95 --steps 7";
  CHECK(run_cli(sweep_args).output == run_cli(sweep_args).output);
}

TEST_CASE("cli sweep matches the golden files") {
  const struct {
    const char* coeffs;
    const char* file;
  } cases[] = {
      {"1", "sweep_k1.csv"},
      {"3,2", "sweep_k32.csv"},
      {"4,3,2,2", "sweep_k4322.csv"},
  };
  for (const auto& c : cases) {
    const RunResult got = run_cli(std::string("sweep --function identity --coeffs ") + c.coeffs +
                                  " --x-min 0.01 --x-max 0.99 --steps 50");
    REQUIRE(got.exit_code == 0);
    const std::string want = read_file(std::string(ACHSET_GOLDEN_DIR) + "/" + c.file);
    CHECK(strip_version_header(got.output) == strip_version_header(want));
  }
}

TEST_CASE("cli sweep emits explicit threshold rows") {
  const RunResult got = run_cli(
      "sweep --function identity --coeffs 4,3,2,2 --x-min 0.01 --x-max 0.99 --steps 5");
  REQUIRE(got.exit_code == 0);
  CHECK(got.output.find("0.125,Cantorval,d_CI") != std::string::npos);
  CHECK(got.output.find("d_I|d_NI") != std::string::npos);  // coinciding thresholds share a row
}
