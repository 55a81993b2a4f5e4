#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qinvar/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qinvar::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::initializer_list<std::string> args) {
  std::vector<std::string> words{"qinvar"};
  words.insert(words.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& w : words) argv.push_back(w.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qinvar_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

void dump(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f << text;
}

// Runs the installed binary in a separate process; returns its exit status.
int run_tool(const std::string& args, std::string* output = nullptr) {
  const std::string cmd = std::string(QINVAR_TOOL_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string text;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, n);
  const int status = pclose(pipe);
  if (output) *output = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("classify exit codes") {
  const Run ok = run({"--json", "classify", "0.5", "0.5", "0.5"});
  CHECK(ok.code == kOk);
  const json j = json::parse(ok.out);
  CHECK(j["class"] == "StrictlyComplexQuantum");
  CHECK(j["K"] == 0.25);

  const Run none = run({"classify", "0.9", "0.9", "0.1"});
  CHECK(none.code == kNegative);
  CHECK(none.out.find("NoQuantumModel") != std::string::npos);

  const Run bad = run({"classify", "1.0", "0.5", "0.5"});
  CHECK(bad.code == kUsage);
  CHECK(bad.err.find("p") != std::string::npos);

  CHECK(run({"classify", "0.5", "0.5"}).code == kUsage);
  CHECK(run({"classify", "0.5", "x", "0.5"}).code == kUsage);
  CHECK(run({"frobnicate"}).code == kUsage);
}

TEST_CASE("classify reports every equivalent form") {
  const json j = json::parse(run({"--json", "classify", "0.3", "0.6", "0.5"}).out);
  for (const char* key : {"K", "cos_form", "normalized_form", "halfangle_form", "r_interval",
                          "real_branch_distance", "class"}) {
    CHECK(j.contains(key));
  }
}

TEST_CASE("eps-k widens the real band") {
  const json narrow = json::parse(run({"--json", "classify", "0.5", "0.5", "0.0001"}).out);
  CHECK(narrow["class"] == "StrictlyComplexQuantum");
  const json wide =
      json::parse(run({"--json", "--eps-k", "1e-3", "classify", "0.5", "0.5", "0.0001"}).out);
  CHECK(wide["class"] == "RealQuantum");
}

TEST_CASE("synthesize orthogonal document") {
  const Run r = run({"synthesize", "0.5", "0.5", "0.5", "--values", "1,-1,1,-1,1,-1"});
  REQUIRE(r.code == kOk);
  const json doc = json::parse(r.out);
  const std::vector<std::vector<double>> want{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(doc["observables"][i]["bloch_vector"][k].get<double>() - want[i][k]) <= 1e-15);
    }
  }
  CHECK(doc["real_embedding"] == false);
}

TEST_CASE("synthesize saturated input gives a real document") {
  const Run r = run({"synthesize", "0.85355339059327373", "0.85355339059327373", "0.5"});
  REQUIRE(r.code == kOk);
  const json doc = json::parse(r.out);
  CHECK(doc["classification"]["class"] == "RealQuantum");
  CHECK(doc["real_embedding"] == true);
  for (const json& o : doc["observables"]) {
    for (const json& row : o["operator"]) {
      for (const json& entry : row) CHECK(std::abs(entry[1].get<double>()) <= 1e-10);
    }
    for (const json& v : o["eigenbasis"]) {
      for (const json& entry : v) CHECK(std::abs(entry[1].get<double>()) <= 1e-10);
    }
  }
}

TEST_CASE("synthesize errors") {
  CHECK(run({"synthesize", "0.9", "0.9", "0.1"}).code == kNegative);
  CHECK(run({"synthesize", "0.5", "0.5", "0.5", "--values", "1,1,1,-1,1,-1"}).code == kUsage);
  CHECK(run({"synthesize", "0.5", "0.5", "0.5", "--values", "1,-1"}).code == kUsage);
  CHECK(run({"synthesize", "0.5", "0.5", "0.5", "-o", "/nonexistent-dir/model.json"}).code == kIo);
}

TEST_CASE("synthesize then verify in a fresh process") {
  const fs::path model = scratch("model.json");
  fs::remove(model);
  REQUIRE(run_tool("synthesize 0.3 0.6 0.5 --values 3,1,-2,5,0.5,0.25 -o " + model.string()) == 0);
  std::string text;
  CHECK(run_tool("verify " + model.string(), &text) == 0);
  CHECK(text.find("model verified") != std::string::npos);
}

TEST_CASE("verify exit codes") {
  const Run synth = run({"synthesize", "0.3", "0.6", "0.5"});
  REQUIRE(synth.code == kOk);
  const json good = json::parse(synth.out);

  const fs::path ok_path = scratch("ok.json");
  dump(ok_path, synth.out);
  CHECK(run({"verify", ok_path.string()}).code == kOk);

  json corrupted = good;
  const double x = corrupted["observables"][1]["bloch_vector"][0].get<double>();
  corrupted["observables"][1]["bloch_vector"][0] = x + 1e-2;
  const fs::path bad_path = scratch("corrupted.json");
  dump(bad_path, corrupted.dump());
  const Run bad = run({"verify", bad_path.string()});
  CHECK(bad.code != kOk);
  CHECK(bad.out.find("FAIL") != std::string::npos);

  json non_hermitian = good;
  non_hermitian["observables"][0]["operator"][0][1] = {0.25, 0.0};
  const fs::path nh_path = scratch("non_hermitian.json");
  dump(nh_path, non_hermitian.dump());
  CHECK(run({"verify", nh_path.string()}).code == kSchema);

  const fs::path garbage = scratch("garbage.json");
  dump(garbage, "not json");
  CHECK(run({"verify", garbage.string()}).code == kSchema);

  CHECK(run({"verify", scratch("missing.json").string() + ".none"}).code == kIo);
}

TEST_CASE("verify honors a tolerance override") {
  const Run synth = run({"synthesize", "0.3", "0.6", "0.5"});
  json doc = json::parse(synth.out);
  doc["probabilities"]["p"] = doc["probabilities"]["p"].get<double>() + 1e-7;
  const fs::path path = scratch("shifted.json");
  dump(path, doc.dump());
  CHECK(run({"verify", path.string()}).code == kNegative);
  CHECK(run({"verify", path.string(), "--tolerance", "1e-6"}).code == kOk);
}

TEST_CASE("sweep output") {
  const Run csv = run({"sweep", "3"});
  REQUIRE(csv.code == kOk);
  CHECK(csv.out.rfind("p,q,r,K,class,normalized_form\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 28);
  CHECK(csv.out.find("0.5,0.5,0.5,0.25,StrictlyComplexQuantum,") != std::string::npos);

  const json j = json::parse(run({"sweep", "3", "--format", "json"}).out);
  CHECK(j["rows"].size() == 27);

  CHECK(run({"sweep", "1"}).code == kUsage);
  CHECK(run({"sweep", "3", "--format", "xml"}).code == kUsage);
  CHECK(run({"sweep", "3", "-o", "/nonexistent-dir/sweep.csv"}).code == kIo);
}

TEST_CASE("machine output is deterministic") {
  for (auto args : {std::initializer_list<std::string>{"--json", "classify", "0.3", "0.6", "0.5"},
                    {"synthesize", "0.3", "0.6", "0.5"},
                    {"sweep", "5"},
                    {"--json", "selftest", "--count", "50"}}) {
    CHECK(run(args).out == run(args).out);
  }
  CHECK(run({"--json", "--seed", "1", "selftest", "--count", "50"}).out !=
        run({"--json", "--seed", "2", "selftest", "--count", "50"}).out);
}

TEST_CASE("small selftest is fast") {
  const auto start = std::chrono::steady_clock::now();
  const Run r = run({"selftest", "--count", "10"});
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(r.code == kOk);
  CHECK(secs < 1.0);
  CHECK(run({"selftest", "--count", "0"}).code == kUsage);
}
