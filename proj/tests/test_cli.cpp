#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dci::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dcitool_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("refute then verify") {
  TempDir tmp;
  const auto cert = tmp.file("cert.json");
  auto r = run({"refute", "--k", "3", "--r", "1", "--out", cert});
  CHECK(r.code == dci::cli::kOk);
  CHECK(fs::exists(cert));
  r = run({"verify", cert});
  CHECK(r.code == dci::cli::kOk);
  CHECK(r.out.find("certificate verified") != std::string::npos);
}

TEST_CASE("refute is byte-identical across runs and job counts") {
  const auto a = run({"refute", "--k", "3", "--r", "1", "--seed", "0"});
  const auto b = run({"refute", "--k", "3", "--r", "1", "--seed", "0"});
  const auto c = run({"--jobs", "2", "refute", "--k", "3", "--r", "1"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("invalid parameters and usage errors exit 64") {
  CHECK(run({"refute", "--k", "2", "--r", "1"}).code == dci::cli::kUsage);
  CHECK(run({"refute", "--k", "3", "--r", "2"}).code == dci::cli::kUsage);
  CHECK(run({"refute", "--k", "9", "--r", "1"}).code == dci::cli::kUsage);
  CHECK(run({"refute", "--k", "3"}).code == dci::cli::kUsage);
  CHECK(run({}).code == dci::cli::kUsage);
  CHECK(run({"frobnicate"}).code == dci::cli::kUsage);
  CHECK(run({"--node-cap", "0", "refute", "--k", "1", "--r", "1"}).code == dci::cli::kUsage);
  CHECK(run({"bundle", "--k", "4", "--r", "1"}).code == dci::cli::kUsage);
  CHECK(run({"--help"}).code == dci::cli::kOk);
}

TEST_CASE("verify rejects malformed and tampered certificates") {
  TempDir tmp;
  const auto cert = tmp.file("cert.json");
  REQUIRE(run({"refute", "--k", "1", "--r", "1", "--out", cert}).code == 0);
  const auto text = slurp(cert);

  spit(tmp.file("trunc.json"), text.substr(0, text.size() / 3));
  CHECK(run({"verify", tmp.file("trunc.json")}).code == dci::cli::kData);

  auto j = nlohmann::ordered_json::parse(text);
  j["witness"]["S"] = j["witness"]["T"];
  spit(tmp.file("tampered.json"), j.dump(2));
  const auto r = run({"verify", tmp.file("tampered.json")});
  CHECK(r.code == dci::cli::kRefutedOrCheckFailed);
  CHECK(r.err.find("iso_is_isomorphism") != std::string::npos);

  CHECK(run({"verify", tmp.file("missing.json")}).code == dci::cli::kIo);
}

TEST_CASE("two-closure reports orders") {
  TempDir tmp;
  spit(tmp.file("c8.txt"), "cyc(8): (0 1 2 3 4 5 6 7)\n");
  auto r = run({"two-closure", tmp.file("c8.txt")});
  CHECK(r.code == 0);
  CHECK(r.out.find("order 8\nclosure_order 8\n") == 0);

  REQUIRE(run({"bundle", "--k", "1", "--r", "1", "--out", tmp.file("g.txt")}).code == 0);
  r = run({"two-closure", tmp.file("g.txt")});
  CHECK(r.code == 0);
  CHECK(r.out.find("order 16\nclosure_order 16\n") == 0);

  spit(tmp.file("a4.txt"), "cyc(4): (0 1 2)\ncyc(4): (1 2 3)\n");
  r = run({"two-closure", tmp.file("a4.txt")});
  CHECK(r.out.find("closure_order 24") != std::string::npos);
  CHECK(r.out.find("two_closed no") != std::string::npos);

  spit(tmp.file("empty.txt"), "");
  CHECK(run({"two-closure", tmp.file("empty.txt")}).code == dci::cli::kData);

  spit(tmp.file("s30.txt"), "cyc(30): (0 1)\ncyc(30): (0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 21 22 23 24 25 26 27 28 29)\n");
  CHECK(run({"--node-cap", "10", "two-closure", tmp.file("s30.txt")}).code == dci::cli::kBudget);
}

TEST_CASE("brute-dci verdicts and exit codes") {
  auto r = run({"brute-dci", "c8"});
  CHECK(r.code == dci::cli::kRefutedOrCheckFailed);
  CHECK(r.out.find("S = {") != std::string::npos);
  r = run({"brute-dci", "c3"});
  CHECK(r.code == dci::cli::kOk);
  CHECK(r.out == "DCI confirmed\n");
  CHECK(run({"brute-dci", "c2xc2"}).code == dci::cli::kOk);
  CHECK(run({"brute-dci", "c9"}).code == dci::cli::kUsage);
  CHECK(run({"brute-dci", "nonsense"}).code == dci::cli::kUsage);
}

TEST_CASE("export-dot") {
  TempDir tmp;
  const auto cert = tmp.file("cert.json");
  REQUIRE(run({"refute", "--k", "1", "--r", "1", "--out", cert}).code == 0);
  auto r = run({"export-dot", cert, "--out", tmp.file("w.dot")});
  CHECK(r.code == 0);
  const auto dot = slurp(tmp.file("w.dot"));
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("7 [label=\"(7,0,0)\"]") != std::string::npos);
  CHECK(dot.find("8 [") == std::string::npos);

  r = run({"export-dot", cert, "--format", "adj"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("8\n", 0) == 0);

  CHECK(run({"export-dot", cert, "--out", "/nonexistent-dir/w.dot"}).code == dci::cli::kIo);
  CHECK(run({"export-dot", cert, "--format", "svg"}).code == dci::cli::kUsage);

  auto j = nlohmann::ordered_json::parse(slurp(cert));
  j["witness"]["kind"] = "colored";
  j["witness"]["S"] = nlohmann::ordered_json::array({j["witness"]["S"]});
  j["witness"]["T"] = nlohmann::ordered_json::array({j["witness"]["T"]});
  spit(tmp.file("colored.json"), j.dump(2));
  CHECK(run({"export-dot", tmp.file("colored.json")}).code == dci::cli::kUnsupportedExport);
}

TEST_CASE("bundle writes parseable generators") {
  const auto r = run({"bundle", "--k", "3", "--r", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\ndegree: 72\n") != std::string::npos);
  CHECK(r.out.find("# h\n") != std::string::npos);
}
