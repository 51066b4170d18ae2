#include "doctest.h"
#include "json.hpp"

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(SL2_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), f)) out.append(buf.data(), n);
  int status = pclose(f);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("genus of X0(13)") {
  Run r = run("genus --p 13 --n 1 --subgroup B --output json");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["genus"] == "0");
  CHECK(j["index"] == "14");
}

TEST_CASE("class table of SL2(Z/4)") {
  Run r = run("class-table --p 2 --n 2 --output json");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  std::vector<std::string> sizes;
  for (const auto& c : j["classes"]) sizes.push_back(c["size"]);
  CHECK(sizes == std::vector<std::string>{"1", "1", "6", "6", "8", "8", "6", "6", "3", "3"});
}

TEST_CASE("verify a single audited case") {
  Run r = run("verify --suite section7 --case P7.2 --output json");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["entries"].size() == 1);
  CHECK(j["entries"][0]["verdict"] == "match");
}

TEST_CASE("count and bounds") {
  Run c = run("count --p 2 --n 2 --subgroup A1 --class sigma");
  CHECK(c.code == 0);
  CHECK(c.out.find(": 3 of 6") != std::string::npos);
  Run c2 = run("count --p 3 --n 2 --subgroup full --class u^p^1 --output json");
  CHECK(c2.code == 0);
  Run b = run("bounds --p 3 --n 3 --output json");
  CHECK(b.code == 0);
  CHECK(nlohmann::json::parse(b.out)["sequences"].contains("a_tau_3"));
  Run a = run("bounds --p 2 --n 2 --subgroup A1");
  CHECK(a.code == 0);
}

TEST_CASE("determinism of JSON output") {
  Run a = run("verify --suite lemma6.1 --samples 20 --seed 5 --output json");
  Run b = run("verify --suite lemma6.1 --samples 20 --seed 5 --output json");
  auto strip = [](std::string s) {
    auto j = nlohmann::ordered_json::parse(s);
    for (auto& e : j["entries"]) e.erase("elapsed_ms");
    return j.dump();
  };
  CHECK(a.code == 0);
  CHECK(strip(a.out) == strip(b.out));
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("genus --p 4 --subgroup B").code == 2);
  CHECK(run("genus --p 5").code == 2);
  CHECK(run("count --p 5 --subgroup B --class rho").code == 2);
  CHECK(run("verify --suite nonsense").code == 2);
  CHECK(run("genus --p 5 --n 3 --subgroup full --max-elements 100").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("element cap from the environment") {
  std::string cmd = std::string("SL2_MAX_ELEMENTS=100 ") + SL2_CLI_PATH + " genus --p 5 --n 3 --subgroup full >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
