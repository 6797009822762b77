#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "siegel/cli.hpp"
#include "siegel/error.hpp"
#include "siegel/io.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "siegel");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = siegel::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (const char c : s) n += c == '\n';
  return n;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("siegel_test_" + name);
}

}  // namespace

TEST_CASE("contfrac prints one row per convergent") {
  const auto r = run({"contfrac", "--surd", "(-1+1*sqrt(5))/2", "--k", "10"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 11u);
  CHECK(r.out.rfind("n,a,p,q,", 0) == 0);
  CHECK(r.out.find("\n10,1,55,89,") != std::string::npos);
}

TEST_CASE("usage and domain errors map to exit codes") {
  const auto unknown = run({"certify", "--bogus"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("Usage") != std::string::npos);
  CHECK(run({}).code == 2);
  const auto bad = run({"certify", "--r0", "1.5"});
  CHECK(bad.code == 1);
  CHECK(bad.err == "r0 must lie in (0,1)\n");
  CHECK(run({"contfrac", "--quotients", "[1,0]"}).code == 1);
}

TEST_CASE("certify output is versioned and byte-identical across runs") {
  const auto a = run({"certify", "--r0", "0.5"});
  const auto b = run({"certify", "--r0", "0.5"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = siegel::json::parse(a.out);
  CHECK(j.at("schema") == siegel::kSchema);
  CHECK(j.at("valid") == true);
  CHECK(j.at("N") == 3);
}

TEST_CASE("family files") {
  const auto path = temp_file("family.json");
  {
    std::ofstream f(path);
    f << R"({"rotation": "golden", "mode": "linear_pair", "f0_higher": [1.0], "f1": [0, [0.5, 0.2], 1.0]})";
  }
  const auto fam = siegel::load_family(path.string());
  CHECK(fam.fam.mode() == siegel::FamilyMode::LinearPair);
  CHECK(fam.fam.lambda1() == siegel::Complex{0.5, 0.2});
  const auto r = run({"linearize", "--family", path.string()});
  CHECK(r.code == 0);
  CHECK(siegel::json::parse(r.out).at("kind") == "siegel_model");

  {
    std::ofstream f(path);
    f << R"({"rotation": "golden", "mode": "multiplier_scaled", "higher": [1.0], "colour": 3})";
  }
  CHECK_THROWS_AS(siegel::load_family(path.string()), siegel::Error);
  CHECK(run({"linearize", "--family", path.string()}).code == 1);
  std::filesystem::remove(path);
}

TEST_CASE("basin writes a PGM file") {
  const auto path = temp_file("basin.pgm");
  const auto r = run({"basin", "--radial", "0.2", "--width", "24", "--height", "16", "--out", path.string()});
  REQUIRE(r.code == 0);
  std::ifstream f(path, std::ios::binary);
  const std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(content.rfind("P5\n24 16\n255\n", 0) == 0);
  CHECK(content.size() == std::string("P5\n24 16\n255\n").size() + 24u * 16u);
  std::filesystem::remove(path);
}

TEST_CASE("curve subcommands produce CSV") {
  const auto k = run({"kernel-curve", "--n-first", "4", "--n-last", "6", "--n-boundary", "16"});
  CHECK(k.code == 0);
  CHECK(lines(k.out) == 4u);
  const auto g = run({"koenigs-converge", "--n-first", "4", "--n-last", "5", "--samples", "8"});
  CHECK(g.code == 0);
  CHECK(lines(g.out) == 3u);
  const auto e = run({"example2", "--quotients", "[1,1,100]", "--n", "2"});
  CHECK(e.code == 0);
  CHECK(siegel::json::parse(e.out).at("certifies_D3") == true);
}
