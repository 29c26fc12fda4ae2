#include "modcert/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = modcert::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("modcert_cli_test_" + std::to_string(::getpid()) + "_" +
                                         std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string file(const std::string& name, const std::string& content = {}) const {
    const fs::path p = path_ / name;
    if (!content.empty()) std::ofstream(p) << content;
    return p.string();
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("version and usage") {
  const Result v = run({"--version"});
  CHECK(v.code == modcert::cli::kOk);
  CHECK(v.out == "modcert 0.1.0\n");
  CHECK(run({}).code == modcert::cli::kUsage);
  CHECK(run({"frobnicate"}).code == modcert::cli::kUsage);
  CHECK(run({"certify"}).code == modcert::cli::kUsage);
  CHECK(run({"certify", "abc"}).code == modcert::cli::kUsage);
  CHECK(run({"certify", "0"}).code == modcert::cli::kUsage);
  CHECK(run({"batch"}).code == modcert::cli::kUsage);
  CHECK(run({"residual", "--eq", "nope"}).code == modcert::cli::kUsage);
  CHECK(run({"verify", "/nonexistent/cert.json"}).code == modcert::cli::kUsage);
  CHECK(run({"--help"}).code == modcert::cli::kOk);
}

TEST_CASE("certify then verify") {
  TempDir tmp;
  const std::string path = tmp.file("cert.json");
  const Result c = run({"certify", "2", "--out", path});
  REQUIRE(c.code == 0);
  const json j = json::parse(c.out);
  CHECK(j["word"] == json::array({"B'", "B'", "A", "B"}));
  CHECK(j["trace"] == json::array({"2/3", "3/5", "1/3", "2"}));
  CHECK(json::parse(slurp(path)) == j);
  CHECK(c.err.find("4 letters") != std::string::npos);

  const Result v = run({"verify", path});
  CHECK(v.code == 0);
  CHECK(json::parse(v.out)["verdict"] == "VALID");

  json forged = j;
  forged["trace"][1] = "4/7";
  const std::string bad = tmp.file("bad.json", forged.dump());
  const Result fv = run({"verify", bad});
  CHECK(fv.code == modcert::cli::kCheckFailed);
  const json fj = json::parse(fv.out);
  CHECK(fj["verdict"] == "INVALID");
  CHECK(fj["index"] == 1);

  const std::string garbage = tmp.file("garbage.json", "{not json");
  CHECK(run({"verify", garbage}).code == modcert::cli::kUsage);
}

TEST_CASE("certify options") {
  const Result plain = run({"certify", "-1"});
  CHECK(json::parse(plain.out)["word"] == json::array({"B'", "B'", "A", "A"}));
  const Result half = run({"certify", "1/2"});
  CHECK(half.code == 0);
  CHECK(json::parse(half.out)["word"].empty());
  CHECK(run({"certify", "5/7", "--no-shorten"}).code == 0);
}

TEST_CASE("batch") {
  TempDir tmp;
  const std::string csv = tmp.file("batch.csv");
  const Result r = run({"batch", "--max-den", "10", "--extra", "2,-1,-1/2,7/3", "--threads", "2", "--out", csv});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["targets"] == 36);
  CHECK(j["invalid"] == 0);
  CHECK(j["failures"].empty());
  const std::string text = slurp(csv);
  CHECK(text.rfind("target,word_length,verdict,word\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 37);
  CHECK(run({"batch", "--max-den", "0"}).code == modcert::cli::kUsage);
}

TEST_CASE("decompose and orbit") {
  const Result d = run({"decompose", "[[2,3],[1,2]]"});
  CHECK(d.code == 0);
  const json j = json::parse(d.out);
  CHECK(j["st_product_matches"] == true);
  CHECK(j["ab_product_matches"] == true);
  CHECK(j["determinant"] == 1);
  CHECK(run({"decompose", "[[2,2],[1,2]]"}).code == modcert::cli::kUsage);

  const Result o = run({"orbit", "-2/3"});
  CHECK(o.code == 0);
  CHECK(json::parse(o.out)["image_of_zero"] == "-2/3");
  CHECK(json::parse(run({"orbit", "inf"}).out)["image_of_zero"] == "inf");
}

TEST_CASE("identities report the failing product") {
  const Result r = run({"identities"});
  CHECK(r.code == modcert::cli::kCheckFailed);
  const json j = json::parse(r.out);
  CHECK(j.size() == 17);
  int failing = 0;
  for (const auto& c : j) failing += c["pass"].get<bool>() ? 0 : 1;
  CHECK(failing == 1);
  CHECK(r.err.find("16/17 identities hold") != std::string::npos);
}

TEST_CASE("entropy") {
  TempDir tmp;
  const std::string joint = tmp.file("joint.json", R"({"cells": [[0,0,"1/2"],[1,0,"1/3"],[0,1,"1/6"]]})");
  const Result exact = run({"entropy", joint, "--alpha", "2", "--exact"});
  CHECK(exact.code == 0);
  const json e = json::parse(exact.out);
  CHECK(e["joint_entropy"] == "11/18");
  CHECK(e["chain_rule_residual_x_first"] == "0");
  CHECK(e["chain_rule_residual_y_first"] == "0");

  const Result shannon = run({"entropy", joint, "--alpha", "1"});
  CHECK(shannon.code == 0);
  CHECK(json::parse(shannon.out)["pass"] == true);

  const std::string dist = tmp.file("p.csv", "0.5\n0.5\n");
  const Result bits = run({"entropy", dist, "--alpha", "1", "--base", "2"});
  CHECK(bits.code == 0);
  CHECK(json::parse(bits.out)["entropy"].get<double>() == doctest::Approx(1.0));

  const std::string bad = tmp.file("bad.csv", "0.5\n0.6\n");
  CHECK(run({"entropy", bad}).code == modcert::cli::kCheckFailed);
  CHECK(run({"entropy", joint, "--alpha", "1/2", "--exact"}).code == modcert::cli::kUsage);
}

TEST_CASE("residual") {
  CHECK(run({"residual", "--eq", "main", "--u", "linear", "--alpha", "1", "--grid", "64"}).code ==
        modcert::cli::kCheckFailed);
  CHECK(run({"residual", "--eq", "main", "--u", "s_alpha", "--alpha", "1", "--grid", "64"}).code == 0);
  CHECK(run({"residual", "--eq", "fundamental", "--u", "s1_plus_linear", "--alpha", "1"}).code == 0);
  CHECK(run({"residual", "--eq", "main", "--u", "s1_plus_linear", "--alpha", "1"}).code ==
        modcert::cli::kCheckFailed);
  CHECK(run({"residual", "--eq", "h", "--u", "s_alpha", "--alpha", "7/2"}).code == 0);

  const Result exact = run({"residual", "--eq", "main", "--u", "s_alpha", "--alpha", "3", "--exact", "--grid", "20"});
  CHECK(exact.code == 0);
  CHECK(json::parse(exact.out)["max_residual"] == "0");
  CHECK(run({"residual", "--u", "s1_plus_linear", "--alpha", "1", "--exact"}).code == modcert::cli::kUsage);

  const Result lemmas = run({"residual", "--eq", "lemmas", "--u", "perturbed", "--shape", "asym", "--alpha", "2",
                             "--tol", "1"});
  CHECK(lemmas.code == 0);
  const json lj = json::parse(lemmas.out);
  CHECK(lj["reports"].size() == 9);
  CHECK(lj["max_relative"].get<double>() > 1e-4);

  const Result exact_lemmas =
      run({"residual", "--eq", "lemmas", "--u", "s_alpha", "--alpha", "2", "--exact", "--grid", "33"});
  CHECK(exact_lemmas.code == 0);
  CHECK(json::parse(exact_lemmas.out)["max_residual"] == "0");
  const Result asym = run({"residual", "--eq", "lemmas", "--u", "perturbed", "--shape", "asym", "--alpha", "2",
                           "--exact", "--grid", "7"});
  CHECK(asym.code == modcert::cli::kCheckFailed);
  // half_to_one samples 1/2, 7/12, 2/3, ...; the residual eps (3z-1)(1-z) peaks at 2/3.
  CHECK(json::parse(asym.out)["reports"][2]["max_residual"] == "1/3000");

  TempDir tmp;
  const std::string table = tmp.file("u.csv", "x,u\n0,0\n0.5,0.5\n1,0\n");
  const std::string out = tmp.file("res.csv");
  CHECK(run({"residual", "--u", "table", "--table", table, "--alpha", "2", "--grid", "8", "--out", out}).code ==
        modcert::cli::kCheckFailed);
  CHECK(slurp(out).rfind("x,y,residual\n", 0) == 0);
  CHECK(run({"residual", "--u", "table"}).code == modcert::cli::kUsage);
}

TEST_CASE("output is deterministic") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"certify", "-17/12"}, {"batch", "--max-den", "8", "--threads", "3"},
        {"residual", "--eq", "lemmas", "--u", "s_alpha", "--alpha", "2"}, {"identities"}}) {
    const Result a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
}
