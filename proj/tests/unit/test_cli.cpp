#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "normsys/dsl.hpp"

namespace fs = std::filesystem;
using normsys::cli::run;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("normsys-cli-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string scenario(const char* name) { return std::string(NORMSYS_SCENARIO_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors") {
    CHECK(invoke({}).status == 1);
    CHECK(invoke({"frobnicate"}).status == 1);
    CHECK(invoke({"check", "--model"}).status == 1);
    CHECK(invoke({"synth", "sideways", "--model", "m", "--formula", "f"}).status == 1);
    const Result help = invoke({"--help"});
    CHECK(help.status == 0);
    CHECK(help.out.find("nc2") != std::string::npos);
  }

  TEST_CASE("input errors") {
    CHECK(invoke({"check", "--model", "/nonexistent.mas", "--formula", "true"}).status == 2);
    const fs::path dir = scratch("input");
    normsys::dsl::write_file((dir / "bad.mas").string(), "agents x\nbogus line\n");
    const Result r = invoke({"validate", "--model", (dir / "bad.mas").string()});
    CHECK(r.status == 2);
    CHECK(r.err.find("2:1") != std::string::npos);
  }

  TEST_CASE("generate, check and synthesize") {
    const fs::path dir = scratch("gen");
    const Result gen = invoke({"gen", "eco", "--config", scenario("instantiation.eco"), "--out", dir.string()});
    REQUIRE(gen.status == 0);
    const std::string model = (dir / "model.mas").string();
    const Result valid = invoke({"validate", "--model", model, "--norm", (dir / "n1.norm").string()});
    CHECK(valid.status == 0);
    CHECK(valid.out.find("valid: true") != std::string::npos);
    const Result check = invoke({"--json", "check", "--model", model, "--norm", (dir / "n1.norm").string(),
                                 "--formula", (dir / "phi1_and_phi2.ctl").string()});
    REQUIRE(check.status == 0);
    CHECK(nlohmann::json::parse(check.out)["verdict"] == true);
    const Result plain = invoke({"check", "--model", model, "--formula", (dir / "phi2.ctl").string()});
    CHECK(plain.status == 0);
    CHECK(plain.out.find("verdict: false") != std::string::npos);

    const fs::path simple = scratch("simple");
    REQUIRE(invoke({"gen", "eco", "--config", scenario("single-producer.eco"), "--out", simple.string()}).status == 0);
    const std::string norm_out = (simple / "found.norm").string();
    const Result synth = invoke({"--json", "synth", "dynamic", "--kmax", "2", "--model", (simple / "model.mas").string(),
                                 "--formula", (simple / "phi1_and_phi2.ctl").string(), "--out", norm_out});
    REQUIRE(synth.status == 0);
    CHECK(nlohmann::json::parse(synth.out)["outcome"] == "Found");
    const Result recheck = invoke({"--json", "check", "--model", (simple / "model.mas").string(), "--norm", norm_out,
                                   "--formula", (simple / "phi1_and_phi2.ctl").string()});
    CHECK(nlohmann::json::parse(recheck.out)["verdict"] == true);
    const Result none = invoke({"--json", "synth", "static", "--model", (simple / "model.mas").string(), "--formula",
                                (simple / "phi1_and_phi2.ctl").string()});
    CHECK(nlohmann::json::parse(none.out)["outcome"] == "NoneExists");
  }

  TEST_CASE("recognition reports replay") {
    const fs::path dir = scratch("nc");
    REQUIRE(invoke({"gen", "eco", "--config", scenario("cancel.eco"), "--out", dir.string()}).status == 0);
    const std::string family = (dir / "n1-n2.family").string();
    const Result a = invoke({"--json", "--no-timing", "nc2", "--family", family});
    const Result b = invoke({"--json", "--no-timing", "nc2", "--family", family});
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    const auto record = nlohmann::json::parse(a.out);
    CHECK(record["verdict"] == "NC2-Successful");
    CHECK(record.find("time_ms") == record.end());
    normsys::dsl::write_file((dir / "nc2.json").string(), a.out);
    CHECK(invoke({"nc2", "--family", family, "--replay", (dir / "nc2.json").string()}).status == 0);

    const Result lasso = invoke({"--json", "nc1", "--family", family, "--depth", "40"});
    const auto l = nlohmann::json::parse(lasso.out);
    CHECK(l["verdict"] == "NC1-Unsuccessful");
    CHECK(l["bruteforce"]["consistent"] == true);
    normsys::dsl::write_file((dir / "nc1.json").string(), lasso.out);
    CHECK(invoke({"nc1", "--family", family, "--replay", (dir / "nc1.json").string()}).status == 0);

    auto broken = record;
    broken["witness"]["path"].erase(broken["witness"]["path"].size() - 1);
    normsys::dsl::write_file((dir / "broken.json").string(), broken.dump());
    CHECK(invoke({"nc2", "--family", family, "--replay", (dir / "broken.json").string()}).status == 2);
  }

  TEST_CASE("explicit family on the command line") {
    const fs::path dir = scratch("explicit");
    REQUIRE(invoke({"gen", "eco", "--config", scenario("shared-trace.eco"), "--out", dir.string()}).status == 0);
    const Result r = invoke({"nc1", "--model", (dir / "model.mas").string(), "--norms", (dir / "n2.norm").string(),
                             (dir / "n6.norm").string(), "--observer", "c_4", "--active", "1"});
    CHECK(r.status == 0);
    CHECK(r.out.find("active: 1") != std::string::npos);
    CHECK(invoke({"nc1", "--model", (dir / "model.mas").string(), "--norms", (dir / "n2.norm").string()}).status == 2);
  }

  TEST_CASE("automaton instances") {
    const fs::path dir = scratch("nfa");
    const Result r = invoke({"--json", "gen", "nfa-instance", "--nfa", scenario("example.nfa"), "--out", dir.string()});
    REQUIRE(r.status == 0);
    CHECK(nlohmann::json::parse(r.out)["run_universal"] == false);
    const Result v = invoke({"--json", "nc2", "--family", (dir / "instance.family").string()});
    CHECK(nlohmann::json::parse(v.out)["verdict"] == "NC2-Successful");
  }
}
