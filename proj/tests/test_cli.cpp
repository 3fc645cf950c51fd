#include <filesystem>
#include <set>
#include <sstream>

#include "cremona2/claims.hpp"
#include "cremona2/cli.hpp"
#include "cremona2/errors.hpp"
#include "cremona2/report.hpp"
#include "doctest.h"

using namespace cremona2;
using report::Json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cremona2_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("modulus text and the moduli file") {
  CHECK(report::modulus_string(ff::registry_modulus("F256")) == "x^8 + x^4 + x^3 + x^2 + 1");
  CHECK(report::modulus_string({1, 1}) == "x + 1");
  const Json reg = report::moduli_json();
  CHECK(report::check_moduli(reg).empty());
  // The checked-in file agrees with the registry.
  const Json file = Json::parse(report::read_file(fs::path(CREMONA2_SOURCE_DIR) / "moduli.json"));
  CHECK(report::check_moduli(file).empty());
  Json bad = reg;
  bad["moduli"]["F8"] = "x^3 + x^2 + 1";
  CHECK(report::check_moduli(bad).size() == 1);
  bad["moduli"].erase("F16");
  CHECK(report::check_moduli(bad).size() == 2);
}

TEST_CASE("pair selection") {
  cli::RunConfig cfg;
  CHECK(cli::selected_pairs(cfg).size() == 13);
  cfg.surface = "D6";
  CHECK(cli::selected_pairs(cfg).size() == 4);
  cfg.size = "5";
  CHECK(cli::selected_pairs(cfg).size() == 1);
  cfg.surface = "all";
  cfg.size = "6";
  CHECK(cli::selected_pairs(cfg).size() == 2);  // P2 and Q
  cfg.size = "5x";
  CHECK_THROWS_AS(cli::selected_pairs(cfg), UnsupportedPair);
  cfg.surface = "Q";
  cfg.size = "5";
  CHECK_THROWS_AS(cli::selected_pairs(cfg), UnsupportedPair);
  cfg.surface = "X";
  CHECK_THROWS_AS(cli::selected_pairs(cfg), UnknownName);
}

TEST_CASE("claim registry") {
  CHECK(claims::all_claims().size() == 52 + 13);
  std::set<std::string> ids;
  for (const auto& c : claims::all_claims()) ids.insert(c.id);
  CHECK(ids.size() == claims::all_claims().size());
  CHECK(claims::suite_claims("groups").size() == 6);
  CHECK(claims::suite_claims("classification").size() == 13);
  CHECK_THROWS_AS(claims::suite_claims("nope"), UnknownName);
  CHECK_THROWS_AS(claims::find_claim("nope"), UnknownName);
  for (const auto* c : claims::default_claims()) CHECK(c->suite != "classification");
}

TEST_CASE("certificates replay and detect tampering") {
  const auto& claim = claims::find_claim("groups.d5");
  const Json cert = claims::certify(claim);
  CHECK(cert["schema"] == 1);
  CHECK(claims::certificate_pass(cert));
  CHECK(report::dump(cert) == report::dump(claims::certify(claim)));
  const auto r = claims::replay(cert);
  CHECK(r.reproduced);
  CHECK(r.pass);

  Json tampered = cert;
  tampered["observed"]["order"] = 4;
  CHECK_FALSE(claims::replay(tampered).reproduced);

  // A certificate recording a different modulus is not reproduced.
  Json moved = claims::certify(claims::find_claim("groups.d6"));
  REQUIRE(moved["inputs"]["fields"].size() == 1);
  moved["inputs"]["fields"][0]["modulus"] = "x^6 + x + 1";
  CHECK_FALSE(claims::replay(moved).reproduced);

  CHECK_THROWS_AS(claims::replay(Json::object()), BadCertificate);
}

TEST_CASE("a failing claim keeps its verdict on replay") {
  const Json cert = claims::certify(claims::find_claim("fibrations.witness_curves"));
  CHECK_FALSE(claims::certificate_pass(cert));
  const auto r = claims::replay(cert);
  CHECK(r.reproduced);
  CHECK_FALSE(r.pass);
}

TEST_CASE("classify command: exit code, artifacts, formats") {
  const fs::path out = scratch("classify");
  cli::RunConfig cfg;
  cfg.out = out;
  cfg.surface = "P2";
  cfg.size = "8";
  std::ostringstream log;
  CHECK(cli::cmd_classify(cfg, log) == 0);
  const Json res = Json::parse(report::read_file(out / "results" / "P2_d8.json"));
  CHECK(res["schema"] == 1);
  CHECK(res["class_count"]["computed"] == 38);
  CHECK(res["field"]["key"] == "F256");
  CHECK(res["representatives"].size() == 38);
  CHECK(res["representatives"][0]["point"].get<std::string>().find("a^") != std::string::npos);
  CHECK(fs::exists(out / "certificates" / "classification.P2.d8.json"));
  CHECK(fs::exists(out / "timings.json"));
  CHECK(fs::exists(out / "results" / "summary.json"));

  cfg.format = cli::Format::csv;
  cfg.surface = "Q";
  cfg.size = "4";
  CHECK(cli::cmd_classify(cfg, log) == 0);
  const std::string csv = report::read_file(out / "results" / "summary.csv");
  CHECK(csv.find("Q,4,F16,") != std::string::npos);

  cfg.surface = "Q";
  cfg.size = "5";
  CHECK(cli::guarded(cli::cmd_classify, cfg, log) == 1);
  fs::remove_all(out);
}

TEST_CASE("verify command exit codes") {
  const fs::path out = scratch("verify");
  cli::RunConfig cfg;
  cfg.out = out;
  std::ostringstream log;
  cfg.only = "groups";
  CHECK(cli::cmd_verify(cfg, log) == 0);
  CHECK(fs::exists(out / "certificates" / "groups.pgl3.json"));
  cfg.only = "fibrations.witness_curves";
  CHECK(cli::cmd_verify(cfg, log) == 2);
  cfg.only.clear();
  cfg.replay = out / "certificates" / "groups.pgl3.json";
  CHECK(cli::cmd_verify(cfg, log) == 0);
  cfg.replay = out / "missing.json";
  CHECK(cli::guarded(cli::cmd_verify, cfg, log) == 1);
  cfg.replay.reset();
  cfg.moduli = out / "certificates" / "groups.pgl3.json";  // not a moduli file
  CHECK(cli::guarded(cli::cmd_verify, cfg, log) == 1);
  fs::remove_all(out);
}

TEST_CASE("atomic writes leave no temporary file") {
  const fs::path out = scratch("atomic");
  report::write_atomic(out / "a" / "b.json", "{}\n");
  report::write_atomic(out / "a" / "b.json", "{\"x\":1}\n");
  CHECK(report::read_file(out / "a" / "b.json") == "{\"x\":1}\n");
  CHECK_FALSE(fs::exists(out / "a" / "b.json.tmp"));
  fs::remove_all(out);
}
