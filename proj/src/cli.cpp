#include "cremona2/cli.hpp"

#include <chrono>
#include <map>
#include <ostream>
#include <sstream>

#include "cremona2/claims.hpp"
#include "cremona2/errors.hpp"
#include "cremona2/report.hpp"

namespace cremona2::cli {

namespace fs = std::filesystem;
using classify::Classification;
using classify::Surface;
using report::Json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Wall-clock goes to its own file so that every other artifact stays
/// byte-identical.
void write_timings(const RunConfig& cfg, const std::string& command, const Json& seconds) {
  report::write_atomic(cfg.out / "timings.json",
                       report::dump(Json{{"schema", report::kSchema}, {"command", command}, {"seconds", seconds}}));
}

fs::path results(const RunConfig& cfg, const std::string& name) { return cfg.out / "results" / name; }

fs::path certificate_path(const RunConfig& cfg, const std::string& claim) {
  return cfg.out / "certificates" / (claim + ".json");
}

}  // namespace

std::vector<std::pair<Surface, int>> selected_pairs(const RunConfig& cfg) {
  std::optional<Surface> s;
  if (cfg.surface != "all") s = aut::parse_surface(cfg.surface);
  std::optional<int> d;
  if (cfg.size != "all") {
    try {
      std::size_t used = 0;
      d = std::stoi(cfg.size, &used);
      if (used != cfg.size.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw UnsupportedPair("bad size '" + cfg.size + "'");
    }
  }
  std::vector<std::pair<Surface, int>> v;
  for (const auto& p : classify::supported_pairs())
    if ((!s || p.first == *s) && (!d || p.second == *d)) v.push_back(p);
  if (v.empty()) throw UnsupportedPair("no supported pair for surface " + cfg.surface + ", size " + cfg.size);
  return v;
}

fs::path check_moduli_file(const RunConfig& cfg) {
  std::vector<fs::path> tries;
  if (cfg.moduli) {
    tries.push_back(*cfg.moduli);
  } else {
    tries.push_back("moduli.json");
    tries.push_back(fs::path(CREMONA2_SOURCE_DIR) / "moduli.json");
  }
  for (const auto& p : tries) {
    if (!fs::exists(p)) continue;
    Json doc;
    try {
      doc = Json::parse(report::read_file(p));
    } catch (const Json::parse_error& e) {
      throw BadCertificate(p.string() + ": " + e.what());
    }
    const auto problems = report::check_moduli(doc);
    if (!problems.empty()) throw BadCertificate(p.string() + ": " + problems.front());
    return p;
  }
  throw IoError("moduli.json not found");
}

int cmd_classify(const RunConfig& cfg, std::ostream& log) {
  check_moduli_file(cfg);
  const auto pairs = selected_pairs(cfg);
  bool all_pass = true;
  Json summary = Json::array(), timings = Json::object();
  std::string csv = report::classification_csv_header(), text;
  for (const auto& [s, d] : pairs) {
    const auto t0 = Clock::now();
    const Classification c = classify::classify_orbits(s, d, {cfg.workers, {}});
    const std::string tag = report::pair_tag(s, d);
    const claims::Outcome o = claims::classification_outcome(c);
    const Json cert = claims::certificate(claims::find_claim(claims::classification_claim_id(s, d)), o);
    const bool pass = o.pass();
    all_pass = all_pass && pass;
    switch (cfg.format) {
      case Format::json: report::write_atomic(results(cfg, tag + ".json"), report::dump(o.witness)); break;
      case Format::csv: report::write_atomic(results(cfg, tag + ".csv"), report::representatives_csv(c)); break;
      case Format::text: break;
    }
    report::write_atomic(certificate_path(cfg, cert["claim"].get<std::string>()), report::dump(cert));
    summary.push_back(Json{{"surface", aut::surface_name(s)},
                           {"d", d},
                           {"field", c.field_key},
                           {"classes", c.counts.classes},
                           {"published", classify::published_class_count(s, d)},
                           {"stage_row", o.observed["stage_row"]},
                           {"verdict", pass ? "pass" : "fail"}});
    csv += report::classification_csv_row(c);
    const std::string line = report::classification_text(c);
    text += line;
    log << line << std::flush;
    timings[tag] = seconds_since(t0);
  }
  switch (cfg.format) {
    case Format::json:
      report::write_atomic(results(cfg, "summary.json"),
                           report::dump(Json{{"schema", report::kSchema},
                                             {"pairs", summary},
                                             {"verdict", all_pass ? "pass" : "fail"}}));
      break;
    case Format::csv: report::write_atomic(results(cfg, "summary.csv"), csv); break;
    case Format::text: report::write_atomic(results(cfg, "summary.txt"), text); break;
  }
  write_timings(cfg, "classify", timings);
  return all_pass ? 0 : 2;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  check_moduli_file(cfg);
  const claims::RunOptions opt{cfg.workers};
  if (cfg.replay) {
    Json cert;
    try {
      cert = Json::parse(report::read_file(*cfg.replay));
    } catch (const Json::parse_error& e) {
      throw BadCertificate(cfg.replay->string() + ": " + e.what());
    }
    const auto r = claims::replay(cert, opt);
    log << "replay " << cert["claim"].get<std::string>() << ": recorded " << (r.recorded_pass ? "pass" : "fail")
        << ", now " << (r.pass ? "pass" : "fail") << ", " << (r.reproduced ? "reproduced" : "NOT reproduced") << '\n';
    for (const auto& d : r.differences) log << "  " << d << '\n';
    return r.reproduced ? 0 : 2;
  }

  std::vector<const claims::Claim*> selected;
  if (cfg.only.empty()) {
    selected = claims::default_claims();
  } else {
    const auto& suites = claims::suite_names();
    if (std::find(suites.begin(), suites.end(), cfg.only) != suites.end())
      selected = claims::suite_claims(cfg.only);
    else
      selected = {&claims::find_claim(cfg.only)};
  }

  std::size_t failed = 0;
  Json rows = Json::array(), timings = Json::object();
  std::string csv = "claim,suite,verdict\n", text;
  for (const auto* c : selected) {
    const auto t0 = Clock::now();
    const Json cert = claims::certify(*c, opt);
    timings[c->id] = seconds_since(t0);
    const bool pass = claims::certificate_pass(cert);
    failed += !pass;
    report::write_atomic(certificate_path(cfg, c->id), report::dump(cert));
    rows.push_back(Json{{"claim", c->id}, {"suite", c->suite}, {"verdict", pass ? "pass" : "fail"}});
    csv += c->id + "," + c->suite + "," + (pass ? "pass" : "fail") + "\n";
    std::ostringstream line;
    line << (pass ? "PASS " : "FAIL ") << c->id;
    if (!pass) line << "  expected " << cert["expected"].dump() << ", observed " << cert["observed"].dump();
    line << '\n';
    text += line.str();
    log << line.str() << std::flush;
  }
  log << (selected.size() - failed) << " of " << selected.size() << " claims hold\n";
  switch (cfg.format) {
    case Format::json:
      report::write_atomic(results(cfg, "verify.json"),
                           report::dump(Json{{"schema", report::kSchema},
                                             {"claims", rows},
                                             {"passed", selected.size() - failed},
                                             {"failed", failed}}));
      break;
    case Format::csv: report::write_atomic(results(cfg, "verify.csv"), csv); break;
    case Format::text: report::write_atomic(results(cfg, "verify.txt"), text); break;
  }
  write_timings(cfg, "verify", timings);
  return failed == 0 ? 0 : 2;
}

int cmd_emit_generators(const RunConfig& cfg, std::ostream& log) {
  check_moduli_file(cfg);
  const auto t0 = Clock::now();
  std::map<std::pair<Surface, int>, Classification> cache;
  const auto inv = report::generator_inventory([&](Surface s, int d) -> const Classification& {
    auto it = cache.find({s, d});
    if (it == cache.end()) it = cache.emplace(std::make_pair(s, d), classify::classify_orbits(s, d, {cfg.workers, {}})).first;
    return it->second;
  });
  const std::string text = report::inventory_text(inv);
  log << text;
  switch (cfg.format) {
    case Format::json: report::write_atomic(results(cfg, "generators.json"), report::dump(report::inventory_json(inv))); break;
    case Format::csv: {
      std::string csv = "table,orbit_size,published,computed\n";
      for (const auto& r : inv.rows)
        csv += r.table + "," + r.orbit + "," + std::to_string(r.published) + "," + std::to_string(r.computed) + "\n";
      csv += "total,," + std::to_string(inv.published_total) + "," + std::to_string(inv.computed_total) + "\n";
      report::write_atomic(results(cfg, "generators.csv"), csv);
      break;
    }
    case Format::text: report::write_atomic(results(cfg, "generators.txt"), text); break;
  }
  write_timings(cfg, "emit-generators", Json{{"inventory", seconds_since(t0)}});
  return inv.computed_total == 111 ? 0 : 2;
}

int guarded(int (*cmd)(const RunConfig&, std::ostream&), const RunConfig& cfg, std::ostream& log) {
  try {
    return cmd(cfg, log);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cremona2::cli
