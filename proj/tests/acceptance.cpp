// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--known-failures 8,...]
//
// Exit status is 0 when the failing criteria are exactly the listed known
// failures (each documented in the README with its reason), 1 otherwise; an
// unexpected pass of a listed criterion also exits 1 so the list cannot go
// stale.
#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "cremona2/claims.hpp"
#include "cremona2/cli.hpp"
#include "cremona2/report.hpp"

using namespace cremona2;
using classify::Classification;
using classify::Surface;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Result {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED " + what);
    }
  }
};

/// Runs claims by id; records failures with expected and observed values.
void run_claims(Result& r, const std::vector<std::string>& ids) {
  for (const auto& id : ids) {
    const auto& c = claims::find_claim(id);
    const auto o = c.run({});
    if (!o.pass()) r.require(false, id + ": expected " + o.expected.dump() + ", observed " + o.observed.dump());
  }
}

void time_limit(Result& r, double seconds, double limit) {
  std::ostringstream os;
  os << "runtime " << seconds << " s exceeds " << limit << " s";
  r.require(seconds < limit, os.str());
}

/// Every file under a, except timings.json, is byte-identical to the file of
/// the same relative path under b, and b has no extra files.
bool same_tree(const fs::path& a, const fs::path& b, std::size_t& compared, std::string& problem) {
  std::set<fs::path> fa, fb;
  for (const auto& e : fs::recursive_directory_iterator(a))
    if (e.is_regular_file() && e.path().filename() != "timings.json") fa.insert(fs::relative(e.path(), a));
  for (const auto& e : fs::recursive_directory_iterator(b))
    if (e.is_regular_file() && e.path().filename() != "timings.json") fb.insert(fs::relative(e.path(), b));
  if (fa != fb) {
    problem = "different file sets";
    return false;
  }
  for (const auto& p : fa) {
    if (report::read_file(a / p) != report::read_file(b / p)) {
      problem = p.string() + " differs";
      return false;
    }
    ++compared;
  }
  compared = fa.size();
  return true;
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) v.insert(std::stoi(item));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--known-failures" && i + 1 < argc) {
      known = parse_list(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--known-failures N,M,...]\n";
      return 1;
    }
  }

  std::map<int, Result> results;
  std::map<int, double> seconds;
  auto report_line = [&](int k, const std::string& summary) {
    const Result& r = results[k];
    std::cout << "criterion " << k << ": " << (r.pass ? "PASS" : "FAIL") << "  " << summary << " ("
              << static_cast<long long>(seconds[k] * 1000) / 1000.0 << " s)\n";
    for (const auto& n : r.notes) std::cout << "    " << n << '\n';
    std::cout << std::flush;
  };

  try {
    // 1. Orbit-class counts.
    std::map<std::pair<Surface, int>, Classification> done;
    {
      const auto t0 = Clock::now();
      Result& r = results[1];
      std::string counts;
      for (const auto& [s, d] : classify::supported_pairs()) {
        const auto& c = done.emplace(std::make_pair(s, d), classify::classify_orbits(s, d)).first->second;
        const std::size_t want = classify::published_class_count(s, d);
        counts += std::string(counts.empty() ? "" : " ") + aut::surface_name(s) + ":" + std::to_string(d) + "=" +
                  std::to_string(c.counts.classes);
        r.require(c.counts.classes == want, std::string(aut::surface_name(s)) + " d=" + std::to_string(d) + ": " +
                                                std::to_string(c.counts.classes) + " classes, published " +
                                                std::to_string(want));
        r.require(c.audit_ok, std::string(aut::surface_name(s)) + " d=" + std::to_string(d) + ": audit");
      }
      seconds[1] = since(t0);
      time_limit(r, seconds[1], 120);
      report_line(1, "orbit-class counts " + counts);
    }

    // 2. Stage tables.
    {
      const auto t0 = Clock::now();
      Result& r = results[2];
      for (const auto& [key, c] : done) {
        const auto got = classify::computed_stage_row(c), want = classify::published_stage_row(key.first, key.second);
        r.require(got == want, report::pair_tag(key.first, key.second) + " stage row differs");
      }
      seconds[2] = since(t0);
      report_line(2, "stage-count tables of all 13 pairs");
    }

    // 3. Published representatives, bijectively.
    {
      const auto t0 = Clock::now();
      Result& r = results[3];
      std::size_t total = 0;
      for (const auto& [key, c] : done) {
        const auto m = classify::match_published_representatives(c);
        total += m.published_count;
        r.require(m.ok, report::pair_tag(key.first, key.second) + ": " +
                            (m.problems.empty() ? std::string("no bijection") : m.problems.front()));
      }
      seconds[3] = since(t0);
      time_limit(r, seconds[3], 60);
      report_line(3, std::to_string(total) + " published representatives matched bijectively");
    }

    // 4. Group orders.
    {
      const auto t0 = Clock::now();
      Result& r = results[4];
      run_claims(r, {"groups.pgl3", "groups.pgl3_involutions", "groups.aut_q", "groups.d5", "groups.d6"});
      seconds[4] = since(t0);
      time_limit(r, seconds[4], 10);
      report_line(4, "|PGL3(F2)| = 168 = |<A,B>|, |Aut(Q)| = 120 of 20160, D5 group 5 with h^5 = id, D6 group 18");
    }

    // 5. Involutions.
    {
      const auto t0 = Clock::now();
      Result& r = results[5];
      run_claims(r, {"involutions.quintic_inv_1", "involutions.quintic_inv_2", "involutions.d6_inv_size2",
                     "involutions.d6_inv_size3_1", "involutions.d6_inv_size3_2", "frobenius.d6_inv_size2",
                     "frobenius.d6_inv_size3_1", "frobenius.d6_inv_size3_2"});
      seconds[5] = since(t0);
      time_limit(r, seconds[5], 10);
      report_line(5, "two quintic and three D6 maps are involutions; the D6 maps commute with the twisted Frobenius");
    }

    // 6. Families and one-link maps.
    {
      const auto t0 = Clock::now();
      Result& r = results[6];
      run_claims(r, {"conics.L2star", "conics.L4star", "conics.L2star_samples", "conics.L4star_samples",
                     "fibrations.oneLink_p100", "fibrations.oneLink_p010", "fibrations.oneLink_p001",
                     "fibrations.oneLink_p110", "fibrations.oneLink_p101", "fibrations.oneLink22_p100",
                     "fibrations.oneLink22_p101", "fibrations.onelink_relation"});
      seconds[6] = since(t0);
      time_limit(r, seconds[6], 30);
      report_line(6,
                  "conic identities, 2x20 family samples, pi4 one-link maps fix every fibre, pi2 one-link maps "
                  "map the pencil to itself (through [s:t] -> [s:s+t]), composition relation");
    }

    // 7. Model coherence.
    {
      const auto t0 = Clock::now();
      Result& r = results[7];
      run_claims(r, {"models.rho_q", "fiberprod.x4", "fiberprod.x2", "models.phi_d5", "models.d6_chain"});
      seconds[7] = since(t0);
      time_limit(r, seconds[7], 30);
      report_line(7, "rho_Q on the quadric, fiber-product inverses, phi_d5 (dimension 3, 100 points), D6 chain");
    }

    // 8. Counting lemmas and the generator inventory.
    {
      const auto t0 = Clock::now();
      Result& r = results[8];
      const auto g = classify::geiser_pair_report();
      r.require(g.classes == 2, "size-5 + size-2 classes: computed " + std::to_string(g.classes) +
                                    " (up to the stabilizer of the size-5 orbit, order " +
                                    std::to_string(g.stabilizer_order) + "), published 2; up to the automorphisms "
                                    "of the conic through the size-5 orbit: " + std::to_string(g.conic_classes));
      const auto u = classify::unique_size5_report();
      r.require(u.irreducible_quintics == 6 && u.classes == 1 && u.contains_standard, "unique size-5 orbit");
      const auto inv = report::generator_inventory(
          [&](Surface s, int d) -> const Classification& { return done.at({s, d}); });
      r.require(inv.published_total == 111, "published inventory total");
      r.require(inv.computed_total == 111,
                "computed inventory total " + std::to_string(inv.computed_total) + " (published 111)");
      seconds[8] = since(t0);
      time_limit(r, seconds[8], 10);
      report_line(8, "size-5 + size-2 classes = " + std::to_string(g.classes) + " (published 2), unique size-5 orbit " +
                         (u.classes == 1 ? "yes" : "no") + ", inventory " + std::to_string(inv.computed_total) +
                         " (published " + std::to_string(inv.published_total) + ")");
    }

    // 9. Property suites.
    {
      const auto t0 = Clock::now();
      Result& r = results[9];
      run_claims(r, {"properties.field_axioms", "properties.gp_oracle"});
      for (const auto& [key, c] : done)
        r.require(classify::dedup_sound(c), report::pair_tag(key.first, key.second) + " dedup");
      const fs::path base = fs::current_path() / "acceptance_artifacts";
      fs::remove_all(base);
      std::ostringstream sink;
      std::size_t files = 0;
      for (int w : {1, 4}) {
        cli::RunConfig cfg;
        cfg.out = base / ("workers" + std::to_string(w));
        cfg.workers = w;
        cli::cmd_classify(cfg, sink);
        cfg.only = "groups";
        cli::cmd_verify(cfg, sink);
        cli::cmd_emit_generators(cfg, sink);
      }
      std::string problem;
      r.require(same_tree(base / "workers1", base / "workers4", files, problem), "artifacts: " + problem);
      seconds[9] = since(t0);
      time_limit(r, seconds[9], 120);
      report_line(9, "field axioms, general-position oracle, dedup soundness, " + std::to_string(files) +
                         " artifacts byte-identical for 1 and 4 workers");
    }
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << '\n';
    return 1;
  }

  std::set<int> failing;
  for (const auto& [k, r] : results)
    if (!r.pass) failing.insert(k);
  std::cout << "summary: " << (results.size() - failing.size()) << " of " << results.size() << " criteria pass";
  if (!failing.empty()) {
    std::cout << "; failing:";
    for (int k : failing) std::cout << ' ' << k;
  }
  std::cout << '\n';
  if (failing == known) {
    if (!known.empty()) std::cout << "all failures are listed as known (see README)\n";
    return 0;
  }
  for (int k : failing)
    if (!known.count(k)) std::cout << "unexpected failure: criterion " << k << '\n';
  for (int k : known)
    if (!failing.count(k)) std::cout << "listed as known failure but passes: criterion " << k << '\n';
  return 1;
}
