#include "cremona2/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cremona2/errors.hpp"

namespace cremona2::report {

using classify::Classification;
using classify::Surface;

std::string modulus_string(const ff::Coeffs& c) {
  std::string s;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (!c[i]) continue;
    if (!s.empty()) s += " + ";
    if (i == 0)
      s += "1";
    else if (i == 1)
      s += "x";
    else
      s += "x^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

Json field_json(const std::string& key) {
  return Json{{"key", key}, {"modulus", modulus_string(ff::registry_modulus(key))}};
}

Json field_json(const ff::Field& f) { return Json{{"modulus", modulus_string(f.modulus())}}; }

Json points_json(const ff::Field& f, const std::vector<geom::ProjPoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(p.to_string(f));
  return a;
}

std::string pair_tag(Surface s, int d) { return std::string(aut::surface_name(s)) + "_d" + std::to_string(d); }

namespace {

Json row_json(const std::vector<std::optional<std::size_t>>& row) {
  Json a = Json::array();
  for (const auto& v : row) a.push_back(v ? Json(*v) : Json(nullptr));
  return a;
}

/// Everything the verdict depends on, computed once.
struct Checks {
  bool count_ok = false, row_ok = false, dedup_ok = false;
  classify::MatchReport match;
  bool pass() const { return count_ok && row_ok && match.ok && dedup_ok; }
};

Checks run_checks(const Classification& c) {
  Checks k;
  k.count_ok = c.counts.classes == classify::published_class_count(c.surface, c.d);
  k.row_ok = classify::computed_stage_row(c) == classify::published_stage_row(c.surface, c.d);
  k.match = classify::match_published_representatives(c);
  k.dedup_ok = classify::dedup_sound(c);
  return k;
}

}  // namespace

Json classification_json(const Classification& c) {
  const auto& ctx = classify::context(c.surface, c.d);
  const ff::Field& f = *ctx.field;
  const Checks k = run_checks(c);

  Json j;
  j["schema"] = kSchema;
  j["surface"] = aut::surface_name(c.surface);
  j["d"] = c.d;
  j["field"] = field_json(c.field_key);
  j["model"] = frob::model_name(ctx.model);
  j["automorphisms"] = ctx.actions.size();
  j["stages"] = Json{{"representatives", c.counts.representatives}, {"candidates", c.counts.candidates},
                     {"size_ok", c.counts.size_ok},                 {"position_ok", c.counts.position_ok},
                     {"position_points", c.counts.position_points}, {"classes", c.counts.classes},
                     {"indeterminate", c.counts.indeterminate}};
  j["stage_row"] = Json{{"published", row_json(classify::published_stage_row(c.surface, c.d))},
                        {"computed", row_json(classify::computed_stage_row(c))},
                        {"match", k.row_ok}};
  j["class_count"] = Json{{"published", classify::published_class_count(c.surface, c.d)},
                          {"computed", c.counts.classes},
                          {"match", k.count_ok}};
  Json reps = Json::array();
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    const auto& oc = c.classes[i];
    reps.push_back(Json{{"index", i},
                        {"point", oc.representative.to_string(f)},
                        {"form", oc.form},
                        {"candidate_index", oc.candidate_index},
                        {"orbit", points_json(f, oc.orbit.points)}});
  }
  j["representatives"] = reps;
  Json pairs = Json::array();
  const auto published = classify::published_representatives(c.surface, c.d);
  for (std::size_t i = 0; i < published.size(); ++i)
    pairs.push_back(Json{{"label", published[i].label},
                         {"k", published[i].k},
                         {"point", published[i].point.to_string(f)},
                         {"classes", i < k.match.matches.size() ? Json(k.match.matches[i]) : Json::array()}});
  j["published_match"] = Json{{"ok", k.match.ok},
                          {"published_count", k.match.published_count},
                          {"computed_count", k.match.computed_count},
                          {"pairs", pairs},
                          {"problems", k.match.problems}};
  j["dedup_sound"] = k.dedup_ok;
  j["audit_ok"] = c.audit_ok;
  j["notes"] = c.notes;
  j["verdict"] = k.pass() && c.audit_ok ? "pass" : "fail";
  return j;
}

bool classification_pass(const Classification& c) { return run_checks(c).pass() && c.audit_ok; }

std::string classification_csv_header() {
  return "surface,d,field,candidates,size_ok,position_ok,position_points,classes,published_classes,stage_row_match,"
         "published_match,verdict\n";
}

std::string classification_csv_row(const Classification& c) {
  const Checks k = run_checks(c);
  std::ostringstream os;
  os << aut::surface_name(c.surface) << ',' << c.d << ',' << c.field_key << ',' << c.counts.candidates << ','
     << c.counts.size_ok << ',' << c.counts.position_ok << ',' << c.counts.position_points << ',' << c.counts.classes
     << ',' << classify::published_class_count(c.surface, c.d) << ',' << (k.row_ok ? "yes" : "no") << ','
     << (k.match.ok ? "yes" : "no") << ',' << (k.pass() && c.audit_ok ? "pass" : "fail") << '\n';
  return os.str();
}

std::string representatives_csv(const Classification& c) {
  const ff::Field& f = *classify::context(c.surface, c.d).field;
  std::ostringstream os;
  os << "surface,d,field,index,point,orbit\n";
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    std::string orbit;
    for (const auto& p : c.classes[i].orbit.points) orbit += (orbit.empty() ? "" : " ") + p.to_string(f);
    os << aut::surface_name(c.surface) << ',' << c.d << ',' << c.field_key << ',' << i << ",\""
       << c.classes[i].representative.to_string(f) << "\",\"" << orbit << "\"\n";
  }
  return os.str();
}

std::string classification_text(const Classification& c) {
  const auto row_text = [](const std::vector<std::optional<std::size_t>>& r) {
    std::string s;
    for (const auto& v : r) s += (s.empty() ? "" : "/") + (v ? std::to_string(*v) : std::string("-"));
    return s;
  };
  const Checks k = run_checks(c);
  std::ostringstream os;
  os << aut::surface_name(c.surface) << " d=" << c.d << " over " << c.field_key << ": N=" << c.counts.classes
     << " (published " << classify::published_class_count(c.surface, c.d) << "), stages "
     << row_text(classify::computed_stage_row(c)) << " (published "
     << row_text(classify::published_stage_row(c.surface, c.d)) << "), representatives "
     << (k.match.ok ? "matched" : "NOT matched") << ", " << (k.pass() && c.audit_ok ? "pass" : "FAIL") << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Generator inventory.

Inventory generator_inventory(const ClassificationSource& source) {
  Inventory inv;
  auto orbit_rows = [&](const std::string& table, Surface s, int d, std::size_t published, const std::string& what) {
    const Classification& c = source(s, d);
    const ff::Field& f = *classify::context(s, d).field;
    Json orbits = Json::array();
    for (const auto& oc : c.classes) orbits.push_back(points_json(f, oc.orbit.points));
    inv.rows.push_back({table, std::to_string(d), what, published, c.counts.classes,
                        Json{{"field", field_json(c.field_key)}, {"orbits", orbits}}});
  };

  const auto A = aut::generator_A(), B = aut::generator_B();
  inv.rows.push_back({"P2", "0", "automorphisms [x:y:z] -> [z:x:y] and [x:y:z] -> [x+y:y:z]", 2,
                      aut::closure({A, B}).size() == 168 ? 2u : 0u,
                      Json{{"matrices", Json::array({B.to_string(), A.to_string()})}}});
  orbit_rows("P2", Surface::P2, 6, 2, "link at an orbit of size 6 (contracting the six conics)");
  orbit_rows("P2", Surface::P2, 7, 10, "Geiser involution");
  orbit_rows("P2", Surface::P2, 8, 38, "Bertini involution");
  {
    const auto g = classify::geiser_pair_report();
    Json orbits = Json::array();
    for (const auto& two : g.representatives) orbits.push_back(points_json(*g.field, two));
    inv.rows.push_back({"P2", "5+2",
                        "Geiser involution at an orbit of size 5 and an orbit of size 2 "
                        "(computed: pairs up to the stabilizer of the size-5 orbit)",
                        2, g.classes,
                        Json{{"field", field_json(*g.field)},
                             {"size5_orbit", points_json(*g.field, g.size5)},
                             {"size2_orbits", orbits},
                             {"classes_up_to_conic_automorphisms", g.conic_classes}}});
  }
  orbit_rows("Q", Surface::Q, 4, 0, "none");
  orbit_rows("Q", Surface::Q, 6, 5, "Geiser involution");
  orbit_rows("Q", Surface::Q, 7, 18, "Bertini involution");
  orbit_rows("D6", Surface::D6, 2, 1, "link at an orbit of size 2");
  orbit_rows("D6", Surface::D6, 3, 2, "link at an orbit of size 3");
  orbit_rows("D6", Surface::D6, 4, 4, "Geiser involution");
  orbit_rows("D6", Surface::D6, 5, 11, "Bertini involution");
  orbit_rows("D5", Surface::D5, 3, 4, "Geiser involution");
  orbit_rows("D5", Surface::D5, 4, 12, "Bertini involution");
  for (const auto& r : inv.rows) {
    inv.published_total += r.published;
    inv.computed_total += r.computed;
  }
  return inv;
}

Json inventory_json(const Inventory& inv) {
  Json j;
  j["schema"] = kSchema;
  Json rows = Json::array();
  Json tables = Json::object();
  for (const auto& r : inv.rows) {
    rows.push_back(Json{{"table", r.table},
                        {"orbit_size", r.orbit},
                        {"description", r.description},
                        {"published", r.published},
                        {"computed", r.computed},
                        {"match", r.published == r.computed},
                        {"representatives", r.representatives}});
    if (!tables.contains(r.table)) tables[r.table] = Json{{"published", 0}, {"computed", 0}};
    tables[r.table]["published"] = tables[r.table]["published"].get<std::size_t>() + r.published;
    tables[r.table]["computed"] = tables[r.table]["computed"].get<std::size_t>() + r.computed;
  }
  j["rows"] = rows;
  j["tables"] = tables;
  j["published_total"] = inv.published_total;
  j["computed_total"] = inv.computed_total;
  j["verdict"] = inv.computed_total == 111 && inv.published_total == 111 ? "pass" : "fail";
  return j;
}

std::string inventory_text(const Inventory& inv) {
  std::ostringstream os;
  for (const auto& r : inv.rows)
    os << r.table << "  size " << r.orbit << ": published " << r.published << ", computed " << r.computed
       << (r.published == r.computed ? "" : "  <-- differs") << "  (" << r.description << ")\n";
  os << "total: published " << inv.published_total << ", computed " << inv.computed_total << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Files.

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json moduli_json() {
  Json m = Json::object();
  for (const auto& key : ff::registry_keys()) m[key] = modulus_string(ff::registry_modulus(key));
  return Json{{"schema", kSchema}, {"moduli", m}};
}

std::vector<std::string> check_moduli(const Json& doc) {
  std::vector<std::string> problems;
  if (!doc.is_object() || !doc.contains("moduli") || !doc["moduli"].is_object()) return {"no \"moduli\" object"};
  if (doc.value("schema", 0) != kSchema) problems.push_back("unsupported schema");
  const Json& m = doc["moduli"];
  for (const auto& key : ff::registry_keys()) {
    if (!m.contains(key)) {
      problems.push_back("missing " + key);
      continue;
    }
    const std::string want = modulus_string(ff::registry_modulus(key));
    if (!m[key].is_string() || m[key].get<std::string>() != want)
      problems.push_back(key + ": file has " + m[key].dump() + ", registry has \"" + want + "\"");
  }
  for (const auto& [key, v] : m.items())
    if (std::find(ff::registry_keys().begin(), ff::registry_keys().end(), key) == ff::registry_keys().end())
      problems.push_back("unknown key " + key);
  return problems;
}

}  // namespace cremona2::report
