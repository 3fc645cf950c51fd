// Serialized artifacts: classification results, the generator inventory,
// the modulus file and atomic file output.
//
// Every document carries "schema": 1 and is built from ordered JSON objects,
// so the bytes depend only on the computed data.  Points are written in
// generator-exponent notation ("[1:a^5:a^9]") next to the registry key of the
// field they live in.  Wall-clock times never enter these documents; they go
// to a separate timings file.
#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "cremona2/classify.hpp"
#include "json.hpp"

namespace cremona2::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;
inline constexpr const char* kToolName = "cremona2";
inline constexpr const char* kToolVersion = "1.0.0";

/// "x^8 + x^4 + x^3 + x^2 + 1" (highest degree first).
std::string modulus_string(const ff::Coeffs& c);
/// {"key": ..., "modulus": ...} for a registry key.
Json field_json(const std::string& key);
/// {"modulus": ...} for a field outside the registry.
Json field_json(const ff::Field& f);
Json points_json(const ff::Field& f, const std::vector<geom::ProjPoint>& pts);

/// "P2_d8" and friends, used for file names and claim ids.
std::string pair_tag(classify::Surface s, int d);

/// Published counts, computed counts, representatives with their orbits and
/// the bijection with the published representatives.
Json classification_json(const classify::Classification& c);
/// Class count, stage row and representative bijection match the published
/// values, the dedup is sound and the audit passed.
bool classification_pass(const classify::Classification& c);

std::string classification_csv_header();
std::string classification_csv_row(const classify::Classification& c);
/// One line per representative: surface,d,field,index,point,orbit.
std::string representatives_csv(const classify::Classification& c);
std::string classification_text(const classify::Classification& c);

/// One row of the generator table: a kind of link with its published and
/// computed number of classes.
struct InventoryRow {
  std::string table;  // "P2", "Q", "D6", "D5"
  std::string orbit;  // size of the base orbit ("0", "6", "5+2", ...)
  std::string description;
  std::size_t published = 0;
  std::size_t computed = 0;
  Json representatives;  // field and one orbit (or matrix) per element
};

struct Inventory {
  std::vector<InventoryRow> rows;
  std::size_t published_total = 0;
  std::size_t computed_total = 0;
};

/// Classification lookup used to build the inventory (cached by the caller).
using ClassificationSource = std::function<const classify::Classification&(classify::Surface, int)>;

/// The generator table of the main theorem with computed counts next to the
/// published ones.  The size-5 plus size-2 row is counted up to the
/// stabilizer of the size-5 orbit.
Inventory generator_inventory(const ClassificationSource& source);
Json inventory_json(const Inventory& inv);
std::string inventory_text(const Inventory& inv);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);
/// Writes through a temporary file in the same directory and renames it over
/// the target, creating parent directories.
void write_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// The modulus registry in the moduli.json layout.
Json moduli_json();
/// Differences between a moduli.json document and the built-in registry
/// (empty when they agree).
std::vector<std::string> check_moduli(const Json& doc);

}  // namespace cremona2::report
