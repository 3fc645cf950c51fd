// Command drivers behind the cremona2_cli tool.
//
// Exit codes: 0 every claim holds, 2 some claim (count, table, identity)
// failed, 1 usage or internal error.  Artifacts:
//
//   <out>/results/<S>_d<d>.json          one classification per pair
//   <out>/results/summary.{json,csv,txt} merged report (by --format)
//   <out>/results/generators.json        generator inventory
//   <out>/results/verify.{json,csv,txt}  verification summary
//   <out>/certificates/<claim>.json      one certificate per claim
//   <out>/timings.json                   wall-clock per job (not compared)
//
// All files but timings.json are byte-identical across runs and worker
// counts.  Each file is written atomically.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cremona2/classify.hpp"

namespace cremona2::cli {

enum class Format { json, csv, text };

struct RunConfig {
  std::string surface = "all";  // P2, Q, D5, D6 or all
  std::string size = "all";     // a number or all
  Format format = Format::json;
  std::filesystem::path out = ".";
  int workers = 1;
  std::string only;             // verify: a suite name or a claim id
  std::optional<std::filesystem::path> replay;
  std::optional<std::filesystem::path> moduli;  // default: ./moduli.json, then the source tree
};

/// The (surface, size) pairs selected by the filters; throws UnsupportedPair
/// when a filter selects nothing and UnknownName for a bad surface.
std::vector<std::pair<classify::Surface, int>> selected_pairs(const RunConfig& cfg);

/// Locates and checks moduli.json against the built-in registry; throws
/// IoError or BadCertificate (mismatching file).
std::filesystem::path check_moduli_file(const RunConfig& cfg);

int cmd_classify(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);
int cmd_emit_generators(const RunConfig& cfg, std::ostream& log);

/// Runs a command and maps library exceptions to exit code 1.
int guarded(int (*cmd)(const RunConfig&, std::ostream&), const RunConfig& cfg, std::ostream& log);

}  // namespace cremona2::cli
