// Registry of machine-checkable claims and their certificates.
//
// A claim is a named, deterministic computation that produces an observed
// value and compares it with the expected (published or structural) value.
// Its certificate records the inputs (field moduli and constants), both
// values, the verdict and supporting witness data.  Replaying a certificate
// re-runs the claim by id and checks that verdict and observed value are
// reproduced.  Certificates never contain wall-clock times, so reruns are
// byte-identical.
//
// Suites:
//   groups          automorphism group orders and generation
//   involutions     f o f = id for the declared involutions
//   frobenius       commutation with the model Frobenius
//   fibrations      one-link maps and their pencils
//   fiberprod       fiber-product charts invert each other
//   models          model maps (quadric, degree-5 and degree-6 models)
//   conics          the conic identities and sampled family maps
//   tangents        the common tangent line of the pencils
//   counting        the two orbit-counting statements
//   properties      field axioms and the general-position oracle
//   inventory       the generator table
//   classification  one claim per (surface, size) pair
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cremona2/report.hpp"

namespace cremona2::claims {

using report::Json;

struct RunOptions {
  int workers = 1;
};

struct Outcome {
  Json expected;
  Json observed;
  Json witness = Json::object();
  std::vector<std::string> fields;   // registry keys of the fields used
  Json constants = Json::object();   // further inputs (seeds, sample sets)
  bool pass() const { return expected == observed; }
};

struct Claim {
  std::string id;
  std::string suite;
  std::string statement;
  std::function<Outcome(const RunOptions&)> run;
};

/// All claims in canonical order.
const std::vector<Claim>& all_claims();
/// Suite names in canonical order.
const std::vector<std::string>& suite_names();
/// Throws UnknownName.
const Claim& find_claim(const std::string& id);
/// Claims of one suite; throws UnknownName for an unknown suite.
std::vector<const Claim*> suite_claims(const std::string& suite);
/// Suites run by a plain `verify` (all but classification).
std::vector<const Claim*> default_claims();

/// The certificate of an outcome.
Json certificate(const Claim& c, const Outcome& o);
/// Runs the claim and builds its certificate.
Json certify(const Claim& c, const RunOptions& opt = {});
bool certificate_pass(const Json& cert);

struct ReplayResult {
  bool reproduced = false;     // same verdict and same observed value
  bool recorded_pass = false;
  bool pass = false;
  std::vector<std::string> differences;
};
/// Checks the recorded moduli against the registry, re-runs the claim and
/// compares.  Throws BadCertificate for a malformed document.
ReplayResult replay(const Json& cert, const RunOptions& opt = {});

/// The classification claim of a pair, built from an existing result.
Outcome classification_outcome(const classify::Classification& c);
std::string classification_claim_id(classify::Surface s, int d);

}  // namespace cremona2::claims
