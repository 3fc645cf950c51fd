// cremona2_cli: classification, verification and generator inventory.
//
//   cremona2_cli classify [--surface S] [--size N|all] [--all]
//   cremona2_cli verify [--only SUITE|CLAIM] [--replay FILE]
//   cremona2_cli emit-generators
//
// Common flags: --format {json,csv,text} --out DIR --workers N --moduli FILE.
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "cremona2/cli.hpp"

using namespace cremona2;

int main(int argc, char** argv) {
  CLI::App app{"Galois orbit classification and verification over GF(2)"};
  app.require_subcommand(1);
  cli::RunConfig cfg;
  std::string replay, moduli;

  const std::map<std::string, cli::Format> formats = {
      {"json", cli::Format::json}, {"csv", cli::Format::csv}, {"text", cli::Format::text}};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "output format")->transform(CLI::CheckedTransformer(formats));
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--moduli", moduli, "moduli.json to check against the registry");
  };

  bool all = false;
  auto* classify = app.add_subcommand("classify", "classify Galois orbits in general position");
  common(classify);
  classify->add_option("--surface", cfg.surface, "P2, Q, D5, D6 or all")
      ->check(CLI::IsMember({"P2", "Q", "D5", "D6", "all"}));
  classify->add_option("--size", cfg.size, "orbit size or all");
  classify->add_flag("--all", all, "every supported pair");

  auto* verify = app.add_subcommand("verify", "run the verification claims");
  common(verify);
  verify->add_option("--only", cfg.only, "a suite name or a claim id");
  verify->add_option("--replay", replay, "re-run the claim of a certificate");

  auto* emit = app.add_subcommand("emit-generators", "emit the generator inventory");
  common(emit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (!replay.empty()) cfg.replay = replay;
  if (!moduli.empty()) cfg.moduli = moduli;
  if (all) {
    cfg.surface = "all";
    cfg.size = "all";
  }

  if (classify->parsed()) return cli::guarded(cli::cmd_classify, cfg, std::cout);
  if (verify->parsed()) return cli::guarded(cli::cmd_verify, cfg, std::cout);
  return cli::guarded(cli::cmd_emit_generators, cfg, std::cout);
}
