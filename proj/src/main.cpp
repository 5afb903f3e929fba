#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "ht/cli.hpp"

namespace {

void add_common(CLI::App* cmd, ht::RunConfig& cfg) {
  cmd->add_option("--model", cfg.model, "module spec, e.g. irr(8) or sum(irr(3,+),irr(3,-))");
  cmd->add_option("--seed", cfg.seed, "base RNG seed");
  cmd->add_option("--samples", cfg.samples, "sample count")->check(CLI::PositiveNumber);
  cmd->add_flag("--exact", cfg.exact, "report exact rational data where available");
  cmd->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--tol-rank", cfg.tol_rank, "blueprint rank tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-cluster", cfg.tol_cluster, "eigenvalue cluster tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--fd-step", cfg.fd_step, "finite-difference step")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", cfg.out, "write output to file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"H-type group spectra and minimal polynomials"};
  app.require_subcommand(1);

  ht::RunConfig cfg;
  std::string suite = "all";

  CLI::App* spectrum = app.add_subcommand("spectrum", "spectrum of -K_check^2");
  add_common(spectrum, cfg);
  CLI::App* minpoly = app.add_subcommand("minpoly", "minimal polynomial via the blueprint");
  add_common(minpoly, cfg);
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, cfg);
  verify->add_option("--suite", suite,
                     "clifford|curvature|c0|spectrum|branches|killing|blocks|"
                     "positivity|expansion|all");
  CLI::App* table = app.add_subcommand("table", "minimal-polynomial degree table");
  add_common(table, cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    ht::CommandResult res;
    if (spectrum->parsed()) res = ht::cmd_spectrum(cfg);
    else if (minpoly->parsed()) res = ht::cmd_minpoly(cfg);
    else if (verify->parsed()) res = ht::cmd_verify(cfg, suite);
    else res = ht::cmd_table(cfg);
    return ht::emit(res, cfg);
  } catch (const ht::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ht::kParseError;
  } catch (const ht::ClusterAmbiguity& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ht::kAmbiguity;
  } catch (const ht::InconsistentSamples& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ht::kAmbiguity;
  } catch (const ht::DegenerateDirection& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ht::kDegenerate;
  } catch (const ht::NoTermination& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ht::kNoTermination;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ht::kParseError;
  }
}
