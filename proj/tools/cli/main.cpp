#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "app.hpp"
#include "k3mirror/continuation.hpp"

namespace {

int run_main(int argc, char** argv) {
  using namespace k3mirror::cli;
  CLI::App app{"k3mirror: verification reports for K3 mirror-symmetry computations"};
  app.set_config("--config", "", "TOML or INI file with default flag values");

  RunConfig cfg;
  std::string command;
  const std::map<std::string, Format> formats = {
      {"json", Format::json}, {"tsv", Format::tsv}, {"text", Format::text}};

  app.add_option("command", command, "What to verify")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--digits", cfg.digits, "Working precision in decimal digits")->capture_default_str();
  app.add_option("--order", cfg.order, "Truncation order of exact series checks")->capture_default_str();
  app.add_option("--pmax", cfg.pmax, "Largest prime in zeta tables")->capture_default_str();
  app.add_option("--quartic-bound", cfg.quartic_bound, "Largest prime for exhaustive Fermat counts")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->option_text("json|tsv|text [json]");
  app.add_option("-o,--output", cfg.output, "Write the report here instead of stdout");
  app.add_option("--terms", cfg.terms, "Number of coefficients for series listings")->capture_default_str();
  app.add_option("--lambda", cfg.lambda, "Legendre parameter (rational) for zeta")->capture_default_str();
  app.add_option("--path", cfg.path, "Continuation path as JSON waypoints, or @file");
  app.add_option("--id", cfg.ids, "Identity id (repeatable); default is the whole registry");
  app.add_option("--grid", cfg.grid, "Number of mirror-map grid points")->capture_default_str();
  app.add_flag("--timings", cfg.timings, "Include wall-clock seconds per entry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return 2;
  }

  Report report;
  try {
    report = run(command, cfg);
  } catch (const UsageError& e) {
    std::cerr << "k3mirror: " << e.what() << "\nRun with --help for more information.\n";
    return 2;
  } catch (const k3mirror::pfode::ContinuationError& e) {
    std::cerr << "k3mirror: " << e.what() << "\n";
    return 2;
  }

  const std::string text = render(report, cfg.format);
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
      std::cerr << "k3mirror: cannot write " << cfg.output << "\n";
      return 2;
    }
    out << text;
  }
  return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "k3mirror: " << e.what() << "\n";
    return 1;
  }
}
