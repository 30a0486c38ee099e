#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cohfilt/error.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace cohfilt::cli;

  CLI::App app{"Coherence filtration under stochastic strictly incoherent operations"};
  app.require_subcommand(1);

  RunConfig config;
  std::string input, output;
  std::size_t dim = 0, samples = 0;
  std::vector<std::string> tols;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", input, "Matrix (or instrument) JSON file");
    sub->add_option("--dim", dim, "Dimension for random states")->check(CLI::PositiveNumber);
    sub->add_option("--seed", config.seed, "Random seed")->capture_default_str();
    sub->add_option("--samples", samples, "Oracle samples (oracle) or number of random states (suite)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", tols, "Tolerance override name=value (repeatable)");
    sub->add_option("--output", output, "Write the JSON report here instead of stdout");
  };
  for (const char* name : {"filtrate", "measure", "paper-examples", "suite", "oracle", "validate"}) {
    add_common(app.add_subcommand(name));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseFailure;
  }

  config.command = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--input")) config.input_path = input;
  if (sub->count("--dim")) config.dim = dim;
  if (sub->count("--samples")) config.samples = samples;
  if (sub->count("--output")) config.output_path = output;

  CommandResult result;
  try {
    for (const auto& t : tols) config.tol.insert(parse_tol_flag(t));
    result = run_command(config);
  } catch (const cohfilt::Error& e) {
    std::cerr << "[ERROR] " << e.what() << "\n";
    return kParseFailure;
  }

  for (const auto& line : result.summary) std::cerr << line << "\n";
  const std::string text = result.report.dump(2) + "\n";
  if (config.output_path) {
    std::ofstream out(*config.output_path);
    if (!out) {
      std::cerr << "[ERROR] cannot write " << *config.output_path << "\n";
      return kParseFailure;
    }
    out << text;
  } else {
    std::cout << text;
  }
  return result.exit_code;
}
