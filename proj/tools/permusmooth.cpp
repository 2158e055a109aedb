#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "cli_common.hpp"
#include "permusmooth/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"permusmooth: joint learning of a crisp row ordering and a sparse feature\n"
               "distribution by entropy-regularized non-smoothness minimization"};
  app.require_subcommand(1);

  int exit_code = permusmooth::cli::kExitOk;
  register_cmd_fit(app, exit_code);
  register_cmd_sweep(app, exit_code);
  register_cmd_synth(app, exit_code);
  register_cmd_sort(app, exit_code);
  register_cmd_bench(app, exit_code);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return permusmooth::cli::kExitUsage;
  } catch (const permusmooth::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return permusmooth::cli::kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return permusmooth::cli::kExitInput;
  }
  return exit_code;
}
