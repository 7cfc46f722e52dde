#include <iostream>

#include "CLI11.hpp"
#include "commands.h"
#include "common.h"
#include "frlp/error.h"

int main(int argc, char** argv) {
  CLI::App app{"Factor-revealing LP toolkit for facility location"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; flags take precedence");
  int exit_code = frlp::cli::kOk;
  frlp::cli::AddFrlpCommand(app, exit_code);
  frlp::cli::AddFaclocCommand(app, exit_code);
  frlp::cli::AddBoundsCommand(app, exit_code);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? frlp::cli::kOk : frlp::cli::kUsage;
  } catch (const frlp::cli::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return frlp::cli::kUsage;
  } catch (const frlp::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return frlp::cli::kUsage;
  } catch (const frlp::NumericalError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return frlp::cli::kFailure;
  } catch (const frlp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return frlp::cli::kUsage;
  }
  return exit_code;
}
