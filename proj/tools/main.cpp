#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace sjlt::cli;
  RunConfig cfg;
  try {
    cfg = parse_args(argc, argv);
  } catch (const CliError& e) {
    if (e.code() == "help") {
      std::cout << e.what();
      return 0;
    }
    std::cerr << "error," << e.code() << ',' << e.what() << '\n';
    return e.exit_status();
  }
  return run(cfg, std::cout, std::cerr);
}
