#include <string>
#include <vector>

#include "aircast/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return aircast::run_cli(args);
}
