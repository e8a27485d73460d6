#include <string>
#include <vector>

#include "arco/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return arco::cli::run(std::move(args));
}
