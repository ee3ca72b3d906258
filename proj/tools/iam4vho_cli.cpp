#include <string>
#include <vector>

#include "iam4vho/cli.hpp"

int main(int argc, char** argv) {
  return iam4vho::run_command(std::vector<std::string>(argv + 1, argv + argc));
}
