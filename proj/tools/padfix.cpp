#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "padfix/cli.hpp"

int main(int argc, char** argv) {
  std::optional<std::string> env_jobs;
  if (const char* v = std::getenv("PADFIX_JOBS")) env_jobs = v;
  return padfix::cli::run(argc, argv, std::cout, std::cerr, env_jobs);
}
