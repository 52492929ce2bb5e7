#include "cli.hpp"

int main(int argc, char** argv) {
  return homent::cli::run({argv + 1, argv + argc});
}
