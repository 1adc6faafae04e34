#include "bellscope/cli.hpp"

int main(int argc, char** argv) { return bellscope::cli::run(argc, argv); }
