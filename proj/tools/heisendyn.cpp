#include "heisendyn/cli.hpp"

int main(int argc, char** argv) { return heisendyn::cli::run(argc, argv); }
