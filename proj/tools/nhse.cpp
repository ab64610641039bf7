#include "nhse/cli.hpp"

int main(int argc, char** argv) { return nhse::cli::main(argc, argv); }
