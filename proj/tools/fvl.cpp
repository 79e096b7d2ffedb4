#include "fvl/cli.hpp"

int main(int argc, char** argv) { return fvl::cli::run(argc, argv); }
