#include "srf/cli.hpp"

int main(int argc, char** argv) { return srf::cli_main(argc, argv); }
