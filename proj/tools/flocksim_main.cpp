#include "flock/cli.hpp"

int main(int argc, char** argv) { return flock::cli_main(argc, argv); }
