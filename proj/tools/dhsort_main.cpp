#include "dhsort/cli.hpp"

int main(int argc, char** argv) { return dhsort::run_cli(argc, argv); }
