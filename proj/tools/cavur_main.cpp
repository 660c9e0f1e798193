#include "cavur/cli.hpp"

int main(int argc, char** argv) { return cavur::cli::run_cli(argc, argv); }
