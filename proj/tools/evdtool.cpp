#include "cli.hpp"

int main(int argc, char** argv) { return evd::run_cli(argc, argv); }
