#include "capdom/cli.hpp"

int main(int argc, char** argv) { return capdom::run_cli(argc, argv); }
