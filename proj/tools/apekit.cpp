#include "apekit/cli.hpp"

int main(int argc, char** argv) { return apekit::run_cli(argc, argv); }
