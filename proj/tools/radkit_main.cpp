#include "radkit/bench.hpp"

int main(int argc, char** argv) { return radkit::cli_main(argc, argv); }
