#include "wolst/cli.hpp"

int main(int argc, char** argv) { return wolst::cli::main(argc, argv); }
