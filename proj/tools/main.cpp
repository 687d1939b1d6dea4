#include "cli.hpp"

int main(int argc, char** argv) { return swflow::cli::run_main(argc, argv); }
