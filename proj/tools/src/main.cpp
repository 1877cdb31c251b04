#include "cli.hpp"

int main(int argc, char** argv) { return tptmap::cli::run(argc, argv); }
