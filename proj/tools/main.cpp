#include "mcsp/cli.hpp"

int main(int argc, char** argv) { return mcsp::cli::run(argc, argv); }
