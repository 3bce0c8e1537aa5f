#include "coherence/cli.hpp"

int main(int argc, char** argv) { return coherence::cli::run(argc, argv); }
