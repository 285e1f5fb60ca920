#include "botscore/cli.hpp"

int main(int argc, char** argv) { return botscore::cli::run(argc, argv); }
