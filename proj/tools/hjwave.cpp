#include "hjwave/cli/run.hpp"

int main(int argc, char** argv) { return hjwave::cli::run(argc, argv); }
