#include "cli.hpp"

int main(int argc, char** argv) { return darm::cli::main(argc, argv); }
