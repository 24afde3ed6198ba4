#include "treecot/cli.hpp"

int main(int argc, char** argv) { return treecot::cli::run(argc, argv); }
