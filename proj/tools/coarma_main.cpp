#include "coarma/cli.hpp"

int main(int argc, char** argv) { return coarma::run_cli(argc, argv); }
