#include "apol/cli.hpp"

int main(int argc, char** argv) { return apol::cli::run_main(argc, argv); }
