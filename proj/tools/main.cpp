#include "nkpolicy/cli.hpp"

int main(int argc, char** argv) { return nkpolicy::cli::run(argc, argv); }
