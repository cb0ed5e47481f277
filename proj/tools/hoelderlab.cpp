#include "cli.hpp"

int main(int argc, char** argv) { return hoelderlab::cli::run(argc, argv); }
