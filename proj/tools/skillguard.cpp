#include "skillguard/cli.hpp"

int main(int argc, char** argv) { return skillguard::cli::run(argc, argv); }
