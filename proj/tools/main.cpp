#include "scenario.hpp"

int main(int argc, char** argv) { return ired::cli::run_command(argc, argv); }
