#include "tfp_cli/commands.hpp"

int main(int argc, char** argv) { return tfp::cli::run(argc, argv); }
