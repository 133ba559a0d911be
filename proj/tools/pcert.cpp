#include "pcert/cli.hpp"

int main(int argc, char** argv) { return pcert::run_cli(argc, argv); }
